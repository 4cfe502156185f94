"""Finite algebras as operation tables, with products and homomorphisms.

Carrier elements are indices 0..n-1; labels are presentation-only (rational
labels for many-valued chains, subset labels for powerset algebras), so all
computation is exact integer table lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BudgetExceededError, EvaluationError
from .syntax import Formula, Signature, Var

# Variable assignment into an algebra: variable name -> carrier index.
Valuation = Mapping[str, int]

DEFAULT_ENUMERATION_BUDGET = 10**8


@dataclass(frozen=True)
class FiniteAlgebra:
    """A total algebra over a signature, given by flat row-major tables.

    ``ops`` pairs each connective with a tuple of length ``len(carrier)**arity``;
    the entry for arguments (a1,...,am) sits at row-major position
    a1*n^(m-1) + ... + am. ``order`` optionally carries a partial order on
    carrier indices (needed for degree-mode semantics).
    """

    signature: Signature
    carrier: tuple[str, ...]
    ops: tuple[tuple[str, tuple[int, ...]], ...]
    order: Optional[frozenset[tuple[int, int]]] = None
    name: str = ""

    def __post_init__(self):
        n = len(self.carrier)
        if n == 0:
            raise ValueError("carrier must be nonempty")
        tables = dict(self.ops)
        if len(tables) != len(self.ops):
            raise ValueError("duplicate operation name")
        for symbol, arity in self.signature.connectives:
            if symbol not in tables:
                raise ValueError(f"missing table for connective {symbol!r}")
            table = tables[symbol]
            if len(table) != n**arity:
                raise ValueError(
                    f"table for {symbol!r} has {len(table)} entries, "
                    f"expected {n**arity}"
                )
            if any(not (0 <= e < n) for e in table):
                raise ValueError(f"table for {symbol!r} has out-of-range entries")
        extra = set(tables) - set(self.signature.arities)
        if extra:
            raise ValueError(f"tables for unknown connectives: {sorted(extra)}")
        if self.order is not None:
            self._check_partial_order(self.order, n)

    @staticmethod
    def _check_partial_order(order: frozenset[tuple[int, int]], n: int) -> None:
        for a in range(n):
            if (a, a) not in order:
                raise ValueError("order not reflexive")
        for a, b in order:
            if (b, a) in order and a != b:
                raise ValueError("order not antisymmetric")
            for c in range(n):
                if (b, c) in order and (a, c) not in order:
                    raise ValueError("order not transitive")

    @cached_property
    def size(self) -> int:
        return len(self.carrier)

    @cached_property
    def tables(self) -> dict[str, tuple[int, ...]]:
        return dict(self.ops)

    def op(self, symbol: str, args: Sequence[int]) -> int:
        table = self.tables[symbol]
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return table[idx]

    def constant(self, symbol: str) -> int:
        if self.signature.arity(symbol) != 0:
            raise ValueError(f"{symbol!r} is not a constant")
        return self.tables[symbol][0]

    def leq(self, a: int, b: int) -> bool:
        if self.order is None:
            raise ValueError(f"algebra {self.name or self.carrier} has no order")
        return (a, b) in self.order

    def label(self, index: int) -> str:
        return self.carrier[index]


def evaluate(formula: Formula, valuation: Valuation, algebra: FiniteAlgebra) -> int:
    """Value of a formula under a valuation, by structural recursion."""
    cache: dict[Formula, int] = {}

    def go(node: Formula) -> int:
        hit = cache.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            try:
                value = valuation[node.name]
            except KeyError:
                raise EvaluationError(f"unbound variable {node.name!r}") from None
        else:
            value = algebra.op(node.symbol, [go(a) for a in node.args])
        cache[node] = value
        return value

    return go(formula)


def all_valuations(variables: Sequence[str], algebra: FiniteAlgebra):
    """All assignments of carrier indices to the given variables, in
    lexicographic order of the value tuples (variables as given)."""
    for values in product(range(algebra.size), repeat=len(variables)):
        yield dict(zip(variables, values))


def truth_vector(
    formula: Formula, variables: Sequence[str], algebra: FiniteAlgebra
) -> tuple[int, ...]:
    """Formula value at every valuation of ``variables``, in valuation order."""
    return tuple(
        evaluate(formula, v, algebra) for v in all_valuations(variables, algebra)
    )


def product_algebra(algebra: FiniteAlgebra, n: int) -> FiniteAlgebra:
    """Direct power with coordinatewise operations.

    Element i of the product is the tuple of base indices given by the
    row-major rank i (first coordinate most significant); constants are
    constant tuples.
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    size = algebra.size
    if size**n > 10_000:
        raise ValueError(f"product carrier would have {size**n} elements")
    elements = list(product(range(size), repeat=n))
    index_of = {t: i for i, t in enumerate(elements)}
    carrier = tuple("(" + ",".join(algebra.carrier[c] for c in t) + ")" for t in elements)
    ops = []
    for symbol, arity in algebra.signature.connectives:
        entries = []
        for args in product(range(len(elements)), repeat=arity):
            coords = tuple(
                algebra.op(symbol, [elements[a][i] for a in args]) for i in range(n)
            )
            entries.append(index_of[coords])
        ops.append((symbol, tuple(entries)))
    order = None
    if algebra.order is not None:
        order = frozenset(
            (i, j)
            for i, ti in enumerate(elements)
            for j, tj in enumerate(elements)
            if all((a, b) in algebra.order for a, b in zip(ti, tj))
        )
    return FiniteAlgebra(
        signature=algebra.signature,
        carrier=carrier,
        ops=tuple(ops),
        order=order,
        name=f"{algebra.name or 'algebra'}^{n}",
    )


def product_element_index(base_size: int, coords: Sequence[int]) -> int:
    """Rank of a coordinate tuple in the product carrier built above."""
    idx = 0
    for c in coords:
        idx = idx * base_size + c
    return idx


def product_element_coords(base_size: int, n: int, index: int) -> tuple[int, ...]:
    coords = []
    for _ in range(n):
        index, c = divmod(index, base_size)
        coords.append(c)
    return tuple(reversed(coords))


def is_homomorphism(
    mapping: Sequence[int], source: FiniteAlgebra, target: FiniteAlgebra
) -> tuple[bool, Optional[tuple[str, tuple[int, ...]]]]:
    """Check the homomorphism equation for every connective and argument tuple.

    Returns (True, None) or (False, (symbol, argument_tuple)) with the first
    violation in signature order / row-major argument order.
    """
    if source.signature != target.signature:
        raise ValueError("source and target must share a signature")
    if len(mapping) != source.size:
        raise ValueError("mapping must be total on the source carrier")
    if any(not (0 <= v < target.size) for v in mapping):
        raise ValueError("mapping has out-of-range values")
    for symbol, arity in source.signature.connectives:
        for args in product(range(source.size), repeat=arity):
            lhs = mapping[source.op(symbol, args)]
            rhs = target.op(symbol, [mapping[a] for a in args])
            if lhs != rhs:
                return False, (symbol, args)
    return True, None


@dataclass(frozen=True)
class AlgebraHomomorphism:
    """A checked structure-preserving map between algebras of one signature."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self):
        ok, witness = is_homomorphism(self.mapping, self.source, self.target)
        if not ok:
            symbol, args = witness
            raise ValueError(f"not a homomorphism: fails at {symbol} on {args}")

    def __call__(self, element: int) -> int:
        return self.mapping[element]


def enumerate_homomorphisms(
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> list[AlgebraHomomorphism]:
    """All homomorphisms source -> target, in lexicographic table order.

    Depth-first assignment over source elements with pruning: a partial map is
    abandoned as soon as some fully-assigned operation instance violates the
    homomorphism equation.
    """
    if source.signature != target.signature:
        raise ValueError("source and target must share a signature")
    candidates = target.size**source.size
    if candidates > budget:
        raise BudgetExceededError(
            f"{candidates} candidate maps exceed budget {budget}; "
            "reduce the electorate or the algebra"
        )

    # constraints[t] = op instances whose last-assigned element is t
    constraints: list[list[tuple[str, tuple[int, ...], int]]] = [
        [] for _ in range(source.size)
    ]
    for symbol, arity in source.signature.connectives:
        for args in product(range(source.size), repeat=arity):
            result = source.op(symbol, args)
            last = max((*args, result))
            constraints[last].append((symbol, args, result))

    found: list[AlgebraHomomorphism] = []
    mapping: list[int] = []

    def extend(k: int) -> None:
        if k == source.size:
            found.append(
                AlgebraHomomorphism(source, target, tuple(mapping))
            )
            return
        for value in range(target.size):
            mapping.append(value)
            ok = True
            for symbol, args, result in constraints[k]:
                if mapping[result] != target.op(symbol, [mapping[a] for a in args]):
                    ok = False
                    break
            if ok:
                extend(k + 1)
            mapping.pop()

    extend(0)
    return found


# ---------------------------------------------------------------------------
# Built-in algebras
# ---------------------------------------------------------------------------

BOOLEAN_SIGNATURE = Signature(
    (("not", 1), ("or", 2), ("and", 2), ("bot", 0), ("top", 0))
)

MV_SIGNATURE = Signature(
    (("not", 1), ("oplus", 2), ("odot", 2), ("impl", 2), ("0", 0), ("1", 0))
)


def builtin_boolean2() -> FiniteAlgebra:
    """The two-element Boolean algebra over not/or/and with bot/top."""
    return FiniteAlgebra(
        signature=BOOLEAN_SIGNATURE,
        carrier=("0", "1"),
        ops=(
            ("not", (1, 0)),
            ("or", (0, 1, 1, 1)),
            ("and", (0, 0, 0, 1)),
            ("bot", (0,)),
            ("top", (1,)),
        ),
        order=frozenset({(0, 0), (0, 1), (1, 1)}),
        name="boolean2",
    )


def builtin_mv_chain(k: int) -> FiniteAlgebra:
    """The k-element Łukasiewicz chain on {0, 1/(k-1), ..., 1}.

    not x = 1-x, x oplus y = min(1, x+y), x odot y = max(0, x+y-1),
    x impl y = min(1, 1-x+y); all table entries computed in exact rationals.
    """
    if k < 2:
        raise ValueError("chain needs at least 2 elements")
    values = [Fraction(i, k - 1) for i in range(k)]
    index = {v: i for i, v in enumerate(values)}
    one = Fraction(1)
    zero = Fraction(0)

    def tab1(fn):
        return tuple(index[fn(a)] for a in values)

    def tab2(fn):
        return tuple(index[fn(a, b)] for a in values for b in values)

    return FiniteAlgebra(
        signature=MV_SIGNATURE,
        carrier=tuple(str(v) for v in values),
        ops=(
            ("not", tab1(lambda a: one - a)),
            ("oplus", tab2(lambda a, b: min(one, a + b))),
            ("odot", tab2(lambda a, b: max(zero, a + b - 1))),
            ("impl", tab2(lambda a, b: min(one, one - a + b))),
            ("0", (0,)),
            ("1", (k - 1,)),
        ),
        order=frozenset((i, j) for i in range(k) for j in range(k) if i <= j),
        name=f"lukasiewicz{k}",
    )


LATTICE_SIGNATURE = Signature((("and", 2), ("or", 2), ("bot", 0), ("top", 0)))


def builtin_distributive_lattice(
    labels: Sequence[str], leq_pairs: Iterable[tuple[int, int]]
) -> FiniteAlgebra:
    """A bounded distributive lattice from a poset presentation.

    ``leq_pairs`` may be any generating relation; its reflexive-transitive
    closure must be a partial order in which every pair has a meet and a
    join, meets distribute over joins, and a least and greatest element
    exist (exposed as the constants bot/top).
    """
    n = len(labels)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in leq_pairs:
        leq[a][b] = True
    for m in range(n):  # transitive closure
        for a in range(n):
            if leq[a][m]:
                for b in range(n):
                    if leq[m][b]:
                        leq[a][b] = True
    for a in range(n):
        for b in range(n):
            if a != b and leq[a][b] and leq[b][a]:
                raise ValueError("order not antisymmetric")

    def meet(a: int, b: int) -> int:
        lower = [c for c in range(n) if leq[c][a] and leq[c][b]]
        greatest = [c for c in lower if all(leq[d][c] for d in lower)]
        if len(greatest) != 1:
            raise ValueError(f"no meet for {labels[a]!r}, {labels[b]!r}")
        return greatest[0]

    def join(a: int, b: int) -> int:
        upper = [c for c in range(n) if leq[a][c] and leq[b][c]]
        least = [c for c in upper if all(leq[c][d] for d in upper)]
        if len(least) != 1:
            raise ValueError(f"no join for {labels[a]!r}, {labels[b]!r}")
        return least[0]

    meets = tuple(meet(a, b) for a in range(n) for b in range(n))
    joins = tuple(join(a, b) for a in range(n) for b in range(n))
    bottoms = [c for c in range(n) if all(leq[c][d] for d in range(n))]
    tops = [c for c in range(n) if all(leq[d][c] for d in range(n))]
    if len(bottoms) != 1 or len(tops) != 1:
        raise ValueError("lattice must be bounded (unique bot and top)")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = meets[a * n + joins[b * n + c]]
                rhs = joins[meets[a * n + b] * n + meets[a * n + c]]
                if lhs != rhs:
                    raise ValueError(
                        "lattice not distributive: fails at "
                        f"({labels[a]}, {labels[b]}, {labels[c]})"
                    )
    return FiniteAlgebra(
        signature=LATTICE_SIGNATURE,
        carrier=tuple(labels),
        ops=(
            ("and", meets),
            ("or", joins),
            ("bot", (bottoms[0],)),
            ("top", (tops[0],)),
        ),
        order=frozenset((a, b) for a in range(n) for b in range(n) if leq[a][b]),
        name="bounded-distributive-lattice",
    )
