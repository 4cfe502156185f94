"""Reflexive Kripke frames, their powerset modal algebras, and the
subjunctive reading of implication.

The implication p -> q is read as box(not p or q): a statement about all
accessible worlds rather than the actual one. Consistency of finite formula
sets is decided by bounded search over reflexive frames, with truth at a
world as the satisfaction notion (local consequence).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Optional

from .algebra import FiniteAlgebra, evaluate
from .syntax import App, Formula, Signature, Var, variables_of

MODAL_SIGNATURE = Signature(
    (("not", 1), ("or", 2), ("and", 2), ("bot", 0), ("top", 0), ("box", 1))
)


@dataclass(frozen=True)
class KripkeFrame:
    """A finite set of worlds 0..n-1 with an accessibility relation."""

    worlds: int
    relation: frozenset[tuple[int, int]]

    def __post_init__(self):
        for a, b in self.relation:
            if not (0 <= a < self.worlds and 0 <= b < self.worlds):
                raise ValueError("relation mentions unknown worlds")

    @cached_property
    def is_reflexive(self) -> bool:
        return all((w, w) in self.relation for w in range(self.worlds))

    def successors(self, world: int) -> tuple[int, ...]:
        return tuple(b for a, b in sorted(self.relation) if a == world)


def bao_from_frame(frame: KripkeFrame) -> FiniteAlgebra:
    """The powerset algebra of a reflexive frame with box as the
    all-successors operator.

    Carrier element i is the subset of worlds with bitmask i. The result is
    verified at construction to satisfy box(top)=top, box meet-distributivity
    and box(a) <= a (the last is where reflexivity enters).
    """
    if not frame.is_reflexive:
        raise ValueError("frame must be reflexive")
    n = frame.worlds
    size = 1 << n
    succ = [0] * n
    for a, b in frame.relation:
        succ[a] |= 1 << b
    full = size - 1

    def box(a: int) -> int:
        return sum(1 << w for w in range(n) if succ[w] & ~a == 0)

    def subset_label(mask: int) -> str:
        return "{" + ",".join(str(w) for w in range(n) if mask >> w & 1) + "}"

    ops = (
        ("not", tuple(full ^ a for a in range(size))),
        ("or", tuple(a | b for a in range(size) for b in range(size))),
        ("and", tuple(a & b for a in range(size) for b in range(size))),
        ("bot", (0,)),
        ("top", (full,)),
        ("box", tuple(box(a) for a in range(size))),
    )
    algebra = FiniteAlgebra(
        signature=MODAL_SIGNATURE,
        carrier=tuple(subset_label(a) for a in range(size)),
        ops=tuple(ops),
        order=frozenset(
            (a, b) for a in range(size) for b in range(size) if a & ~b == 0
        ),
        name=f"frame-algebra-{n}w",
    )
    boxt = algebra.tables["box"]
    if boxt[full] != full:
        raise AssertionError("box(top) != top")
    for a in range(size):
        if boxt[a] & ~a:
            raise AssertionError("box(a) <= a fails; frame not reflexive?")
        for b in range(size):
            if boxt[a & b] != boxt[a] & boxt[b]:
                raise AssertionError("box does not distribute over meets")
    return algebra


def subjunctive_implication(antecedent: Formula, consequent: Formula) -> Formula:
    """box(not antecedent or consequent)."""
    return App("box", (App("or", (App("not", (antecedent,)), consequent)),))


def material_implication(antecedent: Formula, consequent: Formula) -> Formula:
    """not antecedent or consequent, without the modal guard."""
    return App("or", (App("not", (antecedent,)), consequent))


def reflexive_frames(worlds: int) -> list[KripkeFrame]:
    """All reflexive frames on the given world count, in a fixed order:
    subsets of the off-diagonal pairs by binary counting over the pairs in
    lexicographic order."""
    diagonal = [(w, w) for w in range(worlds)]
    off = [
        (a, b) for a in range(worlds) for b in range(worlds) if a != b
    ]
    frames = []
    for mask in range(1 << len(off)):
        chosen = [off[i] for i in range(len(off)) if mask >> i & 1]
        frames.append(KripkeFrame(worlds, frozenset(diagonal + chosen)))
    return frames


@dataclass(frozen=True)
class ConsistencyWitness:
    frame: KripkeFrame
    valuation: dict[str, int]
    world: int


def is_consistent(
    formulas: Iterable[Formula], max_worlds: int
) -> tuple[bool, Optional[ConsistencyWitness]]:
    """Is there a reflexive frame with at most max_worlds worlds, a valuation
    and a world making every formula true there?

    Search is deterministic: frames by size then relation order, valuations
    in lexicographic order over sorted variables, worlds ascending; the first
    witness is returned. A False verdict means "no model within the bound".
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be >= 1")
    formulas = tuple(formulas)
    names = sorted({v for f in formulas for v in variables_of(f)})
    for n in range(1, max_worlds + 1):
        for frame in reflexive_frames(n):
            algebra = bao_from_frame(frame)
            for values in product(range(algebra.size), repeat=len(names)):
                valuation = dict(zip(names, values))
                truths = [evaluate(f, valuation, algebra) for f in formulas]
                for world in range(n):
                    if all(t >> world & 1 for t in truths):
                        return True, ConsistencyWitness(frame, valuation, world)
    return False, None


@dataclass(frozen=True)
class SubjunctiveReport:
    condition_a: dict[str, bool]
    condition_b: dict[str, bool]
    material_b: dict[str, bool]
    bottom_certified: bool
    insufficient_bound: bool
    max_worlds: int

    @property
    def a_holds(self) -> bool:
        return all(self.condition_a.values())

    @property
    def b_holds(self) -> bool:
        return all(self.condition_b.values())

    @property
    def material_b_fails(self) -> bool:
        return not all(self.material_b.values())


def certify_implication_bottom(max_worlds: int) -> bool:
    """In every frame algebra up to the bound, the meet of box(not p or q),
    p and not q is bottom, pointwise over all element pairs."""
    for n in range(1, max_worlds + 1):
        for frame in reflexive_frames(n):
            algebra = bao_from_frame(frame)
            bot = algebra.constant("bot")
            for p in range(algebra.size):
                for q in range(algebra.size):
                    impl = algebra.op("box", [algebra.op("or", [algebra.op("not", [p]), q])])
                    meet = algebra.op(
                        "and", [algebra.op("and", [impl, p]), algebra.op("not", [q])]
                    )
                    if meet != bot:
                        return False
    return True


def check_subjunctive_conditions(max_worlds: int = 3) -> SubjunctiveReport:
    """Run the eight consistency checks for the boxed implication and the
    baseline showing the unboxed (material) reading loses the negated-
    implication consistencies.

    Condition a: p -> q must be inconsistent with {p, not q} and consistent
    with the other three sign patterns. Condition b: not(p -> q) must be
    consistent with all four sign patterns. With one world, box collapses to
    the identity and condition b cannot be exhibited; the report flags the
    bound as insufficient in that case.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be >= 1")
    p, q = Var("p"), Var("q")
    np_, nq = App("not", (p,)), App("not", (q,))
    sides = {"p,q": (p, q), "p,not q": (p, nq), "not p,q": (np_, q), "not p,not q": (np_, nq)}
    subj = subjunctive_implication(p, q)
    mat = material_implication(p, q)

    condition_a = {}
    condition_a["inconsistent with p,not q"] = not is_consistent(
        [subj, p, nq], max_worlds
    )[0]
    for label in ("p,q", "not p,q", "not p,not q"):
        condition_a[f"consistent with {label}"] = is_consistent(
            [subj, *sides[label]], max_worlds
        )[0]

    neg_subj = App("not", (subj,))
    condition_b = {
        f"consistent with {label}": is_consistent(
            [neg_subj, *sides[label]], max_worlds
        )[0]
        for label in sides
    }

    neg_mat = App("not", (mat,))
    material_b = {
        f"consistent with {label}": is_consistent(
            [neg_mat, *sides[label]], max_worlds
        )[0]
        for label in sides
    }

    return SubjunctiveReport(
        condition_a=condition_a,
        condition_b=condition_b,
        material_b=material_b,
        bottom_certified=certify_implication_bottom(3),
        insufficient_bound=max_worlds < 2 and not all(condition_b.values()),
        max_worlds=max_worlds,
    )
