"""Attitude functions, profiles, aggregators, and the characterization checks.

The central objects: an attitude function assigns a truth value to every
agenda formula; a profile is one attitude function per voter; an aggregator
maps profiles to a collective attitude function. A decision criterion is a
map from voter-value tuples to single values through which a systematic
aggregator factors pointwise.

Two constructions connect aggregators and algebra homomorphisms, and both
directions are implemented and checked exhaustively at desk scale:

* every rational, universal, strongly systematic aggregator yields a total
  decision criterion that is a homomorphism from the voter-power algebra to
  the value algebra (``criterion_from_aggregator``);
* every such homomorphism induces an aggregator with those three properties
  (``aggregator_from_criterion``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Optional, Sequence, Union

from .agenda import Agenda, check_pseudo_rich, is_strictly_contingent, pseudo_richness
from .algebra import (
    FiniteAlgebra,
    all_valuations,
    evaluate,
    is_homomorphism,
    product_algebra,
    product_element_coords,
    product_element_index,
)
from .errors import BudgetExceededError
from .syntax import Formula, bounded_closure, formula_sort_key

INDEPENDENT = "independent"
SYSTEMATIC = "systematic"
STRONGLY_SYSTEMATIC = "strongly-systematic"

DEFAULT_PROFILE_BUDGET = 10**6
DEFAULT_CRITERION_BUDGET = 10**8


@dataclass(frozen=True)
class AttitudeFunction:
    """A total assignment of truth values to the agenda formulas, stored as
    carrier indices aligned with the agenda's formula order."""

    agenda: Agenda
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.agenda.formulas):
            raise ValueError("attitude must be total on the agenda")
        size = self.agenda.algebra.size
        if any(not (0 <= v < size) for v in self.values):
            raise ValueError("attitude values outside the carrier")

    def value(self, formula: Formula) -> int:
        return self.values[self.agenda.index[formula]]


@dataclass(frozen=True)
class Profile:
    """One attitude function per voter, all over the same agenda."""

    attitudes: tuple[AttitudeFunction, ...]

    def __post_init__(self):
        if not self.attitudes:
            raise ValueError("empty profile")
        agendas = {a.agenda for a in self.attitudes}
        if len(agendas) != 1:
            raise ValueError("attitudes must share one agenda")

    @property
    def agenda(self) -> Agenda:
        return self.attitudes[0].agenda

    @property
    def electorate(self) -> int:
        return len(self.attitudes)

    def value_tuple(self, formula: Formula) -> tuple[int, ...]:
        i = self.agenda.index[formula]
        return tuple(a.values[i] for a in self.attitudes)


@dataclass(frozen=True)
class DecisionCriterion:
    """A total map from voter-value tuples into the value algebra.

    ``values`` is indexed by the row-major rank of the voter tuple (voter 0
    most significant), matching the product-algebra carrier order.
    """

    algebra: FiniteAlgebra
    electorate: int
    values: tuple[int, ...]

    def __post_init__(self):
        expected = self.algebra.size**self.electorate
        if len(self.values) != expected:
            raise ValueError(f"criterion table needs {expected} entries")
        if any(not (0 <= v < self.algebra.size) for v in self.values):
            raise ValueError("criterion values outside the carrier")

    def __call__(self, coords: Sequence[int]) -> int:
        return self.values[product_element_index(self.algebra.size, coords)]

    def tuple_of(self, index: int) -> tuple[int, ...]:
        return product_element_coords(self.algebra.size, self.electorate, index)


def projection_criterion(algebra: FiniteAlgebra, electorate: int, voter: int) -> DecisionCriterion:
    if not 0 <= voter < electorate:
        raise ValueError("voter index out of range")
    values = tuple(
        coords[voter]
        for coords in product(range(algebra.size), repeat=electorate)
    )
    return DecisionCriterion(algebra, electorate, values)


def constant_criterion(algebra: FiniteAlgebra, electorate: int, value: int) -> DecisionCriterion:
    return DecisionCriterion(
        algebra, electorate, (value,) * (algebra.size**electorate)
    )


def majority_criterion(algebra: FiniteAlgebra, electorate: int) -> DecisionCriterion:
    """Strict majority over a two-element carrier (ties go to 0)."""
    if algebra.size != 2:
        raise ValueError("majority needs a two-element carrier")
    values = tuple(
        int(sum(coords) * 2 > electorate)
        for coords in product((0, 1), repeat=electorate)
    )
    return DecisionCriterion(algebra, electorate, values)


# ---------------------------------------------------------------------------
# Rationality
# ---------------------------------------------------------------------------


def is_rational_attitude(
    attitude: AttitudeFunction,
) -> tuple[bool, Optional[dict[str, int]]]:
    """An attitude is rational iff some valuation of the agenda's variables
    reproduces it on every agenda formula. Returns the lexicographically
    least witnessing valuation."""
    agenda = attitude.agenda
    for valuation in all_valuations(agenda.variables, agenda.algebra):
        if all(
            evaluate(f, valuation, agenda.algebra) == attitude.values[i]
            for i, f in enumerate(agenda.formulas)
        ):
            return True, dict(valuation)
    return False, None


@lru_cache(maxsize=None)
def _rational_table(agenda: Agenda) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Distinct rational attitude value-tuples with the index (into valuation
    order) of their least witnessing valuation."""
    rows: dict[tuple[int, ...], int] = {}
    for w, valuation in enumerate(all_valuations(agenda.variables, agenda.algebra)):
        values = tuple(
            evaluate(f, valuation, agenda.algebra) for f in agenda.formulas
        )
        rows.setdefault(values, w)
    return tuple(rows.items())


def enumerate_rational_attitudes(agenda: Agenda) -> tuple[AttitudeFunction, ...]:
    """All distinct rational attitude functions, in order of their least
    witnessing valuation."""
    return tuple(
        AttitudeFunction(agenda, values) for values, _ in _rational_table(agenda)
    )


def enumerate_rational_profiles(
    agenda: Agenda, electorate: int, budget: int = DEFAULT_PROFILE_BUDGET
) -> tuple[Profile, ...]:
    attitudes = enumerate_rational_attitudes(agenda)
    count = len(attitudes) ** electorate
    if count > budget:
        raise BudgetExceededError(
            f"{count} rational profiles exceed budget {budget}"
        )
    return tuple(
        Profile(combo) for combo in product(attitudes, repeat=electorate)
    )


# ---------------------------------------------------------------------------
# Witness constructions for prescribed values
# ---------------------------------------------------------------------------


def rational_attitude_with_values(
    agenda: Agenda, targets: Sequence[int]
) -> tuple[tuple[Formula, ...], AttitudeFunction]:
    """A rational attitude hitting prescribed values on pseudo-rich witnesses.

    For targets (a_1,...,a_m) over an m-pseudo-rich agenda, picks the witness
    formulas delta_j (each interderivable with its own variable x_j), sets
    x_j to a_j and every other agenda variable to the least carrier element,
    and evaluates the whole agenda. The construction is checked: the returned
    attitude takes value a_j on delta_j.
    """
    m = len(targets)
    level, witnesses = pseudo_richness(agenda)
    if level < m:
        raise ValueError(f"agenda is only {level}-pseudo-rich, need {m}")
    size = agenda.algebra.size
    if any(not (0 <= t < size) for t in targets):
        raise ValueError("targets outside the carrier")
    chosen = witnesses[:m]
    valuation = {name: 0 for name in agenda.variables}
    for (_, var), target in zip(chosen, targets):
        valuation[var] = target
    values = tuple(
        evaluate(f, valuation, agenda.algebra) for f in agenda.formulas
    )
    attitude = AttitudeFunction(agenda, values)
    for (delta, _), target in zip(chosen, targets):
        if attitude.value(delta) != target:
            raise ValueError(
                "pseudo-rich witness does not track its variable; "
                "is the matrix a selfextensional presentation?"
            )
    return tuple(delta for delta, _ in chosen), attitude


def rational_profile_with_values(
    agenda: Agenda, electorate: int, target_tuples: Sequence[Sequence[int]]
) -> tuple[tuple[Formula, ...], Profile]:
    """Componentwise version: target_tuples[j] prescribes, voter by voter,
    the value of the j-th witness formula."""
    if electorate < 1:
        raise ValueError("electorate must be >= 1")
    for t in target_tuples:
        if len(t) != electorate:
            raise ValueError("each target tuple needs one entry per voter")
    deltas: tuple[Formula, ...] = ()
    attitudes = []
    for voter in range(electorate):
        deltas, attitude = rational_attitude_with_values(
            agenda, [t[voter] for t in target_tuples]
        )
        attitudes.append(attitude)
    return deltas, Profile(tuple(attitudes))


# ---------------------------------------------------------------------------
# Aggregators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriterionAggregator:
    """Aggregator induced pointwise by a decision criterion; its domain is
    the set of all rational profiles."""

    criterion: DecisionCriterion
    agenda: Agenda

    def __post_init__(self):
        if self.criterion.algebra != self.agenda.algebra:
            raise ValueError("criterion and agenda use different algebras")

    @property
    def electorate(self) -> int:
        return self.criterion.electorate

    def apply(self, profile: Profile) -> AttitudeFunction:
        if profile.electorate != self.electorate:
            raise ValueError("profile has the wrong number of voters")
        values = tuple(
            self.criterion(profile.value_tuple(f)) for f in self.agenda.formulas
        )
        return AttitudeFunction(self.agenda, values)

    def in_domain(self, profile: Profile) -> bool:
        rational = {v for v, _ in _rational_table(self.agenda)}
        return all(a.values in rational for a in profile.attitudes)

    def domain_profiles(self, budget: int = DEFAULT_PROFILE_BUDGET) -> tuple[Profile, ...]:
        return enumerate_rational_profiles(self.agenda, self.electorate, budget)


@dataclass(frozen=True)
class ExtensionalAggregator:
    """Aggregator given by an explicit table on an explicit domain."""

    agenda: Agenda
    electorate: int
    table: tuple[tuple[Profile, AttitudeFunction], ...]

    def __post_init__(self):
        seen = set()
        for profile, output in self.table:
            if profile.agenda != self.agenda or output.agenda != self.agenda:
                raise ValueError("table rows must use the aggregator's agenda")
            if profile.electorate != self.electorate:
                raise ValueError("profile has the wrong number of voters")
            if profile in seen:
                raise ValueError("duplicate profile in table")
            seen.add(profile)

    @cached_property
    def _lookup(self) -> dict[Profile, AttitudeFunction]:
        return dict(self.table)

    def apply(self, profile: Profile) -> AttitudeFunction:
        try:
            return self._lookup[profile]
        except KeyError:
            raise ValueError("profile outside the aggregator's domain") from None

    def in_domain(self, profile: Profile) -> bool:
        return profile in self._lookup

    def domain_profiles(self, budget: int = DEFAULT_PROFILE_BUDGET) -> tuple[Profile, ...]:
        return tuple(p for p, _ in self.table)


Aggregator = Union[CriterionAggregator, ExtensionalAggregator]


# ---------------------------------------------------------------------------
# Property checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalityReport:
    universal: bool
    rational: bool
    missing_profile: Optional[Profile]
    irrational_witness: Optional[tuple[Profile, AttitudeFunction]]

    @property
    def both(self) -> bool:
        return self.universal and self.rational


def check_rational_universal(
    aggregator: Aggregator, budget: int = DEFAULT_PROFILE_BUDGET
) -> RationalityReport:
    """Universality: every rational profile is in the domain. Rationality:
    every output on a rational domain profile is itself rational. Exhaustive
    over the rational profiles of the agenda."""
    agenda = aggregator.agenda
    rational_values = {v for v, _ in _rational_table(agenda)}
    universal = True
    rational = True
    missing = None
    witness = None
    for profile in enumerate_rational_profiles(agenda, aggregator.electorate, budget):
        if not aggregator.in_domain(profile):
            if universal:
                universal, missing = False, profile
            continue
        output = aggregator.apply(profile)
        if rational and output.values not in rational_values:
            rational, witness = False, (profile, output)
    return RationalityReport(universal, rational, missing, witness)


@dataclass(frozen=True)
class SystematicityResult:
    holds: bool
    level: str
    depth: int
    criterion: Optional[dict[tuple[int, ...], int]]
    conflict: Optional[str]


@lru_cache(maxsize=None)
def _fragment_and_vectors(
    agenda: Agenda, depth: int
) -> tuple[tuple[Formula, ...], tuple[tuple[int, ...], ...]]:
    """The bounded closure of the agenda at ``depth`` (sorted), with each
    fragment formula's value at every valuation of the agenda variables."""
    fragment = tuple(
        sorted(
            bounded_closure(agenda.formulas, agenda.signature, depth),
            key=formula_sort_key,
        )
    )
    vectors = tuple(
        tuple(evaluate(f, v, agenda.algebra) for v in
              all_valuations(agenda.variables, agenda.algebra))
        for f in fragment
    )
    return fragment, vectors


def check_systematicity(
    aggregator: Aggregator,
    level: str = SYSTEMATIC,
    depth: int = 1,
    budget: int = DEFAULT_PROFILE_BUDGET,
) -> SystematicityResult:
    """Does a single decision criterion explain the aggregator?

    independent:  for each formula separately, equal voter tuples imply equal
                  outputs across profiles.
    systematic:   one map over all agenda formulas and profiles.
    strongly-systematic: the same, over the agenda's bounded closure at
                  ``depth``; attitude values on closure formulas are the
                  unique rational extensions, so pairs whose input or output
                  attitude is not rational contribute only their agenda part.

    Returns the induced (partial) criterion on the attained tuples when the
    level holds, and a human-readable conflict otherwise.
    """
    if level not in (INDEPENDENT, SYSTEMATIC, STRONGLY_SYSTEMATIC):
        raise ValueError(f"unknown level {level!r}")
    agenda = aggregator.agenda
    rational_index = dict(_rational_table(agenda))
    profiles = aggregator.domain_profiles(budget)

    if level == STRONGLY_SYSTEMATIC:
        fragment, vectors = _fragment_and_vectors(agenda, depth)
    else:
        fragment, vectors = agenda.formulas, None
    if len(profiles) * len(fragment) > budget:
        raise BudgetExceededError(
            f"{len(profiles)} profiles x {len(fragment)} formulas exceed budget"
        )

    agenda_positions = {f: agenda.index[f] for f in agenda.formulas}
    constraints: dict[object, tuple[int, str]] = {}

    for p_num, profile in enumerate(profiles):
        output = aggregator.apply(profile)
        # closure values exist only for rational attitudes
        voter_vals = None
        out_vals = None
        if level == STRONGLY_SYSTEMATIC:
            voter_ws = [rational_index.get(a.values) for a in profile.attitudes]
            out_w = rational_index.get(output.values)
            if all(w is not None for w in voter_ws):
                voter_vals = [
                    tuple(vec[w] for vec in vectors) for w in voter_ws
                ]
            if out_w is not None:
                out_vals = tuple(vec[out_w] for vec in vectors)
        for f_num, formula in enumerate(fragment):
            pos = agenda_positions.get(formula)
            if pos is not None:
                attained = tuple(a.values[pos] for a in profile.attitudes)
                out_value = output.values[pos]
            else:
                if voter_vals is None or out_vals is None:
                    continue
                attained = tuple(vals[f_num] for vals in voter_vals)
                out_value = out_vals[f_num]
            key = (attained, formula) if level == INDEPENDENT else attained
            where = f"profile {p_num} at {formula_sort_key(formula)}"
            prior = constraints.get(key)
            if prior is None:
                constraints[key] = (out_value, where)
            elif prior[0] != out_value:
                conflict = (
                    f"tuple {attained}: value {prior[0]} from {prior[1]} vs "
                    f"value {out_value} from {where}"
                )
                return SystematicityResult(False, level, depth, None, conflict)

    criterion = {k: v for k, (v, _) in constraints.items()}
    return SystematicityResult(True, level, depth, criterion, None)


# ---------------------------------------------------------------------------
# The two directions of the characterization
# ---------------------------------------------------------------------------


def criterion_from_aggregator(
    aggregator: Aggregator,
    via: Optional[Formula] = None,
    depth: int = 1,
    budget: int = DEFAULT_PROFILE_BUDGET,
) -> DecisionCriterion:
    """Extract the total decision criterion of a rational, universal,
    strongly systematic aggregator, and verify it is a homomorphism.

    Every voter tuple is attained on a single witness formula: the first
    pseudo-richness witness by default, or any strictly contingent formula
    passed as ``via``. The preconditions are verified, not assumed; the final
    homomorphism assertion failing signals a non-qualifying aggregator (or a
    bug) and raises.
    """
    agenda = aggregator.agenda
    algebra = agenda.algebra
    n = aggregator.electorate

    report = check_rational_universal(aggregator, budget)
    if not report.both:
        raise ValueError(
            "aggregator is not universal+rational: "
            f"universal={report.universal} rational={report.rational}"
        )
    strong = check_systematicity(aggregator, STRONGLY_SYSTEMATIC, depth, budget)
    if not strong.holds:
        raise ValueError(f"aggregator is not strongly systematic: {strong.conflict}")

    # one rational attitude per target value of the witness formula
    if via is None:
        ok, _ = check_pseudo_rich(agenda, 1)
        if not ok:
            raise ValueError("agenda is not even 1-pseudo-rich")
        attitude_for = {}
        for b in range(algebra.size):
            # the witness formula is the same on every iteration: the first
            # pseudo-richness witness of the agenda
            (delta,), attitude = rational_attitude_with_values(agenda, [b])
            attitude_for[b] = attitude
    else:
        delta = via
        if via not in agenda.index:
            raise ValueError("witness formula must belong to the agenda")
        if not is_strictly_contingent(via, algebra):
            raise ValueError("witness formula must be strictly contingent")
        attitude_for = {}
        for valuation in all_valuations(agenda.variables, algebra):
            b = evaluate(via, valuation, algebra)
            if b not in attitude_for:
                values = tuple(
                    evaluate(f, valuation, algebra) for f in agenda.formulas
                )
                attitude_for[b] = AttitudeFunction(agenda, values)
        if len(attitude_for) != algebra.size:
            raise ValueError("witness formula must be strictly contingent")

    values = []
    for coords in product(range(algebra.size), repeat=n):
        profile = Profile(tuple(attitude_for[b] for b in coords))
        values.append(aggregator.apply(profile).value(delta))
    criterion = DecisionCriterion(algebra, n, tuple(values))

    ok, violation = is_homomorphism(
        criterion.values, product_algebra(algebra, n), algebra
    )
    if not ok:
        symbol, args = violation
        raise ValueError(
            "extracted criterion is not a homomorphism "
            f"(fails at {symbol} on {args}); the aggregator does not qualify"
        )
    return criterion


def aggregator_from_criterion(
    criterion: DecisionCriterion, agenda: Agenda
) -> CriterionAggregator:
    """Lift a homomorphism voter-power -> values to the induced aggregator on
    all rational profiles. Rejects non-homomorphic criteria."""
    if criterion.algebra != agenda.algebra:
        raise ValueError("criterion and agenda use different algebras")
    ok, violation = is_homomorphism(
        criterion.values,
        product_algebra(criterion.algebra, criterion.electorate),
        criterion.algebra,
    )
    if not ok:
        symbol, args = violation
        raise ValueError(f"criterion is not a homomorphism (fails at {symbol} on {args})")
    return CriterionAggregator(criterion, agenda)


@dataclass(frozen=True)
class ParetoReport:
    holds: bool
    checked_profiles: int
    witness: Optional[str]


def check_pareto(
    aggregator: Aggregator, budget: int = DEFAULT_PROFILE_BUDGET
) -> ParetoReport:
    """Unanimity on a constant's value forces that value in the output.

    Preconditions (universal, rational, strongly systematic) are verified
    first; the scan then covers every rational profile, agenda formula and
    constant of the signature.
    """
    agenda = aggregator.agenda
    report = check_rational_universal(aggregator, budget)
    strong = check_systematicity(aggregator, STRONGLY_SYSTEMATIC, 1, budget)
    if not (report.both and strong.holds):
        raise ValueError(
            "Pareto check requires a universal, rational, strongly "
            "systematic aggregator"
        )
    constant_values = {
        agenda.algebra.constant(c) for c in agenda.signature.constants
    }
    checked = 0
    for profile in enumerate_rational_profiles(agenda, aggregator.electorate, budget):
        output = aggregator.apply(profile)
        checked += 1
        for i, formula in enumerate(agenda.formulas):
            tuple_values = set(a.values[i] for a in profile.attitudes)
            if len(tuple_values) == 1:
                (value,) = tuple_values
                if value in constant_values and output.values[i] != value:
                    return ParetoReport(
                        False,
                        checked,
                        f"unanimous {agenda.algebra.label(value)} on "
                        f"{formula_sort_key(formula)} aggregated to "
                        f"{agenda.algebra.label(output.values[i])}",
                    )
    return ParetoReport(True, checked, None)


# ---------------------------------------------------------------------------
# Brute-force census of qualifying aggregators (independent of the
# homomorphism equation; used as the second route of the bijection check)
# ---------------------------------------------------------------------------


def qualifying_criteria(
    agenda: Agenda,
    electorate: int,
    depth: int = 1,
    budget: int = DEFAULT_CRITERION_BUDGET,
) -> list[DecisionCriterion]:
    """All total decision criteria whose induced aggregator is rational,
    universal and strongly systematic, found by scanning every table.

    Universality and the existence of a criterion hold by construction for
    criterion-induced aggregators; what is verified per candidate is (a)
    rationality: every rational profile aggregates to a rational attitude,
    and (b) the strong-systematicity identity on the depth-``depth`` closure:
    the unique rational extension of each output agrees with the criterion
    applied to the extended voter tuples. The homomorphism equation is never
    consulted, so this census is an independent route to the same class.
    """
    algebra = agenda.algebra
    size = algebra.size
    n_tuples = size**electorate
    n_candidates = size**n_tuples
    if n_candidates > budget:
        raise BudgetExceededError(
            f"{n_candidates} candidate criteria exceed budget {budget}"
        )

    table = _rational_table(agenda)
    valuation_of = {values: w for values, w in table}
    fragment, vectors = _fragment_and_vectors(agenda, depth)
    n_profiles = len(table) ** electorate
    if n_profiles * len(fragment) > budget:
        raise BudgetExceededError("profile x fragment space exceeds budget")

    agenda_rows = [agenda.index[f] for f in agenda.formulas]
    # per profile: product index of the voter tuple at every fragment formula
    profile_data = []
    for combo in product(table, repeat=electorate):
        ws = [w for _, w in combo]
        frag_indices = tuple(
            product_element_index(size, [vec[w] for w in ws]) for vec in vectors
        )
        agenda_values = [values for values, _ in combo]
        agenda_indices = tuple(
            product_element_index(size, [vals[i] for vals in agenda_values])
            for i in agenda_rows
        )
        profile_data.append((agenda_indices, frag_indices))

    survivors = []
    for candidate in product(range(size), repeat=n_tuples):
        ok = True
        for agenda_indices, frag_indices in profile_data:
            out = tuple(candidate[t] for t in agenda_indices)
            w = valuation_of.get(out)
            if w is None:
                ok = False  # output not rational
                break
            for vec, t in zip(vectors, frag_indices):
                if candidate[t] != vec[w]:
                    ok = False  # extension disagrees with the criterion
                    break
            if not ok:
                break
        if ok:
            survivors.append(DecisionCriterion(algebra, electorate, candidate))
    return survivors
