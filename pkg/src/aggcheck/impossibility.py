"""Boolean specialization: decisive coalitions, ultrafilters, dictators.

Over the two-element algebra, a decision criterion determines the family of
coalitions it deems decisive; the criterion is a homomorphism exactly when
that family is an ultrafilter, which on a finite electorate is principal,
i.e. generated by one voter — the dictator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from .aggregation import DecisionCriterion
from .algebra import is_homomorphism, product_algebra, product_element_index


@dataclass(frozen=True)
class UltrafilterView:
    """The decisive-coalition family of a two-valued decision criterion."""

    electorate: int
    decisive: frozenset[frozenset[int]]


def decisive_coalitions(criterion: DecisionCriterion) -> UltrafilterView:
    """Coalitions whose characteristic tuple the criterion maps to 1."""
    if criterion.algebra.size != 2:
        raise ValueError("decisive coalitions are defined over a 2-element carrier")
    n = criterion.electorate
    family = set()
    for mask in range(1 << n):
        coalition = frozenset(i for i in range(n) if mask >> i & 1)
        coords = [1 if i in coalition else 0 for i in range(n)]
        if criterion(coords) == 1:
            family.add(coalition)
    return UltrafilterView(n, frozenset(family))


@dataclass(frozen=True)
class UltrafilterCheck:
    is_ultrafilter: bool
    is_filter: bool
    violations: tuple[tuple[str, str], ...]
    oligarchs: Optional[frozenset[int]]


def is_ultrafilter(view: UltrafilterView) -> UltrafilterCheck:
    """Check properness, upward closure, intersection closure, maximality.

    All violations are reported (axiom name plus witness). When the family is
    a proper filter but not maximal, the intersection of all decisive
    coalitions is reported as the oligarchs.
    """
    n = view.electorate
    everyone = frozenset(range(n))
    family = view.decisive
    violations: list[tuple[str, str]] = []

    if frozenset() in family:
        violations.append(("properness", "the empty coalition is decisive"))
    upward = True
    for c in sorted(family, key=sorted):
        for extra in range(n):
            bigger = c | {extra}
            if bigger not in family:
                upward = False
                violations.append(
                    ("upward closure", f"{sorted(c)} decisive but {sorted(bigger)} is not")
                )
                break
        if not upward:
            break
    intersect = True
    for a, b in combinations(sorted(family, key=sorted), 2):
        if a & b not in family:
            intersect = False
            violations.append(
                (
                    "intersection",
                    f"{sorted(a)} ∩ {sorted(b)} = {sorted(a & b)} is not decisive",
                )
            )
            break
    maximal = True
    for mask in range(1 << n):
        c = frozenset(i for i in range(n) if mask >> i & 1)
        inside = (c in family) + (everyone - c in family)
        if inside != 1:
            maximal = False
            violations.append(
                (
                    "maximality",
                    f"{'both' if inside == 2 else 'neither'} of {sorted(c)} and its "
                    "complement are decisive",
                )
            )
            break

    proper = frozenset() not in family and bool(family)
    is_filter = proper and upward and intersect
    oligarchs = None
    if is_filter and not maximal:
        members = sorted(family, key=sorted)
        core = members[0]
        for c in members[1:]:
            core = core & c
        oligarchs = frozenset(core)
    return UltrafilterCheck(
        is_ultrafilter=not violations,
        is_filter=is_filter,
        violations=tuple(violations),
        oligarchs=oligarchs,
    )


def classify_dictator(criterion: DecisionCriterion) -> Optional[int]:
    """The unique voter the criterion projects onto, if it is a homomorphism;
    None otherwise."""
    if criterion.algebra.size != 2:
        raise ValueError("dictator classification is defined over a 2-element carrier")
    n = criterion.electorate
    ok, _ = is_homomorphism(
        criterion.values,
        product_algebra(criterion.algebra, n),
        criterion.algebra,
    )
    if not ok:
        return None
    for voter in range(n):
        if all(
            criterion.values[product_element_index(2, coords)] == coords[voter]
            for coords in product((0, 1), repeat=n)
        ):
            return voter
    return None
