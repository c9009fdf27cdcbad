"""Partial averages and finite-cutoff densities of the point counts.

The limit statements being reproduced ("as c grows") are realized at finite
cutoffs: an average at cutoff c sums the count over the primes p <= c meeting
a divisibility condition on c, and a density query counts pairs (p, c) with
p_min <= p <= c <= C satisfying a predicate.  All ratios are exact rationals;
nothing here ever touches floating point.

Per-prime count lookups go through dynamics.residue_count_table, the bulk
form of the exhaustive scan, so sweeping every c up to 10^4 stays cheap.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .dynamics import DegreeBase, DegreeSpec, Interpretation, residue_count_table
from .errors import DomainError, ResourceError
from .rings import primes_in_range

FACTOR_BUDGET = 10**12  # trial division cap for divisibility conditions
SWEEP_BUDGET = 10**6  # largest cutoff a full prime sweep may use

_prime_cache: list[int] = []
_prime_cache_limit = 0


def _primes_up_to(limit: int) -> list[int]:
    """Cached ascending prime list; grows geometrically to amortize sieving."""
    global _prime_cache, _prime_cache_limit
    if limit > _prime_cache_limit:
        _prime_cache_limit = max(limit, 2 * _prime_cache_limit, 1024)
        _prime_cache = primes_in_range(2, _prime_cache_limit)
    hi = bisect_right(_prime_cache, limit)
    return _prime_cache[:hi]


class AvgCondition(Enum):
    """Which primes p enter an average at cutoff c."""

    P_DIVIDES_C = "divides"
    P_DIVIDES_C_PLUS_1 = "divides-plus1"
    P_DIVIDES_C_MINUS_1 = "divides-minus1"
    P_NOT_DIVIDES_C = "not-divides"
    OTHER_RESIDUES = "other"


@dataclass(frozen=True)
class AverageQuery:
    family: DegreeSpec
    condition: AvgCondition
    interpretation: Interpretation
    cs: tuple[int, ...]

    @property
    def p_min(self) -> int:
        return self.family.min_prime


@dataclass(frozen=True)
class AveragePoint:
    """One cutoff: numerator sum, denominator count, exact ratio.

    A point whose condition selects no primes is flagged empty (ratio None),
    never divided.
    """

    c: int
    numerator: int
    denominator: int
    ratio: Optional[Fraction]

    @property
    def is_empty(self) -> bool:
        return self.denominator == 0


@dataclass(frozen=True)
class AverageSeries:
    points: tuple[AveragePoint, ...]

    def ratios(self) -> list[Optional[Fraction]]:
        return [pt.ratio for pt in self.points]

    def strictly_increasing(self) -> bool:
        """Trend verdict over the nonempty points; divergent limits are only
        ever reported as a finite series plus this flag, never as a value."""
        ratios = [pt.ratio for pt in self.points if pt.ratio is not None]
        return len(ratios) >= 2 and all(a < b for a, b in zip(ratios, ratios[1:]))


def _prime_divisors(n: int) -> list[int]:
    """Distinct prime divisors of n >= 2 by trial division, ascending."""
    if n > FACTOR_BUDGET:
        raise ResourceError(f"factoring {n} exceeds the {FACTOR_BUDGET} budget")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _condition_primes(condition: AvgCondition, c: int, p_min: int) -> list[int]:
    """The primes appearing in the average's sums at cutoff c."""
    if condition is AvgCondition.P_DIVIDES_C:
        return [p for p in _prime_divisors(c) if p >= p_min]
    if condition is AvgCondition.P_DIVIDES_C_PLUS_1:
        return [p for p in _prime_divisors(c + 1) if p >= p_min]
    if condition is AvgCondition.P_DIVIDES_C_MINUS_1:
        if c - 1 < 2:
            return []
        return [p for p in _prime_divisors(c - 1) if p >= p_min]
    if c > SWEEP_BUDGET:
        raise ResourceError(f"sweeping all primes up to {c} exceeds {SWEEP_BUDGET}")
    primes = _primes_up_to(c)
    lo = bisect_left(primes, p_min)
    if condition is AvgCondition.P_NOT_DIVIDES_C:
        return [p for p in primes[lo:] if c % p != 0]
    return [p for p in primes[lo:] if c % p not in (0, 1, p - 1)]


def partial_average(query: AverageQuery) -> AverageSeries:
    """For each cutoff c: sum of the count over the selected primes, divided
    by how many primes were selected."""
    points = []
    counts_cache: dict[int, tuple[int, ...]] = {}
    for c in query.cs:
        if c < query.p_min:
            raise DomainError(f"cutoff {c} is below the family's smallest prime {query.p_min}")
        numerator = 0
        denominator = 0
        for p in _condition_primes(query.condition, c, query.p_min):
            table = counts_cache.get(p)
            if table is None:
                table = residue_count_table(p, query.family, query.interpretation)
                counts_cache[p] = table
            numerator += table[c % p]
            denominator += 1
        ratio = Fraction(numerator, denominator) if denominator else None
        points.append(AveragePoint(c, numerator, denominator, ratio))
    return AverageSeries(points=tuple(points))


def odd_primorials(k_max: int) -> list[int]:
    """c_k = 3 * 5 * ... * p_k (product of the first k odd primes), k = 2..k_max."""
    odd_primes: list[int] = []
    limit = 64
    while len(odd_primes) < k_max:
        odd_primes = primes_in_range(3, limit)
        limit *= 2
    out = []
    c = 1
    for k, p in enumerate(odd_primes[:k_max], start=1):
        c *= p
        if c > FACTOR_BUDGET:
            raise ResourceError(f"primorial for k = {k} exceeds the {FACTOR_BUDGET} budget")
        if k >= 2:
            out.append(c)
    return out


def divergence_series(
    family: DegreeSpec,
    k_max: int,
    interpretation: Interpretation = Interpretation.ROOTS_LE2,
) -> AverageSeries:
    """The p-divides-c average along the odd-primorial subsequence.

    Each ratio is the mean of the counts at the first k odd primes; for the
    base-p family the summand at each p is p itself, so the series grows
    without bound.
    """
    if k_max < 2:
        raise DomainError(f"need k_max >= 2, got {k_max}")
    cs = tuple(odd_primorials(k_max))
    query = AverageQuery(family, AvgCondition.P_DIVIDES_C, interpretation, cs)
    return partial_average(query)


# ---------------------------------------------------------------------------
# densities


class PredicateKind(Enum):
    DIVIDES = "divides"
    DIVIDES_PLUS_1 = "divides-plus1"
    DIVIDES_MINUS_1 = "divides-minus1"
    COUNT_EQUALS = "count-eq"


@dataclass(frozen=True)
class DensityPredicate:
    """Pair predicate on (p, c): a divisibility condition, or a condition on
    the computed count at residue c mod p.  negate flips the result."""

    kind: PredicateKind
    value: int = 0
    interpretation: Interpretation = Interpretation.ROOTS_LE2
    negate: bool = False

    def negated(self) -> "DensityPredicate":
        return DensityPredicate(self.kind, self.value, self.interpretation, not self.negate)


@dataclass(frozen=True)
class DensityQuery:
    """Population {(p, c) : 1 <= c <= cutoff, p prime, p_min <= p <= c}."""

    family: DegreeSpec
    predicate: DensityPredicate
    cutoff: int
    p_min: Optional[int] = None

    @property
    def effective_p_min(self) -> int:
        return self.p_min if self.p_min is not None else self.family.min_prime


@dataclass(frozen=True)
class DensityPoint:
    cutoff: int
    hits: int
    population: int
    ratio: Fraction


@dataclass(frozen=True)
class DensityResult:
    """Density at the full cutoff plus intermediate cutoffs for trend
    inspection (quarter and half, when nonempty)."""

    points: tuple[DensityPoint, ...]

    @property
    def ratio(self) -> Fraction:
        return self.points[-1].ratio


def density(query: DensityQuery) -> DensityResult:
    C = query.cutoff
    p_min = query.effective_p_min
    if C < p_min:
        raise DomainError(f"population is empty: cutoff {C} < p_min {p_min}")
    if C > 10**5:
        raise ResourceError(f"density cutoff {C} exceeds the 10^5 pair-sweep budget")
    primes = primes_in_range(p_min, C)
    pred = query.predicate
    tables: dict[int, tuple[int, ...]] = {}

    def holds(p: int, c: int) -> bool:
        if pred.kind is PredicateKind.DIVIDES:
            result = c % p == 0
        elif pred.kind is PredicateKind.DIVIDES_PLUS_1:
            result = (c + 1) % p == 0
        elif pred.kind is PredicateKind.DIVIDES_MINUS_1:
            result = (c - 1) % p == 0
        else:
            table = tables.get(p)
            if table is None:
                table = residue_count_table(p, query.family, pred.interpretation)
                tables[p] = table
            result = table[c % p] == pred.value
        return result != pred.negate

    snapshots = sorted(s for s in {C // 4, C // 2, C} if s >= 1)
    points = []
    hits = 0
    population = 0
    snap_iter = iter(snapshots)
    next_snap = next(snap_iter)
    for c in range(1, C + 1):
        for p in primes:
            if p > c:
                break
            population += 1
            if holds(p, c):
                hits += 1
        while next_snap is not None and c == next_snap:
            if population:
                points.append(DensityPoint(c, hits, population, Fraction(hits, population)))
            next_snap = next(snap_iter, None)
    if not points or points[-1].cutoff != C:
        raise DomainError("population is empty at the requested cutoff")
    return DensityResult(points=tuple(points))


# ---------------------------------------------------------------------------
# series rendering (shared by the CLI for avg and density output)

SERIES_HEADER = "cutoff_or_c,numerator,denominator,ratio_num,ratio_den"


def series_rows(series: "AverageSeries | DensityResult") -> list[tuple[str, str, str, str, str]]:
    rows = []
    if isinstance(series, AverageSeries):
        for pt in series.points:
            if pt.ratio is None:
                rows.append((str(pt.c), str(pt.numerator), str(pt.denominator), "", ""))
            else:
                rows.append(
                    (
                        str(pt.c),
                        str(pt.numerator),
                        str(pt.denominator),
                        str(pt.ratio.numerator),
                        str(pt.ratio.denominator),
                    )
                )
    else:
        for dpt in series.points:
            rows.append(
                (
                    str(dpt.cutoff),
                    str(dpt.hits),
                    str(dpt.population),
                    str(dpt.ratio.numerator),
                    str(dpt.ratio.denominator),
                )
            )
    return rows
