"""Machine-checkable catalog of the claimed 2-periodic point counts, plus a
brute-force verifier that sweeps each claim's parameter domain cell by cell.

Every claim is one branch of a published counting statement for the families
z^(p^ell) + c and z^((p-1)^ell) + c over Z/pZ and F_p[t]/(pi): a coefficient
congruence class together with a predicted count (an exact value, the ring
prime p itself, or a bounded range in ell).  The verifier recomputes each
cell exhaustively and reports matches and mismatches as data; a mismatch is
a report row, never an execution failure, because documenting where brute
force disagrees with the claimed counts is the point of the exercise.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .dynamics import DegreeBase, DegreeSpec, Interpretation, counting_function
from .errors import DomainError, UsageError
from .rings import (
    FpPoly,
    RingKind,
    RingSpec,
    enumerate_monic_irreducibles,
    primes_in_range,
)


class CoeffClass(Enum):
    """Congruence class of the coefficient c modulo the ring's prime/modulus.

    The four classes partition the residues (for p = 3 the plus-one and
    minus-one classes exhaust the nonzero residues, leaving OTHER empty).
    """

    DIVISIBLE = "divisible"
    PLUS_ONE = "plus1"
    MINUS_ONE = "minus1"
    OTHER = "other"


class EllDomain(Enum):
    """Which exponents ell a claim covers; IN_1P / NOT_1P couple ell to the
    cell's prime p."""

    ONE = "l1"
    IN_1P = "l-in-1p"
    NOT_1P = "l-not-1p"
    ANY = "l-any"

    def admits(self, ell: int, p: int) -> bool:
        if self is EllDomain.ONE:
            return ell == 1
        if self is EllDomain.IN_1P:
            return ell in (1, p)
        if self is EllDomain.NOT_1P:
            return ell not in (1, p)
        return True


class PredictionKind(Enum):
    EXACT = "exact"
    SYMBOLIC_P = "symbolic-p"
    INTERVAL = "interval"


Expr = Union[int, str]  # literal, or the tokens "p" / "ell"


def _eval_expr(expr: Expr, p: int, ell: int) -> int:
    if expr == "p":
        return p
    if expr == "ell":
        return ell
    return int(expr)


@dataclass(frozen=True)
class Prediction:
    """Predicted count: Exact(v), SymbolicP (the ring prime), or an
    Interval(lo, hi) whose bounds may be expressions in p and ell."""

    kind: PredictionKind
    value: int = 0
    lo: Expr = 0
    hi: Expr = 0

    @classmethod
    def exact(cls, value: int) -> "Prediction":
        return cls(PredictionKind.EXACT, value=value)

    @classmethod
    def symbolic_p(cls) -> "Prediction":
        return cls(PredictionKind.SYMBOLIC_P)

    @classmethod
    def interval(cls, lo: Expr, hi: Expr) -> "Prediction":
        return cls(PredictionKind.INTERVAL, lo=lo, hi=hi)

    def bounds(self, p: int, ell: int) -> tuple[int, int]:
        if self.kind is PredictionKind.EXACT:
            return self.value, self.value
        if self.kind is PredictionKind.SYMBOLIC_P:
            return p, p
        lo = _eval_expr(self.lo, p, ell)
        hi = _eval_expr(self.hi, p, ell)
        if lo > hi:
            raise DomainError(f"empty predicted interval [{lo}, {hi}]")
        return lo, hi

    def matches(self, computed: int, p: int, ell: int) -> bool:
        lo, hi = self.bounds(p, ell)
        return lo <= computed <= hi

    def render(self, p: int, ell: int) -> str:
        lo, hi = self.bounds(p, ell)
        return str(lo) if lo == hi else f"{lo}..{hi}"


@dataclass(frozen=True)
class ClaimRecord:
    """One claimed counting branch: parameter domain, coefficient class,
    predicted count, and the source label of the statement it encodes."""

    id: str
    family: DegreeBase
    ell_domain: EllDomain
    ring_kind: RingKind
    coeff_class: CoeffClass
    prediction: Prediction
    citation: str

    @property
    def p_min(self) -> int:
        return 3 if self.family is DegreeBase.P else 5


@dataclass(frozen=True)
class VerificationCell:
    """One (claim, p, ell, m, c) comparison; m = 0 marks prime-field cells."""

    claim_id: str
    p: int
    ell: int
    m: int
    c_class: str
    c_rep: str
    interpretation: str
    claimed: str
    computed: int
    match: bool


@dataclass(frozen=True)
class SkipNote:
    claim_id: str
    reason: str


@dataclass(frozen=True)
class VerificationReport:
    cells: tuple[VerificationCell, ...]
    skips: tuple[SkipNote, ...] = ()

    @property
    def match_count(self) -> int:
        return sum(1 for cell in self.cells if cell.match)

    @property
    def mismatch_count(self) -> int:
        return sum(1 for cell in self.cells if not cell.match)

    def summary_line(self) -> str:
        return (
            f"cells={len(self.cells)} matches={self.match_count} "
            f"mismatches={self.mismatch_count}"
        )


def _zero_branches(
    prefix: str, family: DegreeBase, ell_domain: EllDomain, ring_kind: RingKind, citation: str
) -> list[ClaimRecord]:
    """The "otherwise the count is 0" branch, split over the three
    non-divisible coefficient classes so every residue is checked."""
    return [
        ClaimRecord(
            id=f"{prefix}-{cls.value}",
            family=family,
            ell_domain=ell_domain,
            ring_kind=ring_kind,
            coeff_class=cls,
            prediction=Prediction.exact(0),
            citation=citation,
        )
        for cls in (CoeffClass.PLUS_ONE, CoeffClass.MINUS_ONE, CoeffClass.OTHER)
    ]


def claim_catalog() -> tuple[ClaimRecord, ...]:
    """The full catalog: for each of the four (family, ring) groups, the
    ell = 1 statement and the general-ell statement, one record per
    coefficient-class branch, zero-prediction branches included."""
    records: list[ClaimRecord] = []

    for ring_kind, ring_tag, mod_word in (
        (RingKind.PRIME_FIELD, "zp", "p"),
        (RingKind.QUOTIENT_FIELD, "fpt", "pi"),
    ):
        src = "Thm 2.1/2.2" if ring_kind is RingKind.PRIME_FIELD else "Thm 4.1/4.2"
        src_gen = "Thm 2.3" if ring_kind is RingKind.PRIME_FIELD else "Thm 4.3"
        records.append(
            ClaimRecord(
                id=f"{ring_tag}-ppow-l1-divisible",
                family=DegreeBase.P,
                ell_domain=EllDomain.ONE,
                ring_kind=ring_kind,
                coeff_class=CoeffClass.DIVISIBLE,
                prediction=Prediction.symbolic_p(),
                citation=f"{src}: count = p for c = 0 (mod {mod_word}), ell = 1",
            )
        )
        records.extend(
            _zero_branches(
                f"{ring_tag}-ppow-l1",
                DegreeBase.P,
                EllDomain.ONE,
                ring_kind,
                f"{src}: count = 0 for c != 0 (mod {mod_word}), ell = 1",
            )
        )
        records.append(
            ClaimRecord(
                id=f"{ring_tag}-ppow-gen-divisible-unit-ell",
                family=DegreeBase.P,
                ell_domain=EllDomain.IN_1P,
                ring_kind=ring_kind,
                coeff_class=CoeffClass.DIVISIBLE,
                prediction=Prediction.symbolic_p(),
                citation=f"{src_gen}: count = p for c = 0 (mod {mod_word}), ell in {{1, p}}",
            )
        )
        records.append(
            ClaimRecord(
                id=f"{ring_tag}-ppow-gen-divisible-mid-ell",
                family=DegreeBase.P,
                ell_domain=EllDomain.NOT_1P,
                ring_kind=ring_kind,
                coeff_class=CoeffClass.DIVISIBLE,
                prediction=Prediction.interval(2, "ell"),
                citation=f"{src_gen}: 2 <= count <= ell for c = 0 (mod {mod_word}), ell not in {{1, p}}",
            )
        )
        records.extend(
            _zero_branches(
                f"{ring_tag}-ppow-gen",
                DegreeBase.P,
                EllDomain.ANY,
                ring_kind,
                f"{src_gen}: count = 0 for c != 0 (mod {mod_word}), any ell",
            )
        )

    for ring_kind, ring_tag, mod_word in (
        (RingKind.PRIME_FIELD, "zp", "p"),
        (RingKind.QUOTIENT_FIELD, "fpt", "pi"),
    ):
        src = "Thm 3.1/3.2" if ring_kind is RingKind.PRIME_FIELD else "Thm 5.1/5.2"
        src_gen = "Thm 3.3" if ring_kind is RingKind.PRIME_FIELD else "Thm 5.3"
        for stmt_tag, ell_domain, source in (
            ("l1", EllDomain.ONE, src),
            ("gen", EllDomain.ANY, src_gen),
        ):
            suffix = "ell = 1" if ell_domain is EllDomain.ONE else "any ell"
            records.extend(
                [
                    ClaimRecord(
                        id=f"{ring_tag}-unitpow-{stmt_tag}-divisible",
                        family=DegreeBase.P_MINUS_1,
                        ell_domain=ell_domain,
                        ring_kind=ring_kind,
                        coeff_class=CoeffClass.DIVISIBLE,
                        prediction=Prediction.exact(2),
                        citation=f"{source}: count = 2 for c = 0 (mod {mod_word}), {suffix}",
                    ),
                    ClaimRecord(
                        id=f"{ring_tag}-unitpow-{stmt_tag}-plus1",
                        family=DegreeBase.P_MINUS_1,
                        ell_domain=ell_domain,
                        ring_kind=ring_kind,
                        coeff_class=CoeffClass.PLUS_ONE,
                        prediction=Prediction.exact(1),
                        citation=f"{source}: count = 1 for c = +1 (mod {mod_word}), {suffix}",
                    ),
                    ClaimRecord(
                        id=f"{ring_tag}-unitpow-{stmt_tag}-minus1",
                        family=DegreeBase.P_MINUS_1,
                        ell_domain=ell_domain,
                        ring_kind=ring_kind,
                        coeff_class=CoeffClass.MINUS_ONE,
                        prediction=Prediction.exact(1),
                        citation=f"{source}: count = 1 for c = -1 (mod {mod_word}), {suffix}",
                    ),
                    ClaimRecord(
                        id=f"{ring_tag}-unitpow-{stmt_tag}-other",
                        family=DegreeBase.P_MINUS_1,
                        ell_domain=ell_domain,
                        ring_kind=ring_kind,
                        coeff_class=CoeffClass.OTHER,
                        prediction=Prediction.exact(0),
                        citation=f"{source}: count = 0 for c != 0, +1, -1 (mod {mod_word}), {suffix}",
                    ),
                ]
            )

    ids = [record.id for record in records]
    if len(set(ids)) != len(ids):
        raise AssertionError("claim catalog ids are not unique")
    return tuple(records)


def _class_residues(coeff_class: CoeffClass, p: int) -> list[int]:
    """Integer residue representatives of a coefficient class mod p."""
    if coeff_class is CoeffClass.DIVISIBLE:
        return [0]
    if coeff_class is CoeffClass.PLUS_ONE:
        return [1]
    if coeff_class is CoeffClass.MINUS_ONE:
        return [p - 1]
    return [r for r in range(2, p - 1)]


def _class_reps(coeff_class: CoeffClass, ring: RingSpec) -> list:
    """Coefficient representatives of a class in the given ring.

    In a prime field: one per residue.  In a quotient field: the residues of
    F_p embedded as constants, and for the OTHER class additionally one
    non-constant representative (t) once deg(pi) >= 2; the classes 0, +1, -1
    are read modulo pi exactly as written, so their representatives stay
    constant.
    """
    reps = [ring.element(r) for r in _class_residues(coeff_class, ring.p.value)]
    if (
        ring.kind is RingKind.QUOTIENT_FIELD
        and coeff_class is CoeffClass.OTHER
        and ring.modulus is not None
        and ring.modulus.degree_m >= 2
    ):
        reps.append(ring.element(FpPoly.t(ring.p.value)))
    return reps


@lru_cache(maxsize=None)
def _quotient_rings(p: int, m: int) -> tuple[RingSpec, ...]:
    return tuple(
        RingSpec.quotient_field(p, pi) for pi in enumerate_monic_irreducibles(p, m)
    )


def _claim_cells(
    claim: ClaimRecord,
    primes: Sequence[int],
    ells: Sequence[int],
    ms: Sequence[int],
    interpretation: Interpretation,
) -> list[VerificationCell]:
    family_cache: dict[int, DegreeSpec] = {}
    cells: list[VerificationCell] = []
    for p in primes:
        if p < claim.p_min:
            continue
        if claim.ring_kind is RingKind.PRIME_FIELD:
            rings = [(0, RingSpec.prime_field(p))]
        else:
            rings = [(m, ring) for m in ms for ring in _quotient_rings(p, m)]
        for ell in ells:
            if not claim.ell_domain.admits(ell, p):
                continue
            family = family_cache.setdefault(ell, DegreeSpec(claim.family, ell))
            for m, ring in rings:
                for c in _class_reps(claim.coeff_class, ring):
                    computed = counting_function(family, interpretation, ring, c)
                    cells.append(
                        VerificationCell(
                            claim_id=claim.id,
                            p=p,
                            ell=ell,
                            m=m,
                            c_class=claim.coeff_class.value,
                            c_rep=c.render(),
                            interpretation=interpretation.value,
                            claimed=claim.prediction.render(p, ell),
                            computed=computed,
                            match=claim.prediction.matches(computed, p, ell),
                        )
                    )
    return cells


def _skip_reason(
    claim: ClaimRecord, primes: Sequence[int], ells: Sequence[int]
) -> str:
    admissible = [p for p in primes if p >= claim.p_min]
    if not admissible:
        return f"requires p >= {claim.p_min}"
    if not any(claim.ell_domain.admits(ell, p) for p in admissible for ell in ells):
        return f"no admissible ell in range for domain {claim.ell_domain.value}"
    return "no coefficient representatives in the swept range"


def verify_claim(
    claim: ClaimRecord,
    p_range: Sequence[int],
    ell_range: Sequence[int],
    m_range: Sequence[int],
    interpretation: Interpretation,
) -> VerificationReport:
    """Brute-force one claim across its admissible cells.

    Raises DomainError when the claim's hypotheses exclude the entire range.
    """
    primes = sorted(p for p in p_range if p >= 3)
    cells = _claim_cells(claim, primes, sorted(ell_range), sorted(m_range), interpretation)
    if not cells:
        raise DomainError(f"claim {claim.id}: {_skip_reason(claim, primes, sorted(ell_range))}")
    return VerificationReport(cells=tuple(cells))


def verify_all(
    p_max: int,
    ell_max: int,
    m_max: int,
    interpretation: Interpretation,
) -> VerificationReport:
    """Run the whole catalog over primes 3..p_max, ell 1..ell_max, m 1..m_max.

    Claims whose hypotheses exclude the entire range become skip notes
    instead of errors, so one sweep always yields one report.
    """
    if p_max < 3 or ell_max < 1 or m_max < 1:
        raise UsageError("need p_max >= 3, ell_max >= 1, m_max >= 1")
    primes = primes_in_range(3, p_max)
    ells = list(range(1, ell_max + 1))
    ms = list(range(1, m_max + 1))
    cells: list[VerificationCell] = []
    skips: list[SkipNote] = []
    for claim in claim_catalog():
        claim_cells = _claim_cells(claim, primes, ells, ms, interpretation)
        if claim_cells:
            cells.extend(claim_cells)
        else:
            skips.append(SkipNote(claim.id, _skip_reason(claim, primes, ells)))
    return VerificationReport(cells=tuple(cells), skips=tuple(skips))


# ---------------------------------------------------------------------------
# report rendering

CSV_HEADER = "claim_id,p,ell,m,c_class,c_rep,interpretation,claimed,computed,match"


class ReportFormat(Enum):
    CSV = "csv"
    JSON = "json"


def render_report(report: VerificationReport, fmt: ReportFormat) -> str:
    if fmt is ReportFormat.CSV:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for cell in report.cells:
            writer.writerow(
                [
                    cell.claim_id,
                    cell.p,
                    cell.ell,
                    cell.m,
                    cell.c_class,
                    cell.c_rep,
                    cell.interpretation,
                    cell.claimed,
                    cell.computed,
                    "true" if cell.match else "false",
                ]
            )
        return out.getvalue()
    payload = {
        "cells": [
            {
                "claim_id": cell.claim_id,
                "p": cell.p,
                "ell": cell.ell,
                "m": cell.m,
                "c_class": cell.c_class,
                "c_rep": cell.c_rep,
                "interpretation": cell.interpretation,
                "claimed": cell.claimed,
                "computed": cell.computed,
                "match": cell.match,
            }
            for cell in report.cells
        ],
        "skips": [{"claim_id": s.claim_id, "reason": s.reason} for s in report.skips],
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_report(text: str, fmt: ReportFormat) -> VerificationReport:
    """Inverse of render_report (CSV drops skip notes by construction)."""
    if fmt is ReportFormat.CSV:
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != CSV_HEADER.split(","):
            raise UsageError("report header does not match the expected schema")
        cells = [
            VerificationCell(
                claim_id=row[0],
                p=int(row[1]),
                ell=int(row[2]),
                m=int(row[3]),
                c_class=row[4],
                c_rep=row[5],
                interpretation=row[6],
                claimed=row[7],
                computed=int(row[8]),
                match=row[9] == "true",
            )
            for row in rows[1:]
        ]
        return VerificationReport(cells=tuple(cells))
    payload = json.loads(text)
    cells = [VerificationCell(**cell) for cell in payload["cells"]]
    skips = [SkipNote(**skip) for skip in payload.get("skips", [])]
    return VerificationReport(cells=tuple(cells), skips=tuple(skips))


def iter_claims(ids: Iterable[str]) -> list[ClaimRecord]:
    """Look up catalog records by id; unknown ids raise UsageError."""
    catalog = {record.id: record for record in claim_catalog()}
    out = []
    for claim_id in ids:
        if claim_id not in catalog:
            raise UsageError(f"unknown claim id {claim_id!r}")
        out.append(catalog[claim_id])
    return out
