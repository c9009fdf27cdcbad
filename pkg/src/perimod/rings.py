"""Exact arithmetic in Z/pZ, in F_p[t], and in the quotient fields F_p[t]/(pi).

Everything here is immutable and pure: ring elements are frozen dataclasses,
operations return fully reduced canonical representatives, and re-reducing a
result is always the identity.  Polynomials are stored as tuples of residues
in ascending powers of t with trailing zeros trimmed (the zero polynomial is
the empty tuple).

Elements of a ring are also addressable by a dense integer index (0 <= i < q,
digits of i in base p giving the coefficient vector).  The sweep-heavy callers
in the dynamics module work on indices to keep exhaustive scans cheap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence, Union

from .errors import DomainError, ResourceError, UsageError

DEFAULT_BRUTE_BUDGET = 100_000
ENUMERATION_BUDGET = 10**6

BUDGET_ENV_VAR = "PERIMOD_BUDGET"


def brute_force_budget() -> int:
    """Maximum ring cardinality an exhaustive scan may visit.

    Defaults to 10^5 elements; the PERIMOD_BUDGET environment variable
    overrides it.
    """
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BRUTE_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise UsageError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise UsageError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
    return value


def check_budget(size: int, what: str) -> None:
    budget = brute_force_budget()
    if size > budget:
        raise ResourceError(f"{what} needs {size} elements, budget is {budget}")


# ---------------------------------------------------------------------------
# primes


def is_prime_int(n: int) -> bool:
    """Trial-division primality test; adequate at desk scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p <= hi, ascending (simple sieve)."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    p = 2
    while p * p <= hi:
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
        p += 1
    return [i for i in range(max(lo, 2), hi + 1) if sieve[i]]


@dataclass(frozen=True)
class Prime:
    """An odd prime p >= 3 (the only moduli the counting results treat)."""

    value: int

    def __post_init__(self) -> None:
        if not isinstance(self.value, int) or self.value < 3 or self.value % 2 == 0:
            raise UsageError(f"modulus must be an odd prime >= 3, got {self.value!r}")
        if not is_prime_int(self.value):
            raise UsageError(f"{self.value} is not prime")

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Prime({self.value})"


# ---------------------------------------------------------------------------
# polynomials over F_p


@dataclass(frozen=True)
class FpPoly:
    """A polynomial over F_p in canonical form.

    coeffs[i] is the coefficient of t^i; the last entry is nonzero unless the
    tuple is empty (the zero polynomial).  The strict constructor rejects
    non-canonical input; use FpPoly.make to reduce arbitrary coefficients.
    """

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.p < 2:
            raise UsageError(f"coefficient modulus must be >= 2, got {self.p}")
        if self.coeffs and self.coeffs[-1] == 0:
            raise UsageError("non-canonical polynomial: trailing zero coefficient")
        if any(not (0 <= a < self.p) for a in self.coeffs):
            raise UsageError(f"coefficients must lie in [0, {self.p})")

    @classmethod
    def make(cls, p: int, coeffs: Sequence[int]) -> "FpPoly":
        """Reduce coefficients mod p and trim trailing zeros."""
        cs = [a % p for a in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(p, tuple(cs))

    @classmethod
    def zero(cls, p: int) -> "FpPoly":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "FpPoly":
        return cls(p, (1,))

    @classmethod
    def const(cls, p: int, a: int) -> "FpPoly":
        return cls.make(p, (a,))

    @classmethod
    def t(cls, p: int) -> "FpPoly":
        return cls(p, (0, 1))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check_same_p(self, other: "FpPoly") -> None:
        if self.p != other.p:
            raise UsageError(f"mixed coefficient moduli: {self.p} vs {other.p}")

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._check_same_p(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FpPoly.make(self.p, [(x + y) % self.p for x, y in zip(a, b)])

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        self._check_same_p(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FpPoly.make(self.p, [(x - y) % self.p for x, y in zip(a, b)])

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        self._check_same_p(other)
        if self.is_zero or other.is_zero:
            return FpPoly.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % self.p
        return FpPoly.make(self.p, out)

    def scale(self, a: int) -> "FpPoly":
        return FpPoly.make(self.p, [(a * c) % self.p for c in self.coeffs])

    def monic(self) -> "FpPoly":
        """Monic normalization; the zero polynomial stays zero."""
        if self.is_zero or self.is_monic:
            return self
        inv = pow(self.coeffs[-1], self.p - 2, self.p)
        return self.scale(inv)

    def divmod(self, divisor: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        """Long division: self = q * divisor + r with deg r < deg divisor."""
        self._check_same_p(divisor)
        if divisor.is_zero:
            raise DomainError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        ddeg = divisor.degree
        if self.degree < ddeg:
            return FpPoly.zero(p), self
        inv_lead = pow(divisor.coeffs[-1], p - 2, p)
        quot = [0] * (self.degree - ddeg + 1)
        for shift in range(self.degree - ddeg, -1, -1):
            coef = (rem[shift + ddeg] * inv_lead) % p
            if coef:
                quot[shift] = coef
                for i, b in enumerate(divisor.coeffs):
                    rem[shift + i] = (rem[shift + i] - coef * b) % p
        return FpPoly.make(p, quot), FpPoly.make(p, rem)

    def __mod__(self, divisor: "FpPoly") -> "FpPoly":
        return self.divmod(divisor)[1]

    def __repr__(self) -> str:
        return f"FpPoly(p={self.p}, {format_poly(self)!r})"


def format_poly(f: FpPoly) -> str:
    """Comma-separated ascending coefficients; the zero polynomial is "0"."""
    if f.is_zero:
        return "0"
    return ",".join(str(c) for c in f.coeffs)


def parse_poly(text: str, p: int) -> FpPoly:
    """Parse the comma-coefficient format, e.g. "1,0,1" -> 1 + t^2.

    Coefficients outside [0, p) are rejected rather than reduced.
    """
    parts = text.split(",")
    coeffs = []
    for part in parts:
        part = part.strip()
        try:
            a = int(part)
        except ValueError as exc:
            raise UsageError(f"bad polynomial coefficient {part!r} in {text!r}") from exc
        if not (0 <= a < p):
            raise UsageError(f"coefficient {a} out of range [0, {p}) in {text!r}")
        coeffs.append(a)
    return FpPoly.make(p, coeffs)


def poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic greatest common divisor; gcd(a, 0) = monic(a), gcd(0, 0) = 0."""
    a._check_same_p(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def _poly_pow_mod(base: FpPoly, exponent: int, modulus: FpPoly) -> FpPoly:
    """base^exponent mod modulus by square-and-multiply (modulus any nonzero poly)."""
    if modulus.is_zero:
        raise DomainError("power modulus must be nonzero")
    result = FpPoly.one(base.p)
    acc = base % modulus
    e = exponent
    while e > 0:
        if e & 1:
            result = (result * acc) % modulus
        acc = (acc * acc) % modulus
        e >>= 1
    return result % modulus


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending."""
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


def is_irreducible(f: FpPoly) -> bool:
    """Rabin test: f of degree n over F_p is irreducible iff t^(p^n) = t (mod f)
    and gcd(t^(p^(n/r)) - t, f) = 1 for every prime r dividing n.
    """
    n = f.degree
    if f.is_zero or n == 0:
        raise DomainError("irreducibility is undefined for constants and zero")
    if n == 1:
        return True
    p = f.p
    f = f.monic()
    t = FpPoly.t(p)
    # t^(p^k) mod f by iterated p-th powering (x -> x^p is a ring map mod f)
    needed = {n // r for r in _prime_factors(n)}
    frob = t
    powers: dict[int, FpPoly] = {}
    for k in range(1, n + 1):
        frob = _poly_pow_mod(frob, p, f)
        if k in needed:
            powers[k] = frob
    if frob != t % f:
        return False
    for k in needed:
        if poly_gcd(powers[k] - t, f).degree != 0:
            return False
    return True


@lru_cache(maxsize=None)
def _monic_irreducibles(p: int, m: int) -> tuple[FpPoly, ...]:
    out = []
    for n in range(p**m):
        lower = []
        v = n
        for _ in range(m):
            lower.append(v % p)
            v //= p
        f = FpPoly(p, tuple(lower) + (1,))
        if is_irreducible(f):
            out.append(f)
    return tuple(out)


def enumerate_monic_irreducibles(p: Union[Prime, int], m: int) -> list[FpPoly]:
    """All monic irreducible polynomials of degree exactly m over F_p.

    Ordered by the base-p value of the coefficient vector (so for m = 1 this
    is t, t+1, ..., t+(p-1)).
    """
    pv = int(p)
    if m < 1:
        raise DomainError(f"degree must be >= 1, got {m}")
    if pv**m > ENUMERATION_BUDGET:
        raise ResourceError(f"enumerating degree-{m} monics over F_{pv} exceeds {ENUMERATION_BUDGET}")
    return list(_monic_irreducibles(pv, m))


# ---------------------------------------------------------------------------
# rings and their elements


@dataclass(frozen=True)
class PolyModulus:
    """An irreducible monic modulus pi, carrying its degree m >= 1."""

    pi: FpPoly
    degree_m: int

    def __post_init__(self) -> None:
        if not self.pi.is_monic:
            raise UsageError(f"modulus must be monic: {format_poly(self.pi)}")
        if self.degree_m != self.pi.degree or self.degree_m < 1:
            raise UsageError("stated degree does not match the modulus polynomial")
        if not is_irreducible(self.pi):
            raise UsageError(f"modulus {format_poly(self.pi)} is reducible over F_{self.pi.p}")

    @classmethod
    def of(cls, pi: FpPoly) -> "PolyModulus":
        return cls(pi, pi.degree)


class RingKind(Enum):
    PRIME_FIELD = "zp"
    QUOTIENT_FIELD = "fpt"


@dataclass(frozen=True)
class RingSpec:
    """Which finite ring is in play: Z/pZ, or F_p[t]/(pi)."""

    p: Prime
    modulus: "PolyModulus | None" = None

    @property
    def kind(self) -> RingKind:
        return RingKind.PRIME_FIELD if self.modulus is None else RingKind.QUOTIENT_FIELD

    @property
    def cardinality_q(self) -> int:
        if self.modulus is None:
            return self.p.value
        return self.p.value**self.modulus.degree_m

    @classmethod
    def prime_field(cls, p: Union[Prime, int]) -> "RingSpec":
        return cls(p if isinstance(p, Prime) else Prime(p))

    @classmethod
    def quotient_field(cls, p: Union[Prime, int], pi: FpPoly) -> "RingSpec":
        prime = p if isinstance(p, Prime) else Prime(p)
        if pi.p != prime.value:
            raise UsageError(f"modulus over F_{pi.p} does not match prime {prime.value}")
        return cls(prime, PolyModulus.of(pi))

    def element(self, value: "int | FpPoly | Sequence[int]") -> "RingElem":
        """Smart constructor: reduce an integer or polynomial into this ring."""
        p = self.p.value
        if self.modulus is None:
            if isinstance(value, FpPoly):
                if value.degree > 0:
                    raise UsageError("Z/p element cannot come from a non-constant polynomial")
                value = value.coeffs[0] if value.coeffs else 0
            elif not isinstance(value, int):
                raise UsageError(f"cannot build a Z/{p} element from {value!r}")
            return RingElem(self, value % p)
        if isinstance(value, int):
            poly = FpPoly.const(p, value)
        elif isinstance(value, FpPoly):
            if value.p != p:
                raise UsageError(f"polynomial over F_{value.p} does not belong to F_{p}[t]")
            poly = value
        else:
            poly = FpPoly.make(p, value)
        return RingElem(self, poly % self.modulus.pi)

    def zero(self) -> "RingElem":
        return self.element(0)

    def one(self) -> "RingElem":
        return self.element(1)

    # -- dense index machinery (base-p digits of the coefficient vector) --

    def index_of(self, e: "RingElem") -> int:
        if e.ring != self:
            raise UsageError("element belongs to a different ring")
        if self.modulus is None:
            return e.rep  # type: ignore[return-value]
        idx = 0
        for a in reversed(e.rep.coeffs):  # type: ignore[union-attr]
            idx = idx * self.p.value + a
        return idx

    def element_at(self, idx: int) -> "RingElem":
        p = self.p.value
        if self.modulus is None:
            return RingElem(self, idx % p)
        coeffs = []
        v = idx
        for _ in range(self.modulus.degree_m):
            coeffs.append(v % p)
            v //= p
        return RingElem(self, FpPoly.make(p, coeffs))

    def add_indices(self, i: int, j: int) -> int:
        p = self.p.value
        if self.modulus is None:
            return (i + j) % p
        out = 0
        mult = 1
        for _ in range(self.modulus.degree_m):
            out += ((i + j) % p) * mult
            i //= p
            j //= p
            mult *= p
        return out

    def describe(self) -> str:
        if self.modulus is None:
            return f"Z/{self.p.value}"
        return f"F_{self.p.value}[t]/({format_poly(self.modulus.pi)})"


@dataclass(frozen=True)
class RingElem:
    """A fully reduced element of a RingSpec.

    rep is an integer residue in [0, p) for a prime field, or an FpPoly of
    degree < m for a quotient field.  The strict constructor enforces this;
    RingSpec.element reduces arbitrary input.
    """

    ring: RingSpec
    rep: Union[int, FpPoly]

    def __post_init__(self) -> None:
        if self.ring.modulus is None:
            if not isinstance(self.rep, int) or not (0 <= self.rep < self.ring.p.value):
                raise UsageError(f"residue {self.rep!r} not reduced mod {self.ring.p.value}")
        else:
            if not isinstance(self.rep, FpPoly) or self.rep.p != self.ring.p.value:
                raise UsageError("quotient-field element must be an FpPoly over the same prime")
            if self.rep.degree >= self.ring.modulus.degree_m:
                raise UsageError("quotient-field element not reduced mod the ring modulus")

    def _require_same_ring(self, other: "RingElem") -> None:
        if self.ring != other.ring:
            raise UsageError("elements belong to different rings")

    def __add__(self, other: "RingElem") -> "RingElem":
        self._require_same_ring(other)
        if self.ring.modulus is None:
            return RingElem(self.ring, (self.rep + other.rep) % self.ring.p.value)
        return RingElem(self.ring, self.rep + other.rep)  # degree cannot grow

    def __sub__(self, other: "RingElem") -> "RingElem":
        self._require_same_ring(other)
        if self.ring.modulus is None:
            return RingElem(self.ring, (self.rep - other.rep) % self.ring.p.value)
        return RingElem(self.ring, self.rep - other.rep)

    def __mul__(self, other: "RingElem") -> "RingElem":
        self._require_same_ring(other)
        if self.ring.modulus is None:
            return RingElem(self.ring, (self.rep * other.rep) % self.ring.p.value)
        return RingElem(self.ring, (self.rep * other.rep) % self.ring.modulus.pi)

    @property
    def is_zero(self) -> bool:
        return self.rep == 0 if isinstance(self.rep, int) else self.rep.is_zero

    def render(self) -> str:
        """Text form: decimal residue, or comma-coefficient polynomial."""
        if isinstance(self.rep, int):
            return str(self.rep)
        return format_poly(self.rep)

    def __repr__(self) -> str:
        return f"RingElem({self.ring.describe()}, {self.render()})"


def mod_pow(base: RingElem, exponent: int, ring: RingSpec) -> RingElem:
    """base^exponent in the ring; exponent 0 gives 1 (also for base 0)."""
    if base.ring != ring:
        raise UsageError("base does not belong to the stated ring")
    if exponent < 0:
        raise UsageError(f"exponent must be nonnegative, got {exponent}")
    if ring.modulus is None:
        return RingElem(ring, pow(base.rep, exponent, ring.p.value))
    if exponent == 0:
        return ring.one()
    return RingElem(ring, _poly_pow_mod(base.rep, exponent, ring.modulus.pi))


def poly_mul_mod(a: FpPoly, b: FpPoly, modulus: PolyModulus) -> FpPoly:
    """a * b reduced modulo the irreducible modulus, in canonical form."""
    if a.p != modulus.pi.p or b.p != modulus.pi.p:
        raise UsageError("operands and modulus must share one prime")
    return (a * b) % modulus.pi


def ring_elements(ring: RingSpec) -> list[RingElem]:
    """All q elements exactly once, in index (base-p value) order."""
    q = ring.cardinality_q
    check_budget(q, f"enumerating {ring.describe()}")
    return [ring.element_at(i) for i in range(q)]


@lru_cache(maxsize=None)
def pow_index_table(ring: RingSpec, exponent: int) -> tuple[int, ...]:
    """Index table of z -> z^exponent over the whole ring (cached)."""
    q = ring.cardinality_q
    if ring.modulus is None:
        p = ring.p.value
        return tuple(pow(z, exponent, p) for z in range(q))
    return tuple(
        ring.index_of(mod_pow(ring.element_at(i), exponent, ring)) for i in range(q)
    )
