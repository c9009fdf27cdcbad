"""Ring-layer tests: every operation against an independent oracle."""

import pytest

from perimod.errors import DomainError, ResourceError, UsageError
from perimod.rings import (
    FpPoly,
    PolyModulus,
    Prime,
    RingSpec,
    enumerate_monic_irreducibles,
    format_poly,
    is_irreducible,
    mod_pow,
    parse_poly,
    poly_gcd,
    poly_mul_mod,
    ring_elements,
)

# ---------------------------------------------------------------------------
# oracles


def naive_pow(base, exponent, ring):
    """Repeated multiplication, the independent route mod_pow is checked against."""
    acc = ring.one()
    for _ in range(exponent):
        acc = acc * base
    return acc


def all_monics(p, degree):
    """Every monic polynomial of the given degree over F_p."""
    out = []
    for n in range(p**degree):
        coeffs = []
        v = n
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        out.append(FpPoly(p, tuple(coeffs) + (1,)))
    return out


def reducible_by_trial_division(f):
    """f (monic, degree >= 1) divisible by some lower-degree monic?"""
    for d in range(1, f.degree):
        for g in all_monics(f.p, d):
            if (f % g).is_zero:
                return True
    return False


def mobius_irreducible_count(p, m):
    """(1/m) * sum over d | m of mu(d) * p^(m/d)."""

    def mu(n):
        result = 1
        f = 2
        while f * f <= n:
            if n % f == 0:
                n //= f
                if n % f == 0:
                    return 0
                result = -result
            f += 1
        if n > 1:
            result = -result
        return result

    return sum(mu(d) * p ** (m // d) for d in range(1, m + 1) if m % d == 0) // m


def quotient_ring(p, coeffs):
    return RingSpec.quotient_field(p, FpPoly.make(p, coeffs))


# ---------------------------------------------------------------------------
# primes and construction


def test_prime_accepts_odd_primes():
    for p in (3, 5, 7, 11, 997):
        assert Prime(p).value == p


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 15, 21, -7])
def test_prime_rejects_non_odd_primes(bad):
    with pytest.raises(UsageError):
        Prime(bad)


def test_poly_canonical_form():
    assert FpPoly.make(3, [4, 3, 3]).coeffs == (1,)
    assert FpPoly.make(5, [0, 0, 0]).coeffs == ()
    assert FpPoly.make(5, [0, 0, 0]).is_zero
    with pytest.raises(UsageError):
        FpPoly(3, (1, 0))  # trailing zero is non-canonical
    with pytest.raises(UsageError):
        FpPoly(3, (5,))  # out-of-range residue


def test_poly_text_format_round_trip():
    assert format_poly(parse_poly("1,0,1", 3)) == "1,0,1"
    assert format_poly(FpPoly.zero(7)) == "0"
    assert parse_poly("0", 5).is_zero
    with pytest.raises(UsageError):
        parse_poly("1,5", 5)  # coefficient outside [0, p) is rejected, not reduced
    with pytest.raises(UsageError):
        parse_poly("1,x", 5)


def test_poly_modulus_requires_monic_irreducible():
    with pytest.raises(UsageError):
        PolyModulus.of(FpPoly.make(5, [1, 0, 1]))  # t^2+1 splits mod 5
    with pytest.raises(UsageError):
        PolyModulus.of(FpPoly.make(3, [1, 2]))  # not monic
    good = PolyModulus.of(FpPoly.make(3, [1, 0, 1]))
    assert good.degree_m == 2


# ---------------------------------------------------------------------------
# mod_pow


def test_mod_pow_examples():
    z5 = RingSpec.prime_field(5)
    assert mod_pow(z5.element(2), 4, z5).rep == 1
    z3 = RingSpec.prime_field(3)
    assert mod_pow(z3.element(0), 5, z3).rep == 0
    z7 = RingSpec.prime_field(7)
    assert mod_pow(z7.element(3), 9, z7).rep == 6  # frozen from naive_pow


def test_mod_pow_zero_exponent_is_one_even_for_zero_base():
    for ring in (RingSpec.prime_field(5), quotient_ring(3, [1, 0, 1])):
        assert mod_pow(ring.zero(), 0, ring) == ring.one()


def test_mod_pow_rejects_foreign_ring_and_negative_exponent():
    z5 = RingSpec.prime_field(5)
    z7 = RingSpec.prime_field(7)
    with pytest.raises(UsageError):
        mod_pow(z5.element(2), 3, z7)
    with pytest.raises(UsageError):
        mod_pow(z5.element(2), -1, z5)


def test_mod_pow_agrees_with_repeated_multiplication():
    rings = [
        RingSpec.prime_field(3),
        RingSpec.prime_field(7),
        quotient_ring(3, [1, 0, 1]),  # F_9
        quotient_ring(3, [1, 2, 0, 1]),  # F_27
        quotient_ring(5, [2, 0, 1]),  # F_25
        quotient_ring(7, [1, 0, 1]),  # F_49
    ]
    for ring in rings:
        for z in ring_elements(ring):
            acc = ring.one()
            for e in range(0, 2001):
                if e <= 120 or e % 97 == 0 or e == 2000:
                    assert mod_pow(z, e, ring) == acc
                acc = acc * z


def test_frobenius_fixed_field_fact():
    # z^q = z for every element of a field with q elements (q <= 81)
    rings = [
        quotient_ring(3, [1, 0, 1]),
        quotient_ring(3, [1, 2, 0, 1]),
        quotient_ring(3, [2, 1, 0, 0, 1]),  # F_81
        quotient_ring(5, [2, 0, 1]),
        quotient_ring(7, [1, 0, 1]),  # F_49
    ]
    for ring in rings:
        q = ring.cardinality_q
        for z in ring_elements(ring):
            assert mod_pow(z, q, ring) == z


# ---------------------------------------------------------------------------
# polynomial products, gcd, irreducibility


def test_poly_mul_mod_examples():
    pm = PolyModulus.of(FpPoly.make(3, [1, 0, 1]))
    t = FpPoly.t(3)
    assert poly_mul_mod(t, t, pm) == FpPoly.const(3, 2)  # t^2 = -1 = 2
    a = FpPoly.make(3, [2, 1])
    assert poly_mul_mod(a, FpPoly.one(3), pm) == a
    pm_t = PolyModulus.of(FpPoly.t(5))
    assert poly_mul_mod(FpPoly.make(5, [1, 1]), FpPoly.make(5, [2, 1]), pm_t) == FpPoly.const(5, 2)


def test_poly_mul_mod_rejects_mixed_primes():
    pm = PolyModulus.of(FpPoly.make(3, [1, 0, 1]))
    with pytest.raises(UsageError):
        poly_mul_mod(FpPoly.t(5), FpPoly.t(5), pm)


def test_poly_gcd_examples():
    assert poly_gcd(FpPoly.make(5, [4, 0, 1]), FpPoly.make(5, [4, 1])) == FpPoly.make(5, [4, 1])
    a = FpPoly.make(5, [3, 2, 4])
    assert poly_gcd(a, FpPoly.zero(5)) == a.monic()
    assert poly_gcd(FpPoly.zero(3), FpPoly.zero(3)).is_zero
    assert poly_gcd(FpPoly.make(3, [1, 0, 1]), FpPoly.make(3, [2, 0, 1])) == FpPoly.one(3)


def test_poly_gcd_against_common_divisor_enumeration():
    # gcd must be the highest-degree monic dividing both operands
    p = 3
    polys = [FpPoly.make(p, [1, 1]), FpPoly.make(p, [2, 1]), FpPoly.make(p, [1, 0, 1])]
    for a in polys:
        for b in polys:
            prod_a = a * FpPoly.make(p, [1, 2])
            prod_b = b * FpPoly.make(p, [1, 2])
            g = poly_gcd(prod_a, prod_b)
            assert (prod_a % g).is_zero and (prod_b % g).is_zero
            for d in range(g.degree + 1, min(prod_a.degree, prod_b.degree) + 1):
                for candidate in all_monics(p, d):
                    assert not ((prod_a % candidate).is_zero and (prod_b % candidate).is_zero)


def test_is_irreducible_examples():
    assert is_irreducible(FpPoly.make(3, [1, 0, 1])) is True
    assert is_irreducible(FpPoly.make(5, [1, 0, 1])) is False  # (t+2)(t+3)
    assert is_irreducible(FpPoly.t(7)) is True
    with pytest.raises(DomainError):
        is_irreducible(FpPoly.zero(3))
    with pytest.raises(DomainError):
        is_irreducible(FpPoly.const(3, 2))


def test_is_irreducible_matches_trial_division():
    for p in (3, 5):
        for degree in (2, 3, 4):
            for f in all_monics(p, degree):
                assert is_irreducible(f) == (not reducible_by_trial_division(f)), format_poly(f)


def test_enumerate_monic_irreducibles():
    assert [format_poly(f) for f in enumerate_monic_irreducibles(3, 1)] == ["0,1", "1,1", "2,1"]
    assert len(enumerate_monic_irreducibles(3, 2)) == 3
    assert len(enumerate_monic_irreducibles(5, 2)) == 10
    for p in (3, 5, 7):
        for m in (1, 2, 3, 4):
            found = enumerate_monic_irreducibles(p, m)
            assert len(found) == mobius_irreducible_count(p, m)
            assert len(set(found)) == len(found)
            assert all(f.degree == m and f.is_monic for f in found)


def test_enumerate_budget():
    with pytest.raises(ResourceError):
        enumerate_monic_irreducibles(101, 4)


# ---------------------------------------------------------------------------
# rings and elements


def test_ring_elements_examples():
    z3 = RingSpec.prime_field(3)
    assert [e.rep for e in ring_elements(z3)] == [0, 1, 2]
    f9 = quotient_ring(3, [1, 0, 1])
    elems = ring_elements(f9)
    assert len(elems) == 9 and len(set(elems)) == 9
    f5 = quotient_ring(5, [0, 1])  # F_5[t]/(t)
    assert len(ring_elements(f5)) == 5


def test_ring_element_reduction_and_arith():
    f9 = quotient_ring(3, [1, 0, 1])
    t = f9.element(FpPoly.t(3))
    assert (t * t).render() == "2"  # t^2 = -1
    assert f9.element(FpPoly.make(3, [0, 0, 1])).render() == "2"  # reduce t^2 on entry
    assert f9.element(7).render() == "1"
    z5 = RingSpec.prime_field(5)
    assert z5.element(-3).rep == 2
    with pytest.raises(UsageError):
        t + z5.element(1)


def test_index_round_trip_and_addition():
    for ring in (RingSpec.prime_field(7), quotient_ring(3, [1, 2, 0, 1])):
        q = ring.cardinality_q
        for i in range(q):
            elem = ring.element_at(i)
            assert ring.index_of(elem) == i
        for i in range(q):
            for j in range(0, q, 5):
                expected = ring.element_at(i) + ring.element_at(j)
                assert ring.element_at(ring.add_indices(i, j)) == expected


def test_budget_override(monkeypatch):
    monkeypatch.setenv("PERIMOD_BUDGET", "5")
    with pytest.raises(ResourceError):
        ring_elements(RingSpec.prime_field(7))
    monkeypatch.setenv("PERIMOD_BUDGET", "7")
    assert len(ring_elements(RingSpec.prime_field(7))) == 7
    monkeypatch.setenv("PERIMOD_BUDGET", "not-a-number")
    with pytest.raises(UsageError):
        ring_elements(RingSpec.prime_field(7))
