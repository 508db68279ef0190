import random

import pytest

from modk3.arith import (FIELD_DISC, InvalidPrimeError, QuadFieldElement,
                         SUPPORTED_D, UnsupportedFieldError,
                         is_fundamental_discriminant, is_prime,
                         kronecker_character, legendre_symbol,
                         norm_equation_solutions, sqrt_mod)


def naive_is_prime(n):
    if n < 2:
        return False
    return all(n % k for k in range(2, int(n ** 0.5) + 1))


def test_is_prime_small_range():
    for n in range(-5, 2000):
        assert is_prime(n) == naive_is_prime(n), n


def test_is_prime_large_values():
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(2 ** 61 + 1)
    # strong-pseudoprime classic
    assert not is_prime(3215031751)


def test_legendre_vs_euler():
    for p in (5, 7, 11, 13, 101):
        for a in range(2 * p):
            euler = pow(a, (p - 1) // 2, p)
            expected = 0 if a % p == 0 else (1 if euler == 1 else -1)
            assert legendre_symbol(a, p) == expected


def test_fundamental_discriminants():
    fundamentals = [D for D in range(-50, 50) if is_fundamental_discriminant(D)]
    assert -4 in fundamentals and -3 in fundamentals and -8 in fundamentals
    assert -7 in fundamentals and 8 in fundamentals and 12 in fundamentals
    assert 24 in fundamentals and -24 in fundamentals
    for bad in (0, 2, 3, -12, -48, 16, 48):
        assert bad not in fundamentals, bad


def test_kronecker_matches_legendre_at_odd_primes():
    for D in (-3, -4, -7, -8, 8, 12, 24, -24):
        for p in (5, 7, 11, 13, 17, 97):
            if p == abs(D):
                continue
            assert kronecker_character(D, p) == legendre_symbol(D % p, p)


def test_kronecker_is_periodic_and_multiplicative():
    rng = random.Random(11)
    for D in (-3, -4, -8, 8, 12, -24):
        period = abs(D)
        for _ in range(50):
            n = rng.randrange(1, 10 ** 6)
            m = rng.randrange(1, 10 ** 6)
            assert (kronecker_character(D, n * m)
                    == kronecker_character(D, n) * kronecker_character(D, m))
            if n % 2 == 1 or D % 2 == 0:
                assert (kronecker_character(D, n)
                        == kronecker_character(D, n + period))


def test_sqrt_mod():
    for p in (5, 13, 17, 97, 193):
        for a in range(p):
            r = sqrt_mod(a, p)
            if legendre_symbol(a, p) == -1:
                assert r is None
            else:
                assert r is not None and r * r % p == a
                assert r <= p - r  # canonical smaller root


def test_quadfield_integrality_constraints():
    QuadFieldElement(3, 1, 1)
    QuadFieldElement(1, 2, 4)
    with pytest.raises(ValueError):
        QuadFieldElement(1, 1, 2)
    with pytest.raises(ValueError):
        QuadFieldElement(7, 2, 1)
    with pytest.raises(UnsupportedFieldError):
        QuadFieldElement(5, 2, 0)


def test_quadfield_algebra():
    rng = random.Random(3)
    for _ in range(200):
        d = rng.choice(SUPPORTED_D)
        if d in (3, 7):
            u, v = rng.randrange(-9, 10), rng.randrange(-9, 10)
            u += (u - v) % 2
        else:
            u, v = 2 * rng.randrange(-5, 6), 2 * rng.randrange(-5, 6)
        x = QuadFieldElement(d, u, v)
        # x * conj(x) is the rational number N(x)
        prod = x * x.conjugate()
        assert (prod.u, prod.v) == (2 * x.norm, 0)
        # norm is multiplicative
        y = QuadFieldElement(d, u, -v) if v else x
        assert (x * y).norm == x.norm * y.norm
        # tr(x^2) = tr(x)^2 - 2 N(x)
        assert x.trace_of_square() == x.trace ** 2 - 2 * x.norm
        assert x.square().trace == x.trace_of_square()


def test_unit_orbit_sizes():
    assert len(QuadFieldElement(1, 2, 4).unit_orbit()) == 4
    assert len(QuadFieldElement(3, 4, 2).unit_orbit()) == 6
    assert len(QuadFieldElement(2, 2, 2).unit_orbit()) == 2
    assert len(QuadFieldElement(7, 3, 1).unit_orbit()) == 2
    for g in QuadFieldElement(3, 4, 2).unit_orbit():
        assert g.norm == QuadFieldElement(3, 4, 2).norm


def brute_norm_solutions(d, p):
    out = set()
    for u in range(0, 4 * p):
        if u * u > 4 * p:
            break
        for v in range(-4 * p, 4 * p):
            if d * v * v > 4 * p:
                continue
            if u * u + d * v * v == 4 * p:
                if d in (3, 7) and (u - v) % 2 != 0:
                    continue
                if d in (1, 2) and (u % 2 or v % 2):
                    continue
                out.add((u, v))
    return out


def test_norm_equation_vs_brute_force():
    for d in SUPPORTED_D:
        for p in (2, 3, 5, 7, 11, 13, 29, 53):
            sols = norm_equation_solutions(d, p)
            assert {(s.u, s.v) for s in sols} == brute_norm_solutions(d, p)
            for s in sols:
                assert s.norm == p


def test_norm_equation_split_inert():
    # splitting is governed by the field discriminant
    for d in SUPPORTED_D:
        D = FIELD_DISC[d]
        for p in (5, 7, 11, 13, 17, 19, 23, 29):
            sols = norm_equation_solutions(d, p)
            if kronecker_character(D, p) == -1:
                assert sols == []
            else:
                assert sols


def test_norm_equation_rejects_composites():
    with pytest.raises(InvalidPrimeError):
        norm_equation_solutions(1, 15)
