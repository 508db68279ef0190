"""Weight-3 CM newform coefficients from Hecke characters.

The four newforms h8, h7, h3, h4 are attached to Hecke characters of the
fields Q(sqrt(-d)) for d = 1, 3, 7, 2 with conductors (2), (2), (1), (1).
At a split prime p the coefficient is the trace of pi^2 for a generator pi
of a prime above p normalized by pi = +-1 mod c*O_K; the eta products of
``qseries`` serve as the independent ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import (FIELD_DISC, QuadFieldElement, is_prime,
                    kronecker_character, norm_equation_solutions)
from .qseries import GRID, form_series


class BadPrimeError(ValueError):
    pass


class NoGeneratorError(ValueError):
    pass


class NormalizationFailureError(RuntimeError):
    pass


@dataclass(frozen=True)
class HeckeCharSpec:
    form_id: str
    d: int           # field parameter, K = Q(sqrt(-d))
    conductor_gen: int  # c with cond(chi) = c * O_K
    level: int

    @property
    def disc(self) -> int:
        return FIELD_DISC[self.d]

    def __post_init__(self):
        # cond(h) = Nm(c) * |Disc(K)| must reproduce the level
        assert self.conductor_gen ** 2 * abs(self.disc) == self.level


HECKE_SPECS = {
    "h8": HeckeCharSpec("h8", d=1, conductor_gen=2, level=16),
    "h7": HeckeCharSpec("h7", d=3, conductor_gen=2, level=12),
    "h3": HeckeCharSpec("h3", d=7, conductor_gen=1, level=7),
    "h4": HeckeCharSpec("h4", d=2, conductor_gen=1, level=8),
}


def newtype(spec: HeckeCharSpec) -> int:
    """Fundamental discriminant of the nebentypus character."""
    return spec.disc


def splitting(spec: HeckeCharSpec, p: int) -> int:
    """kronecker(Disc K, p): 1 split, -1 inert, 0 ramified."""
    return kronecker_character(spec.disc, p)


def _generator_candidates(spec: HeckeCharSpec, p: int) -> list:
    sols = norm_equation_solutions(spec.d, p)
    if not sols:
        raise NoGeneratorError(f"p={p} is inert in Q(sqrt(-{spec.d}))")
    seen, out = set(), []
    for s in sols:
        for g in s.unit_orbit():
            key = (g.u, g.v)
            if key not in seen:
                seen.add(key)
                out.append(g)
    return out


def normalized_generator(spec: HeckeCharSpec, p: int,
                         normalize: bool = True) -> QuadFieldElement:
    """A generator pi of a prime above p with pi = +-1 mod c*O_K.

    With ``normalize=False`` the congruence condition is skipped and the
    first candidate in enumeration order is returned (negative control).
    """
    cands = _generator_candidates(spec, p)
    c = spec.conductor_gen
    if not normalize or c == 1:
        return cands[0]
    good = [g for g in cands
            if QuadFieldElement(spec.d, g.u - 2, g.v).divisible_by(c)
            or QuadFieldElement(spec.d, g.u + 2, g.v).divisible_by(c)]
    if not good:
        raise NormalizationFailureError(
            f"no unit multiple of a generator above p={p} is +-1 mod {c}")
    # normalized candidates all share tr(pi^2); pick a deterministic one
    traces = {g.trace_of_square() for g in good}
    assert len(traces) == 1, f"ambiguous normalization at p={p}: {traces}"
    return max(good, key=lambda g: (g.u, g.v))


def ap(spec: HeckeCharSpec, p: int, normalize: bool = True) -> int:
    """p-th coefficient of the newform at a good (or tamely ramified) prime."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    s = splitting(spec, p)
    if s == -1:
        return 0
    if s == 0:
        if p == 2 and spec.conductor_gen % 2 == 0:
            raise BadPrimeError(f"p={p} divides the conductor of chi")
        # ramified: the generator with rational square
        cands = [g for g in _generator_candidates(spec, p) if g.u * g.v == 0]
        if not cands:
            raise BadPrimeError(f"no rational-square generator above p={p}")
        g = cands[0]
        n = g.u * g.u - spec.d * g.v * g.v
        assert n % 4 == 0
        return n // 4
    if p % 2 == 0 or (spec.level % p == 0):
        # split primes never divide the level for these four specs
        raise BadPrimeError(f"p={p} is bad for level {spec.level}")
    return normalized_generator(spec, p, normalize=normalize).trace_of_square()


@lru_cache(maxsize=None)
def _eta_coefficients(form_id: str, nmax: int) -> tuple:
    return tuple(form_series(form_id, (nmax + 1) * GRID).coefficients(nmax))


def _sieve(n: int) -> list:
    flags = [True] * (n + 1)
    flags[:2] = [False, False]
    for i in range(2, int(n ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = [False] * len(flags[i * i::i])
    return [i for i, f in enumerate(flags) if f]


def coefficient_sequence(spec: HeckeCharSpec, N: int,
                         normalize: bool = True) -> list:
    """[a_1, ..., a_N] by multiplicative extension of the prime values.

    Prime coefficients come from the Hecke character; primes where that is
    undefined (p | c^2 * d ... the true bad primes) are read off the eta
    expansion.  Prime powers follow a_{p^(k+1)} = a_p a_{p^k} - eps(p) p^2
    a_{p^(k-1)} with eps the nebentypus.
    """
    a = [0] * (N + 1)
    a[1] = 1
    for p in _sieve(N):
        try:
            app = ap(spec, p, normalize=normalize)
        except BadPrimeError:
            app = _eta_coefficients(spec.form_id, min(N, p))[p - 1]
        # nebentypus as a character mod the level: 0 at bad primes
        eps = 0 if spec.level % p == 0 else kronecker_character(spec.disc, p)
        # fill p-power coefficients
        powers = {1: 1, p: app}
        q = p * p
        while q <= N:
            prev, prev2 = powers[q // p], powers[q // (p * p)]
            powers[q] = app * prev - eps * p * p * prev2
            q *= p
        for q, aq in powers.items():
            if 1 < q <= N:
                a[q] = aq
    # multiplicative extension
    for n in range(2, N + 1):
        if a[n] != 0 or _is_prime_power(n):
            continue
        m, q = n, 1
        for p in _sieve(int(n ** 0.5) + 1):
            if m % p == 0:
                q = 1
                while m % p == 0:
                    m //= p
                    q *= p
                break
        a[n] = a[q] * a[n // q]
    return a[1:]


def _is_prime_power(n: int) -> bool:
    for p in _sieve(n):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return False


def verify_against_eta(spec: HeckeCharSpec, N: int,
                       normalize: bool = True) -> list:
    """Indices n <= N where the Hecke-character coefficients disagree with
    the eta expansion; empty on success."""
    hecke = coefficient_sequence(spec, N, normalize=normalize)
    eta = _eta_coefficients(spec.form_id, N)
    return [n for n in range(1, N + 1) if hecke[n - 1] != eta[n - 1]]
