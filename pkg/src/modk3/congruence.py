"""Finite computations in SL(2, Z/N) for the nine index-24 groups.

Every check is an exhaustive enumeration inside SL(2, Z/N) (at most 3072
elements, N = 16).  A group is given by a membership predicate on matrices
(a, b, c, d) mod N; the projective version is obtained by closing under
-Id.  Coset enumeration under the standard generators S and T yields the
index, the cusps with widths, and the elliptic-point counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

Mat = tuple  # (a, b, c, d) mod N


class ClosureViolationError(ValueError):
    pass


def _mul(x: Mat, y: Mat, N: int) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % N, (a * f + b * h) % N,
            (c * e + d * g) % N, (c * f + d * h) % N)


def _inv(x: Mat, N: int) -> Mat:
    a, b, c, d = x  # det = 1
    return (d % N, -b % N, -c % N, a % N)


def _neg(x: Mat, N: int) -> Mat:
    return tuple(-t % N for t in x)


@lru_cache(maxsize=None)
def sl2_elements(N: int) -> tuple:
    """All of SL(2, Z/N)."""
    out = []
    for a in range(N):
        for b in range(N):
            for c in range(N):
                # solve a*d - b*c = 1 mod N for d
                for d in range(N):
                    if (a * d - b * c) % N == 1:
                        out.append((a, b, c, d))
    return tuple(out)


@lru_cache(maxsize=None)
def trace_minus_two_classes(N: int) -> frozenset:
    """Union of the SL(2,Z/N)-conjugacy classes of -U^k, all k mod N."""
    G = sl2_elements(N)
    out = set()
    for k in range(N):
        uk = (N - 1, (-k) % N, 0, N - 1)  # -U^k
        for g in G:
            out.add(_mul(_mul(g, uk, N), _inv(g, N), N))
    return frozenset(out)


@dataclass(frozen=True)
class CuspData:
    representative: tuple  # (a, c) in P^1(Z/N): first column of a coset rep
    width: int


@dataclass(frozen=True)
class CongruenceGroupSpec:
    """Subgroup of SL(2, Z/N) by membership predicate.

    ``projective=True`` means the spec describes a subgroup of PSL: the
    predicate is closed under -Id (it is symmetrized on construction).
    """

    name: str
    modulus: int
    predicate: object = field(compare=False)
    projective: bool = True

    def members(self) -> frozenset:
        return _members(self)

    def members_pm(self) -> frozenset:
        """Members together with their negatives (the +-Id closure)."""
        N = self.modulus
        H = self.members()
        return frozenset(H | {_neg(g, N) for g in H})

    @property
    def contains_minus_id(self) -> bool:
        N = self.modulus
        return _neg((1 % N, 0, 0, 1 % N), N) in self.members()


@lru_cache(maxsize=None)
def _members(spec: CongruenceGroupSpec) -> frozenset:
    N = spec.modulus
    H = frozenset(g for g in sl2_elements(N) if spec.predicate(g))
    # exhaustive closure check: H must be a subgroup
    Hs = set(H)
    for x in H:
        if _inv(x, N) not in Hs:
            raise ClosureViolationError(f"{spec.name}: not inverse-closed")
    sample = list(H)
    for x in sample:
        for y in sample:
            if _mul(x, y, N) not in Hs:
                raise ClosureViolationError(f"{spec.name}: not product-closed")
    return H


def _coset_key(g: Mat, H: frozenset, N: int) -> Mat:
    return min(_mul(h, g, N) for h in H)


def _cosets(spec: CongruenceGroupSpec) -> list:
    """Right cosets H\\G by BFS under right multiplication by S and T."""
    N = spec.modulus
    H = spec.members_pm() if spec.projective else spec.members()
    S = (0, -1 % N, 1 % N, 0)
    T = (1 % N, 1 % N, 0, 1 % N)
    start = _coset_key((1 % N, 0, 0, 1 % N), H, N)
    seen = {start}
    queue = [start]
    while queue:
        g = queue.pop()
        for gen in (S, T, _inv(T, N)):
            nxt = _coset_key(_mul(g, gen, N), H, N)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen)


def index_in_modular_group(spec: CongruenceGroupSpec) -> int:
    """Index of the group (mod +-Id) in PSL(2, Z)."""
    if spec.modulus == 1:
        return 1
    N = spec.modulus
    H = spec.members_pm()
    cosets = _cosets(CongruenceGroupSpec(spec.name, N, spec.predicate,
                                         projective=True))
    # sanity: |G| = |H +-| * index
    assert len(sl2_elements(N)) == len(H) * len(cosets)
    return len(cosets)


def cusps_and_widths(spec: CongruenceGroupSpec) -> list:
    """Cusps as orbits of right U-multiplication on the cosets."""
    if spec.modulus == 1:
        return [CuspData((1, 0), 1)]
    N = spec.modulus
    H = spec.members_pm() if spec.projective else spec.members()
    T = (1 % N, 1 % N, 0, 1 % N)
    cosets = _cosets(spec)
    remaining = set(cosets)
    out = []
    for g in cosets:
        if g not in remaining:
            continue
        orbit = []
        cur = g
        while True:
            orbit.append(cur)
            remaining.discard(cur)
            cur = _coset_key(_mul(cur, T, N), H, N)
            if cur == orbit[0]:
                break
        out.append(CuspData((g[0], g[2]), len(orbit)))
    out.sort(key=lambda cd: -cd.width)
    return out


def _fixed_coset_count(spec: CongruenceGroupSpec, w: Mat) -> int:
    N = spec.modulus
    H = spec.members_pm() if spec.projective else spec.members()
    count = 0
    for g in _cosets(spec):
        if _coset_key(_mul(g, w, N), H, N) == g:
            count += 1
    return count


def elliptic_counts(spec: CongruenceGroupSpec):
    """(e2, e3): numbers of elliptic points of order 2 and 3."""
    if spec.modulus == 1:
        return 1, 1
    N = spec.modulus
    S = (0, -1 % N, 1 % N, 0)
    ST = _mul(S, (1, 1, 0, 1), N)
    return _fixed_coset_count(spec, S), _fixed_coset_count(spec, ST)


def is_torsion_free(spec: CongruenceGroupSpec) -> bool:
    e2, e3 = elliptic_counts(spec)
    return e2 == 0 and e3 == 0


def genus(spec: CongruenceGroupSpec) -> int:
    mu = index_in_modular_group(spec)
    e2, e3 = elliptic_counts(spec)
    c = len(cusps_and_widths(spec))
    num = 12 + mu - 3 * e2 - 4 * e3 - 6 * c
    if num % 12 != 0:
        raise ArithmeticError(f"{spec.name}: non-integral genus")
    return num // 12


def has_trace_minus_two(spec: CongruenceGroupSpec) -> bool:
    """Whether the preimage in SL(2, Z) contains an element of trace -2.

    ``spec`` must describe a lift (a subgroup of SL(2, Z/N), -Id not
    quotiented).  Exact by surjectivity of SL(2,Z) -> SL(2, Z/N).
    """
    N = spec.modulus
    classes = trace_minus_two_classes(N)
    return any(g in classes for g in spec.members())


# ---------------------------------------------------------------------------
# presets: the nine index-24 genus-zero groups and their torsion-free lifts
# ---------------------------------------------------------------------------

def _gamma4(m):
    a, b, c, d = m
    return a % 4 == 1 and d % 4 == 1 and b % 4 == 0 and c % 4 == 0


def _g2_g1_3(m):
    # lift of Gamma_0(3) n Gamma(2): Gamma(2) n Gamma_1(3), modulus 6
    a, b, c, d = m
    return (a % 2 == 1 and d % 2 == 1 and b % 2 == 0 and c % 2 == 0
            and c % 3 == 0 and a % 3 == 1 and d % 3 == 1)


def _gamma1_7(m):
    a, b, c, d = m
    return a % 7 == 1 and d % 7 == 1 and c % 7 == 0


def _gamma1_8(m):
    a, b, c, d = m
    return a % 8 == 1 and d % 8 == 1 and c % 8 == 0


def _g08_g2_lift(m):
    # lift of Gamma_0(8) n Gamma(2): fix the +- ambiguity by a = 1 mod 4
    a, b, c, d = m
    return b % 2 == 0 and c % 8 == 0 and a % 4 == 1


def _g1_8_412(m):
    # (1+4a, 2b; 4c, 1+4d) with a = c mod 2, no +-; modulus 8
    a, b, c, d = m
    return (a % 4 == 1 and d % 4 == 1 and b % 2 == 0 and c % 4 == 0
            and (a - 1 - c) % 8 == 0)


def _g0_12_g1_3(m):
    a, b, c, d = m
    return c % 12 == 0 and a % 3 == 1 and d % 3 == 1


def _g0_16_g1_4(m):
    a, b, c, d = m
    return c % 16 == 0 and a % 4 == 1 and d % 4 == 1


def _g1_16_1622(m):
    # (1+4a, b; 8c, 1+4d) with a = c mod 2, no +-; modulus 16
    a, b, c, d = m
    return (a % 4 == 1 and d % 4 == 1 and c % 8 == 0
            and ((a - 1) // 4 - c // 8) % 2 == 0)


_LIFT_DEFS = {
    1: ("Gamma(4)", 4, _gamma4),
    2: ("Gamma_0(3)&Gamma(2)", 6, _g2_g1_3),
    3: ("Gamma_1(7)", 7, _gamma1_7),
    4: ("Gamma_1(8)", 8, _gamma1_8),
    5: ("Gamma_0(8)&Gamma(2)", 8, _g08_g2_lift),
    6: ("Gamma_1(8;4,1,2)", 8, _g1_8_412),
    7: ("Gamma_0(12)", 12, _g0_12_g1_3),
    8: ("Gamma_0(16)", 16, _g0_16_g1_4),
    9: ("Gamma_1(16;16,2,2)", 16, _g1_16_1622),
}

#: expected cusp-width multisets, indexed by preset group number
PRESET_CUSP_WIDTHS = {
    1: (4, 4, 4, 4, 4, 4),
    2: (6, 6, 6, 2, 2, 2),
    3: (7, 7, 7, 1, 1, 1),
    4: (8, 8, 4, 2, 1, 1),
    5: (8, 8, 2, 2, 2, 2),
    6: (8, 4, 4, 4, 2, 2),
    7: (12, 4, 3, 3, 1, 1),
    8: (16, 4, 1, 1, 1, 1),
    9: (16, 2, 2, 2, 1, 1),
}


def preset_group(k: int) -> CongruenceGroupSpec:
    """Preset group #k as a subgroup of PSL (predicate closed under -Id)."""
    name, N, pred = _LIFT_DEFS[k]
    return CongruenceGroupSpec(name, N, pred, projective=True)


def preset_lift(k: int) -> CongruenceGroupSpec:
    """The chosen torsion-free lift of group #k to SL(2, Z)."""
    name, N, pred = _LIFT_DEFS[k]
    return CongruenceGroupSpec(name + "~", N, pred, projective=False)


def psl2z() -> CongruenceGroupSpec:
    """The full modular group (modulus-1 convention)."""
    return CongruenceGroupSpec("PSL(2,Z)", 1, lambda m: True, projective=True)


def group_report(k: int) -> dict:
    """One verification record for preset group k and its lift."""
    g = preset_group(k)
    lift = preset_lift(k)
    widths = tuple(cd.width for cd in cusps_and_widths(g))
    # no trace -2 means each PSL cusp splits into two SL cusps of the
    # same width, so the lift's multiset is the doubled one
    lift_widths = tuple(cd.width for cd in cusps_and_widths(lift))
    return {
        "group": k,
        "name": g.name,
        "modulus": g.modulus,
        "index": index_in_modular_group(g),
        "genus": genus(g),
        "cusp_widths": list(widths),
        "torsion_free": is_torsion_free(g),
        "lift_has_minus_id": lift.contains_minus_id,
        "trace_minus2_free": not has_trace_minus_two(lift),
        "lift_widths_unchanged": sorted(lift_widths) == sorted(widths + widths),
        "widths_match_preset": tuple(sorted(widths, reverse=True))
        == PRESET_CUSP_WIDTHS[k],
    }
