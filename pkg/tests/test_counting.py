import dataclasses
import random

import pytest

from modk3.arith import kronecker_character
from modk3.cmforms import HECKE_SPECS, ap as form_ap
from modk3.counting import (CountReport, ModelMismatchError, ap_elliptic,
                            count_report, curve_count, good_primes, h2_trace,
                            h3_trace, k3_point_count, kummer_fiber_count,
                            ns_trace_prediction, twist_fit)
from modk3.families import WeierstrassCurve, preset
from modk3.kodaira import BadReductionError

E_TEST = (0, 0, 0, -1, 0)  # y^2 = x^3 - x, conductor 32


def exhaustive_count(E):
    p = E.p
    total = 1
    for x in range(p):
        for y in range(p):
            if E.is_on_curve((x, y)):
                total += 1
    return total


def test_curve_count_examples():
    assert curve_count(WeierstrassCurve(0, 0, 0, -1, 0, p=7)) == 8
    # split node: y^2 = x^2 (x + 1) over F_5
    assert curve_count(WeierstrassCurve(0, 1, 0, 0, 0, p=5)) == 5
    # cusp: y^2 = x^3 over F_5
    assert curve_count(WeierstrassCurve(0, 0, 0, 0, 0, p=5)) == 6


def test_curve_count_vs_enumeration_random():
    rng = random.Random(31)
    for _ in range(20):
        p = rng.choice([5, 7, 11, 13, 17, 101])
        E = WeierstrassCurve(rng.randrange(p), rng.randrange(p),
                             rng.randrange(p), rng.randrange(p),
                             rng.randrange(p), p=p)
        assert curve_count(E) == exhaustive_count(E), E


def test_ap_elliptic():
    assert ap_elliptic(E_TEST, 7) == 0
    for p in (5, 7, 11, 13, 37):
        a = ap_elliptic(E_TEST, p)
        assert a * a <= 4 * p
    with pytest.raises(BadReductionError):
        ap_elliptic(E_TEST, 2)
    with pytest.raises(BadReductionError):
        ap_elliptic((0, 0, 0, 0, 5), 5)  # Delta = -432 * 25


def test_k3_count_report_invariant():
    fam = preset("g4_legendre")
    r = k3_point_count(fam, 5)
    assert r.total == 1 + 25 + 5 * r.ns_trace_used + r.B
    assert r.B == -6
    with pytest.raises(AssertionError):
        CountReport("x", 5, 0, 0, 1)


def test_k3_traces_match_forms_small_primes():
    cases = (("g4_legendre", "h8"), ("g62", "h7"),
             ("g82", "h8"), ("g8_412", "h4"))
    for name, fid in cases:
        fam = preset(name)
        spec = HECKE_SPECS[fid]
        for p in good_primes(fam, 5, 23):
            assert k3_point_count(fam, p).B == form_ap(spec, p), (name, p)


def test_inert_primes_kill_the_trace():
    fam = preset("g4_legendre")
    for p in (7, 11, 19, 23):
        assert k3_point_count(fam, p).B == 0, p


def test_twist_fit_results():
    assert twist_fit(preset("g4_legendre")) == ("h8", 1)
    assert twist_fit(preset("g62")) == ("h7", 1)
    assert twist_fit(preset("g82")) == ("h8", 1)
    assert twist_fit(preset("g8_412")) == ("h4", 1)


def test_twist_fit_negative_control():
    # forcing the wrong CM field can never fit: the inert primes differ
    wrong = dataclasses.replace(preset("g62"), form_id="h8")
    with pytest.raises(ModelMismatchError):
        twist_fit(wrong, good_primes(wrong, 5, 60))
    with pytest.raises(ModelMismatchError):
        twist_fit(preset("e1_7"))  # no attached form


def test_count_report_marks_ok():
    r = count_report(preset("g62"), 13)
    assert r.ok and r.matched_form == "h7" and r.twist_disc == 1


def test_ns_trace_prediction_matches_geometry():
    for name in ("g4_legendre", "g62", "g82", "g8_412"):
        fam = preset(name)
        for p in good_primes(fam, 5, 23):
            assert (k3_point_count(fam, p).ns_trace_used
                    == ns_trace_prediction(fam, p)), (name, p)


def test_kummer_identity_random():
    rng = random.Random(41)
    for _ in range(200):
        p = rng.choice([5, 7, 11, 13, 17, 19, 23])
        bound = int(2 * p ** 0.5)
        a1 = rng.randint(-bound, bound)
        a2 = rng.randint(-bound, bound)
        r2 = rng.choice([1, 2, 4]) * rng.choice([1, 2, 4])
        assert kummer_fiber_count(a1, a2, r2, p) == (p + 1) ** 2 + a1 * a2 + p * r2
    assert kummer_fiber_count(0, 0, 16, 13) == 14 ** 2 + 16 * 13
    with pytest.raises(ValueError):
        kummer_fiber_count(0, 0, 4, 4)


def test_kummer_against_twisted_quotient_oracle():
    # #(A/-1)(F_p) = (#E1 #E2 + #E1' #E2')/2 with E' the quadratic twist
    p = 13
    E = WeierstrassCurve(0, 0, 0, -1 % p, 0, p=p)
    n = curve_count(E)
    a = p + 1 - n
    # y^2 = x^3 - x is its own twist statistics carrier: twist trace is -a
    n_tw = p + 1 + a
    r2 = 4 * 4  # full rational 2-torsion on both factors
    direct = (n * n + n_tw * n_tw) // 2 + p * r2
    assert direct == kummer_fiber_count(a, a, r2, p)


def test_h2_and_h3_traces():
    g62 = preset("g62")
    g4 = preset("g4_legendre")
    for p in (13, 17):
        assert h2_trace(g62, p) == 31 * p
    assert h2_trace(g4, 13) == 31 * 13
    assert h2_trace(g4, 7) == 27 * 7
    # all-rational minus part: AB + 6pA
    p = 13
    A = ap_elliptic(E_TEST, p)
    B = k3_point_count(g62, p).B
    assert h3_trace(g62, E_TEST, p) == A * B + 6 * p * A
    # chi_{-4} cycles flip sign at p = 3 mod 4
    A7 = ap_elliptic(E_TEST, 7)
    B7 = k3_point_count(g4, 7).B
    assert h3_trace(g4, E_TEST, 7) == A7 * B7 + 7 * A7 * (3 - 3)
    with pytest.raises(ValueError):
        h2_trace(preset("e1_7"), 13)


def test_bad_primes_rejected():
    with pytest.raises(BadReductionError):
        k3_point_count(preset("g62"), 3)
    with pytest.raises(BadReductionError):
        curve_count(WeierstrassCurve(0, 0, 0, 1, 1, p=3))
