import pytest

from modk3.families import preset
from modk3.kodaira import (BadReductionError, _classify, config_vs_expected,
                           expected_euler, fiber_euler, integral_model,
                           eigenspace_counts, ns_report, ns_trace, scan)

EXPECTED = {
    "g4_legendre": ["I4"] * 6,
    "g62": ["I6"] * 3 + ["I2"] * 3,
    "g82": ["I8"] * 2 + ["I2"] * 4,
    "g8_412": ["I8"] + ["I4"] * 3 + ["I2"] * 2,
    "e1_7": ["I7"] * 3 + ["I1"] * 3,
    "e1_8": ["I8", "I8", "I4", "I2", "I1", "I1"],
    "e1_6": ["I6", "I3", "I2", "I1"],
    "e1_4": ["I4", "I1", "I1*"],
    "x0_12": ["I12", "I4", "I3", "I3", "I1", "I1"],
}


def good_primes_for(name, count=3):
    fam = preset(name)
    out = []
    p = 5
    while len(out) < count:
        if all(p % q for q in range(2, p)) and p not in fam.bad_primes:
            out.append(p)
        p += 2
    return out


def test_classification_table():
    assert _classify(0, 0, 5)[:2] == ("I5", 5)
    assert _classify(2, 3, 7)[:2] == ("I1*", 7)
    assert _classify(1, 1, 2)[:2] == ("II", 2)
    assert _classify(1, 2, 3)[:2] == ("III", 3)
    assert _classify(2, 2, 4)[:2] == ("IV", 4)
    assert _classify(2, 3, 6)[:2] == ("I0*", 6)
    assert _classify(3, 4, 8)[:2] == ("IV*", 8)
    assert _classify(3, 5, 9)[:2] == ("III*", 9)
    assert _classify(4, 5, 10)[:2] == ("II*", 10)
    # non-minimal input is shifted before classification
    assert _classify(4, 6, 12)[:2] == ("good", 0)
    assert _classify(4, 6, 17)[:2] == ("I5", 5)


def test_fiber_euler_numbers():
    assert fiber_euler("I7") == 7
    assert fiber_euler("I0*") == 6
    assert fiber_euler("I3*") == 9
    assert fiber_euler("II*") == 10
    assert fiber_euler("good") == 0


def test_integral_models_have_integer_coefficients():
    from sympy import Poly, Rational
    for name in ("g4_legendre", "g82", "e1_8"):
        m = integral_model(preset(name), "zero")
        for a in m.a_polys:
            assert all(Rational(c).q == 1
                       for c in Poly(a, m.var).all_coeffs())


def test_all_configurations_match_and_are_prime_independent():
    for name, cfg in EXPECTED.items():
        fam = preset(name)
        seen = set()
        for p in good_primes_for(name):
            rep = scan(fam, p)
            assert sorted(rep.config) == sorted(cfg), (name, p)
            assert rep.euler_ok, (name, p)
            seen.add(rep.config)
        assert len(seen) == 1, name


def test_euler_totals():
    assert expected_euler(preset("g4_legendre")) == 24
    assert expected_euler(preset("e1_6")) == 12
    assert expected_euler(preset("e1_4")) == 12
    assert expected_euler(preset("x0_12")) == 24


def test_bad_primes_rejected():
    with pytest.raises(BadReductionError):
        scan(preset("g4_legendre"), 2)
    with pytest.raises(BadReductionError):
        scan(preset("e1_7"), 7)
    with pytest.raises(BadReductionError):
        scan(preset("g62"), 9)


def test_split_multiplicative_detection():
    # split I_n contributes n-1 fixed components, nonsplit even n just one
    rep = scan(preset("g4_legendre"), 13)
    assert all(f.split is not None for f in rep.fibers)
    assert rep.ns_trace == 20
    rep7 = scan(preset("g4_legendre"), 7)
    assert rep7.ns_trace == 10
    assert ns_trace(preset("g4_legendre"), 7) == 10


def test_discrepancy_note_for_g82():
    out = config_vs_expected(preset("g82"), 13)
    assert out["match"] and out["euler_ok"]
    assert "note" in out
    out4 = config_vs_expected(preset("g4_legendre"), 13)
    assert "note" not in out4


def test_eigenspace_counts_from_configurations():
    assert eigenspace_counts(EXPECTED["g4_legendre"]) == (14, 6)
    assert eigenspace_counts(EXPECTED["g62"]) == (14, 6)
    assert eigenspace_counts(EXPECTED["g82"]) == (14, 6)
    assert eigenspace_counts(EXPECTED["g8_412"]) == (14, 6)
    assert eigenspace_counts(EXPECTED["e1_7"]) == (11, 9)
    with pytest.raises(ValueError):
        eigenspace_counts(["I1*"])


def test_ns_reports_consistent():
    for name in ("g4_legendre", "g62", "g82", "g8_412"):
        r = ns_report(name)
        assert r["counts_match"], name
        assert r["rank"] == 20
        assert r["plus"]["total"] == 14 and r["minus"]["total"] == 6
    with pytest.raises(ValueError):
        ns_report("e1_7")
