import pytest

from modk3.congruence import (ClosureViolationError, CongruenceGroupSpec,
                              PRESET_CUSP_WIDTHS, cusps_and_widths,
                              elliptic_counts, genus, group_report,
                              has_trace_minus_two, index_in_modular_group,
                              is_torsion_free, preset_group, preset_lift,
                              psl2z, sl2_elements)


def sl2_order(N):
    out = N ** 3
    seen = set()
    n = N
    for p in range(2, N + 1):
        if n % p == 0:
            seen.add(p)
            while n % p == 0:
                n //= p
    for p in seen:
        out = out // p ** 2 * (p * p - 1)
    return out


def test_sl2_enumeration_sizes():
    for N in (2, 3, 4, 5, 6, 7, 8, 12, 16):
        assert len(sl2_elements(N)) == sl2_order(N)


def test_full_group_baseline():
    g = psl2z()
    assert index_in_modular_group(g) == 1
    assert genus(g) == 0
    e2, e3 = elliptic_counts(g)
    assert (e2, e3) == (1, 1)
    assert [c.width for c in cusps_and_widths(g)] == [1]


def test_closure_violation_detected():
    bad = CongruenceGroupSpec("broken", 8,
                              lambda m: m[1] % 8 in (0, 1, 3))
    with pytest.raises(ClosureViolationError):
        bad.members()


def test_all_presets_match_reference_rows():
    for k in range(1, 10):
        g = preset_group(k)
        assert index_in_modular_group(g) == 24, k
        assert genus(g) == 0, k
        assert is_torsion_free(g), k
        widths = sorted((c.width for c in cusps_and_widths(g)), reverse=True)
        assert widths == sorted(PRESET_CUSP_WIDTHS[k], reverse=True), k
        assert sum(widths) == 24, k


def test_all_lifts_are_honest():
    # a lift must avoid -Id and every element of trace -2
    for k in range(1, 10):
        lift = preset_lift(k)
        assert not lift.contains_minus_id, k
        assert not has_trace_minus_two(lift), k
        # the lift projects onto the projective preset
        assert lift.members_pm() == preset_group(k).members_pm(), k


def test_lift_cusp_widths_double_without_changing():
    for k in (1, 5, 9):
        r = group_report(k)
        assert r["lift_widths_unchanged"], k


def test_gamma1_7_contains_expected_elements():
    g = preset_group(3)
    assert (1, 1, 0, 1) in g.members()
    assert (1, 0, 0, 1) in g.members()
    assert (2, 0, 0, 4) not in g.members()


def test_group_report_shape():
    r = group_report(4)
    assert r["modulus"] == 8
    assert r["index"] == 24
    assert len(r["cusp_widths"]) == 6
    assert r["widths_match_preset"]
    assert not r["lift_has_minus_id"]


def test_preset_bounds():
    with pytest.raises(KeyError):
        preset_group(10)
    with pytest.raises(KeyError):
        preset_lift(0)
