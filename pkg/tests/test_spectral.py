import numpy as np
import pytest

from ansps import SpectralState, pair_differences, raw_bb, scale_subgradient, search_direction


def test_scale_examples():
    q, v = scale_subgradient(np.array([3.0, 4.0]))
    assert q == 5.0
    np.testing.assert_allclose(v, [0.6, 0.8], atol=1e-15)

    q, v = scale_subgradient(np.array([0.3, 0.0]))
    assert q == 1.0
    np.testing.assert_array_equal(v, [0.3, 0.0])

    q, v = scale_subgradient(np.zeros(3))
    assert q == 1.0
    np.testing.assert_array_equal(v, np.zeros(3))


def test_scale_never_exceeds_unit_length():
    rng = np.random.default_rng(15)
    for _ in range(500):
        g = rng.standard_normal(int(rng.integers(1, 9))) * rng.uniform(0.01, 100.0)
        q, v = scale_subgradient(g)
        assert q >= 1.0
        assert np.linalg.norm(v) <= 1.0 + 1e-12
        np.testing.assert_allclose(q * v, g, rtol=1e-12, atol=1e-12)


def test_scale_rejects_nonfinite():
    with pytest.raises(ValueError):
        scale_subgradient(np.array([np.inf, 0.0]))


def test_raw_bb_examples():
    bb1, bb2 = raw_bb([1.0, 0.0], [2.0, 0.0])
    assert bb1 == 0.5 and bb2 == 0.5

    bb1, bb2 = raw_bb([1.0, 1.0], [1.0, 1.0])
    assert bb1 == 1.0 and bb2 == 1.0

    # descent-violating pair: bb1 undefined, bb2 negative but defined
    bb1, bb2 = raw_bb([1.0, 0.0], [-1.0, 0.0])
    assert bb1 is None and bb2 == -1.0

    # orthogonal pair: bb1 undefined, bb2 zero... which is s.y / y.y = 0
    bb1, bb2 = raw_bb([1.0, 0.0], [0.0, 1.0])
    assert bb1 is None and bb2 == 0.0

    # vanishing y: both undefined
    bb1, bb2 = raw_bb([1.0, 0.0], [0.0, 0.0])
    assert bb1 is None and bb2 is None


def test_bb1_rule_and_fallback():
    st = SpectralState("bb1", zeta0=1.0)
    assert st.update([1.0, 0.0], [2.0, 0.0]) == 0.5
    # undefined bb1 keeps the previous coefficient even though bb2 exists
    assert st.update([1.0, 0.0], [-1.0, 0.0]) == 0.5
    assert st.zeta == 0.5


def test_bb2_rule_clamps_negative():
    st = SpectralState("bb2", zeta0=1.0)
    assert st.update([1.0, 0.0], [-1.0, 0.0]) == pytest.approx(1e-4)


def test_clamping_both_sides():
    st = SpectralState("bb1", zeta0=1.0)
    assert st.update([1.0, 0.0], [1e-6, 0.0]) == 1e4
    st2 = SpectralState("bb1", zeta0=1.0)
    assert st2.update([1e-6, 0.0], [1.0, 0.0]) == 1e-4


def test_abb_switches_on_ratio():
    # collinear s, y: bb1 == bb2, ratio 1, takes the bb1 side
    st = SpectralState("abb", zeta0=1.0)
    assert st.update([2.0, 0.0], [2.0, 0.0]) == 1.0
    # s=(1,0), y=(1,1): bb1 = 1, bb2 = 0.5, ratio 0.5 < 0.8, takes bb2
    st2 = SpectralState("abb", zeta0=1.0)
    assert st2.update([1.0, 0.0], [1.0, 1.0]) == 0.5
    # s=(1,0), y=(1,0.4): bb1 = 1, bb2 = 1/1.16, ratio ~0.862, takes bb1
    st3 = SpectralState("abb", zeta0=1.0)
    assert st3.update([1.0, 0.0], [1.0, 0.4]) == 1.0


def test_abbmin_takes_smallest_recent_bb2():
    st = SpectralState("abbmin", zeta0=1.0)
    s = [1.0, 0.0]
    st.update(s, [0.5, 0.0])  # raw bb2 = 2, collinear so bb1 side
    st.update(s, [2.0, 0.0])  # raw bb2 = 0.5
    st.update(s, [1.0, 0.0])  # raw bb2 = 1
    # now a pair whose ratio switches to the bb2 side: current bb2 = 0.5
    assert st.update(s, [1.0, 1.0]) == 0.5
    # history minimum, not just the current raw bb2: shove in a tiny one
    st.update(s, [4.0, 0.0])  # raw bb2 = 0.25, collinear, bb1 side
    assert st.update(s, [1.0, 1.0]) == 0.25


def test_abbmin_window_is_bounded():
    st = SpectralState("abbmin", zeta0=1.0)
    s = [1.0, 0.0]
    st.update(s, [100.0, 0.0])  # raw bb2 = 0.01, will age out
    for _ in range(6):
        st.update(s, [1.0, 0.0])  # raw bb2 = 1 six times
    assert st.update(s, [1.0, 1.0]) == 0.5  # min(window) = min(1,...,1, 0.5)


def test_adaptive_rules_fall_back_across_definedness():
    # bb1 undefined, bb2 defined: adaptive rules use the bb2 side
    st = SpectralState("abb", zeta0=1.0)
    assert st.update([1.0, 0.0], [-1.0, 0.0]) == pytest.approx(1e-4)  # bb2 = -1 clamped
    # both undefined: previous coefficient survives
    st2 = SpectralState("abbmin", zeta0=2.0)
    assert st2.update([1.0, 0.0], [0.0, 0.0]) == 2.0


def test_const_rule_never_moves():
    st = SpectralState("const", zeta0=3.0)
    assert st.update([1.0, 0.0], [2.0, 0.0]) == 3.0
    assert st.zeta == 3.0


def test_collinear_pairs_agree_across_rules():
    rng = np.random.default_rng(21)
    for _ in range(250):
        n = int(rng.integers(1, 7))
        s = rng.standard_normal(n)
        if np.linalg.norm(s) < 1e-6:
            continue
        c = float(rng.uniform(0.01, 50.0))
        expected = min(1e4, max(1e-4, 1.0 / c))
        for rule in ("bb1", "bb2", "abb", "abbmin"):
            st = SpectralState(rule, zeta0=1.0)
            assert st.update(s, c * s) == pytest.approx(expected, rel=1e-12)


def test_coefficient_always_in_bounds():
    rng = np.random.default_rng(22)
    for rule in ("bb1", "bb2", "abb", "abbmin", "const"):
        st = SpectralState(rule, zeta0=1.0, floor=1e-4, ceiling=1e4)
        for _ in range(300):
            n = int(rng.integers(1, 6))
            s = rng.standard_normal(n) * rng.uniform(0, 2)
            y = rng.standard_normal(n) * rng.uniform(0, 2)
            if rng.random() < 0.1:
                y = np.zeros(n)
            if rng.random() < 0.1:
                y = -s
            z = st.update(s, y)
            assert 1e-4 <= z <= 1e4


def test_direction_and_differences():
    np.testing.assert_array_equal(search_direction(2.0, np.array([0.5, -1.0])), [-1.0, 2.0])
    s, y = pair_differences([1.0, 1.0], [2.0, 0.0], [0.5, 0.5], [0.0, 1.0])
    np.testing.assert_array_equal(s, [1.0, -1.0])
    np.testing.assert_array_equal(y, [-0.5, 0.5])


def test_state_construction_guards():
    with pytest.raises(ValueError, match="rule"):
        SpectralState("bb3")
    with pytest.raises(ValueError, match="floor"):
        SpectralState("bb1", floor=0.0)
    with pytest.raises(ValueError, match="zeta0"):
        SpectralState("bb1", zeta0=1e5)
    with pytest.raises(ValueError, match="shape"):
        raw_bb([1.0, 0.0], [1.0])
