import numpy as np
import pytest
from hypothesis import given, strategies as st

from tbsim import ConfigurationError, PiecewiseConstant


def test_top_hat_values_and_half_open_edges():
    p = PiecewiseConstant.top_hat(-2.0, 3.0, value=-1.0)
    assert p(-2.0) == -1.0
    assert p(3.0) == 0.0  # right edge excluded
    assert p(10.0) == 0.0
    np.testing.assert_array_equal(p(np.array([-3.0, 0.0, 2.9])), [0.0, -1.0, -1.0])


def test_empty_profile_is_zero():
    p = PiecewiseConstant()
    assert p.is_zero
    assert p(0.3) == 0.0
    assert p.integral(-5.0, 5.0) == 0.0


def test_overlapping_segments_rejected():
    with pytest.raises(ConfigurationError):
        PiecewiseConstant([(-1.0, 1.0, 1.0), (0.5, 2.0, -1.0)])


def test_segments_sorted_on_construction():
    p = PiecewiseConstant([(1.0, 2.0, 3.0), (-1.0, 0.0, 1.0)])
    assert p.segments[0][0] == -1.0


segment_lists = st.lists(
    st.tuples(st.integers(-20, 20), st.integers(1, 5), st.floats(-3, 3)),
    min_size=1,
    max_size=4,
)


@given(segment_lists, st.floats(-30, 30), st.floats(-30, 30))
def test_integral_matches_quadrature(raw, z_from, z_to):
    # build non-overlapping segments by spacing the starts far apart
    segs = [(50.0 * i + a, 50.0 * i + a + w, v) for i, (a, w, v) in enumerate(raw)]
    p = PiecewiseConstant(segs)
    z = np.linspace(min(z_from, z_to), max(z_from, z_to), 40001)
    ref = np.trapezoid(p(z), z)
    if z_to < z_from:
        ref = -ref
    assert p.integral(z_from, z_to) == pytest.approx(ref, abs=5e-2)


def test_antiderivative_differences_are_exact():
    p = PiecewiseConstant([(-1.0, 1.0, 2.0), (2.0, 3.0, -1.0)])
    assert p.integral(-1.0, 1.0) == pytest.approx(4.0)
    assert p.integral(0.0, 2.5) == pytest.approx(2.0 - 0.5)
    assert p.integral(2.5, 0.0) == pytest.approx(-(2.0 - 0.5))


def test_breakpoints_are_segment_edges():
    p = PiecewiseConstant([(-1.0, 1.0, 2.0), (2.0, 3.0, -1.0)])
    assert set(p.breakpoints) == {-1.0, 1.0, 2.0, 3.0}
