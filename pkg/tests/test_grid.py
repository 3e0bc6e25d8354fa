import numpy as np
import pytest
from hypothesis import given, strategies as st

from tbsim import ConfigurationError, make_grid, matrix_to_transfer, transfer_to_matrix


def test_grid_is_symmetric_and_spans_the_interval():
    g = make_grid(span=4.0, n_points=41)
    assert g.nu[0] == -4.0 and g.nu[-1] == 4.0
    # exact reflection symmetry, not just approximate
    np.testing.assert_array_equal(g.nu[::-1], -g.nu)
    assert g.delta_omega == pytest.approx(8.0 / 40)


@given(n=st.integers(min_value=2, max_value=40), span=st.floats(0.1, 50.0))
def test_sum_index_addresses_pairwise_sums(n, span):
    g = make_grid(span, n)
    sums = g.sum_values()[g.sum_index()]
    np.testing.assert_allclose(sums, g.nu[:, None] + g.nu[None, :], atol=1e-12 * span)


def test_diff_index_addresses_pairwise_differences():
    g = make_grid(3.0, 17)
    diffs = g.diff_values()[g.diff_index()]
    np.testing.assert_allclose(diffs, g.nu[:, None] - g.nu[None, :], atol=1e-14)


def test_matrix_transfer_roundtrip():
    g = make_grid(2.0, 8)
    m = np.arange(64, dtype=complex).reshape(8, 8)
    np.testing.assert_array_equal(transfer_to_matrix(matrix_to_transfer(m, g), g), m)


@pytest.mark.parametrize("n", [0, 1, -3])
def test_grid_rejects_too_few_points(n):
    with pytest.raises(ConfigurationError):
        make_grid(1.0, n)


def test_grid_rejects_nonpositive_span():
    with pytest.raises(ConfigurationError):
        make_grid(0.0, 10)


def test_transfer_shape_mismatch():
    g = make_grid(1.0, 5)
    with pytest.raises(ConfigurationError):
        matrix_to_transfer(np.zeros((4, 4)), g)
