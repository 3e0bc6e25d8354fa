"""Generator assembly: block symmetries and the SU(1,1) algebra condition."""

import numpy as np
import pytest

from tbsim import (
    ConfigurationError,
    GeneratorSampler,
    PiecewiseConstant,
    PumpField,
    PumpSpec,
    WaveguideSpec,
    assemble_Q,
    delta_k,
    estimate_gamma,
    make_grid,
    su11_metric,
)


@pytest.fixture
def setup():
    pump = PumpField.gaussian(PumpSpec(n_photons=3.0, sigma=1.0))
    wg = WaveguideSpec(
        v_s=0.8,
        v_i=1.4,
        v_p=1.0,
        ell_min=-5.0,
        ell_max=5.0,
        gamma_delta=0.03 + 0.01j,
        gamma_xpm_s=0.02,
        gamma_xpm_i=0.015,
    )
    grid = make_grid(3.0, 21)
    return pump, wg, grid


def test_delta_k_is_walkoff_times_detuning():
    nu = np.array([-1.0, 0.0, 2.0])
    np.testing.assert_allclose(delta_k(nu, 2.0, 1.0), (0.5 - 1.0) * nu)


def test_F_is_complex_symmetric(setup):
    pump, wg, grid = setup
    gen = assemble_Q(0.0, pump, wg, grid)
    np.testing.assert_allclose(gen.F, gen.F.T, atol=1e-14)


def test_G_and_H_are_hermitian(setup):
    pump, wg, grid = setup
    gen = assemble_Q(0.0, pump, wg, grid)
    np.testing.assert_allclose(gen.G, gen.G.conj().T, atol=1e-14)
    np.testing.assert_allclose(gen.H, gen.H.conj().T, atol=1e-14)


def test_Q_satisfies_algebra_condition(setup):
    """Q S = S Q^dag is the generator-level version of SU(1,1) membership."""
    pump, wg, grid = setup
    q = assemble_Q(0.0, pump, wg, grid).Q
    s = su11_metric(grid.n_points)
    np.testing.assert_allclose(q @ s, s @ q.conj().T, atol=1e-13)


def test_sampler_matches_standalone_assembly(setup):
    pump, wg, grid = setup
    sampler = GeneratorSampler(pump, wg, grid)
    for z in (-3.0, 0.0, 2.0, 7.0):
        np.testing.assert_allclose(sampler.q(z), assemble_Q(z, pump, wg, grid).Q, atol=1e-14)


def test_F_vanishes_outside_poling_region(setup):
    pump, wg, grid = setup
    gen = assemble_Q(6.0, pump, wg, grid)  # beyond ell_max
    assert np.all(gen.F == 0)


def test_poling_sign_flips_F(setup):
    pump, _, grid = setup
    g = PiecewiseConstant([(-5.0, 0.0, 1.0), (0.0, 5.0, -1.0)])
    wg = WaveguideSpec(v_s=0.8, v_i=1.4, v_p=1.0, ell_min=-5.0, ell_max=5.0,
                       gamma_delta=0.03, g_profile=g)
    f_left = assemble_Q(-2.0, pump, wg, grid).F
    f_right = assemble_Q(2.0, pump, wg, grid).F
    np.testing.assert_allclose(f_right, -f_left, atol=1e-14)


def test_invalid_poling_values_rejected(setup):
    pump, _, _ = setup
    with pytest.raises(ConfigurationError):
        WaveguideSpec(v_s=0.8, v_i=1.4, v_p=1.0, ell_min=-5.0, ell_max=5.0,
                      gamma_delta=0.03, g_profile=PiecewiseConstant.top_hat(-5.0, 5.0, 0.5))


def test_estimate_gamma_spdc_consistency():
    est = estimate_gamma(
        effective_area=1e-12,
        refractive_index=2.2,
        group_velocity=1.3e8,
        phase_velocity=1.36e8,
        omega_s=1.2e15,
        omega_i=1.2e15,
        omega_p=2.4e15,
        chi2=1e-11,
    )
    assert est.delta == 1
    assert est.xi > 0 and est.gamma_delta > 0
    assert est.gamma_xpm_s == 0.0  # no XPM in the chi2 process


def test_estimate_gamma_sfwm_xpm_ratios():
    """zeta_s / zeta_p = 2 omega_s / (omega_p / 2)... reduces to 2 for degenerate SFWM."""
    w = 1.2e15
    est = estimate_gamma(
        effective_area=5e-13,
        refractive_index=1.45,
        group_velocity=2.0e8,
        phase_velocity=2.07e8,
        omega_s=w,
        omega_i=w,
        omega_p=w,  # SFWM pump at the degenerate carrier
        chi3=2.5e-22,
    )
    assert est.delta == 2
    assert est.zeta_s == pytest.approx(2.0 * est.zeta_p, rel=1e-12)
    assert est.zeta_i == pytest.approx(est.zeta_s, rel=1e-12)
    assert est.gamma_xpm_s > 0


def test_estimate_gamma_requires_one_process():
    kwargs = dict(effective_area=1e-12, refractive_index=2.0, group_velocity=1e8,
                  phase_velocity=1.5e8, omega_s=1e15, omega_i=1e15, omega_p=2e15)
    with pytest.raises(ConfigurationError):
        estimate_gamma(**kwargs)
    with pytest.raises(ConfigurationError):
        estimate_gamma(chi2=1e-11, chi3=1e-22, **kwargs)
