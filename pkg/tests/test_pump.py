"""Pump-field oracles: Gaussian closed forms and quadrature identities."""

import numpy as np
import pytest

from tbsim import ConfigurationError, PiecewiseConstant, PumpField, PumpSpec


def make_pump(n_points=2048, **kwargs):
    defaults = dict(n_photons=5.0, sigma=1.0)
    defaults.update(kwargs)
    return PumpField.gaussian(PumpSpec(**defaults), n_points=n_points)


def test_envelope_norm_equals_photon_number():
    pump = make_pump(n_photons=7.5, sigma=0.7, v_p=1.3, z0=0.4)
    assert pump.n_photons_quadrature == pytest.approx(7.5, rel=1e-10)


def test_beta_p_closed_form_spdc():
    """delta=1, no SPM: beta_p is an explicit Gaussian in the detuning."""
    np_, sigma, v_p, z0, t0, hwp = 3.0, 0.8, 1.2, 0.3, 0.5, 2.0
    pump = make_pump(n_photons=np_, sigma=sigma, v_p=v_p, z0=z0, t0=t0, hbar_omega_p=hwp)
    nu = np.linspace(-4.0, 4.0, 61)
    w = v_p / sigma
    expected = (
        np.exp(1j * nu * t0)
        * np.sqrt(hwp * np_)
        * (w**2 / np.pi) ** 0.25
        / np.sqrt(v_p)
        * np.exp(-1j * nu * z0 / v_p)
        * np.exp(-(nu**2) / (2.0 * sigma**2))
    )
    np.testing.assert_allclose(pump.beta_p(0.0, nu), expected, atol=1e-8 * abs(expected).max())


def test_beta_p_parseval_spdc():
    pump = make_pump(n_photons=4.0)
    nu = np.linspace(-40.0, 40.0, 4001)
    total = np.trapezoid(np.abs(pump.beta_p(0.0, nu)) ** 2, nu)
    assert total == pytest.approx(pump.pulse_energy, rel=1e-6)


def test_energy_spectrum_closed_form():
    np_, sigma, z0, t0 = 2.0, 1.4, -0.2, 0.1
    pump = make_pump(n_photons=np_, sigma=sigma, z0=z0, t0=t0)
    nu = np.linspace(-6.0, 6.0, 41)
    expected = np_ * np.exp(1j * nu * (t0 - z0)) * np.exp(-(nu**2) / (4.0 * sigma**2))
    np.testing.assert_allclose(pump.energy_spectrum(nu), expected, atol=1e-10 * np_)


def test_energy_spectrum_hermitian_and_zero_value():
    pump = make_pump(n_photons=3.0, z0=0.5, t0=-0.3)
    nu = np.linspace(-5.0, 5.0, 201)
    e = pump.energy_spectrum(nu)
    np.testing.assert_allclose(e, np.conj(e[::-1]), atol=1e-12)
    assert pump.energy_spectrum(np.array([0.0]))[0] == pytest.approx(pump.pulse_energy)


def test_spm_preserves_beta_norm_along_z():
    """SPM only rotates phases, so the spectral norm of beta_p is z-independent."""
    spm = PiecewiseConstant.top_hat(-5.0, 5.0, 0.4)
    pump = make_pump(n_points=8192, n_photons=6.0, zeta_p_profile=spm)
    assert pump.has_spm
    nu = np.linspace(-60.0, 60.0, 6001)
    norms = [np.trapezoid(np.abs(pump.beta_p(z, nu)) ** 2, nu) for z in (-5.0, -1.0, 0.0, 2.5, 5.0)]
    np.testing.assert_allclose(norms, norms[0], rtol=1e-6)


def test_spm_phase_zero_without_profile():
    pump = make_pump()
    assert not pump.has_spm
    assert pump.spm_phase(2.0, -1.0) == 0.0


def test_sfwm_squares_the_envelope():
    """delta=2: beta_p carries Lambda^2, so its width shrinks by sqrt(2)."""
    pump1 = make_pump(n_photons=2.0, delta=1)
    pump2 = make_pump(n_photons=2.0, delta=2)
    nu = np.linspace(-5.0, 5.0, 401)
    b1, b2 = np.abs(pump1.beta_p(0.0, nu)), np.abs(pump2.beta_p(0.0, nu))
    w1 = np.sqrt(np.trapezoid(nu**2 * b1**2, nu) / np.trapezoid(b1**2, nu))
    w2 = np.sqrt(np.trapezoid(nu**2 * b2**2, nu) / np.trapezoid(b2**2, nu))
    assert w2 == pytest.approx(np.sqrt(2.0) * w1, rel=1e-3)


def test_truncated_envelope_warns():
    with pytest.warns(UserWarning):
        PumpField.gaussian(PumpSpec(n_photons=1.0, sigma=1.0), width_factor=2.0)


@pytest.mark.parametrize("bad", [dict(n_photons=-1.0), dict(sigma=0.0), dict(v_p=-2.0),
                                 dict(delta=3)])
def test_invalid_pump_spec_rejected(bad):
    kwargs = dict(n_photons=1.0, sigma=1.0)
    kwargs.update(bad)
    with pytest.raises(ConfigurationError):
        PumpSpec(**kwargs)
