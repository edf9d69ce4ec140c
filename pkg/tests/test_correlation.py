import numpy as np
import pytest

from leaky_cavity.cavity import CavityParams, occupation, occupation_longtime
from leaky_cavity.correlation import (
    CONVENTIONS,
    CorrelationSeries,
    coefficients,
    hermitian_extension,
    stationary_correlation,
    two_time_correlation,
)
from leaky_cavity.dipole import DipoleSpectrum, DriveParams, FluctuationModel


def comb_case():
    drive = DriveParams(omega=1.0, n_max=5)
    spec = DipoleSpectrum(drive=drive,
                          coeffs=[0.0, 0.9, 0.0, 0.4 * np.exp(0.7j), 0.0, 0.15])
    params = CavityParams(omega_q=3.0, g_q=0.05, kappa=0.1)
    return params, spec, FluctuationModel(0.2)


def test_coefficients_resonant_line():
    drive = DriveParams(omega=1.0, n_max=1)
    spec = DipoleSpectrum(drive=drive, coeffs=[0.0, 0.7j])
    params = CavityParams(omega_q=1.0, g_q=0.05, kappa=0.1)
    coeff = coefficients(params, spec, FluctuationModel(0.4))
    assert coeff.a_n[1] == pytest.approx(params.g_q * 0.7j / params.kappa)
    assert coeff.c_delta == pytest.approx(0.4 * params.g_q ** 2 / (2 * params.kappa))


def test_vacuum_reference_time_gives_zero():
    params, spec, fluct = comb_case()
    tau = np.linspace(0.0, 40.0, 200)
    for convention in CONVENTIONS:
        series = two_time_correlation(params, spec, fluct, 0.0, tau, convention)
        assert np.max(np.abs(series.values)) == 0.0


def test_tau_zero_matches_occupation_only_in_consistent_convention():
    params, spec, fluct = comb_case()
    t = 12.3
    occ = occupation(params, spec, fluct, t, mode="full")
    consistent = two_time_correlation(params, spec, fluct, t, [0.0],
                                      "tau-zero-consistent")
    written = two_time_correlation(params, spec, fluct, t, [0.0], "as-written")
    assert consistent.values[0].real == pytest.approx(float(occ.total[0]), rel=1e-12)
    assert abs(consistent.values[0].imag) < 1e-15
    # the published form counts the noise occupation twice at tau = 0
    assert written.values[0].real == pytest.approx(
        float(occ.coherent[0] + 2.0 * occ.noise[0]), rel=1e-12)


def test_stationary_tau_zero_matches_longtime_occupation():
    params, spec, fluct = comb_case()
    series = stationary_correlation(params, spec, fluct, [0.0], "tau-zero-consistent")
    assert series.values[0].real == pytest.approx(
        occupation_longtime(params, spec, fluct), rel=1e-12)


@pytest.mark.parametrize("convention", CONVENTIONS)
def test_two_time_approaches_stationary(convention):
    # pointwise the finite-t correlator keeps oscillating N != M cross terms;
    # averaging the reference time over one drive period removes them and
    # leaves exactly the stationary form.
    params, spec, fluct = comb_case()
    tau = np.linspace(0.0, 30.0, 301)
    t0 = 40.0 / params.kappa
    t_samples = t0 + np.linspace(0.0, spec.drive.period, 65)
    stack = np.stack([
        two_time_correlation(params, spec, fluct, t, tau, convention).values
        for t in t_samples
    ])
    averaged = np.trapezoid(stack, t_samples, axis=0) / spec.drive.period
    limit = stationary_correlation(params, spec, fluct, tau, convention)
    scale = np.max(np.abs(limit.values))
    assert np.max(np.abs(averaged - limit.values)) / scale < 1e-9


def test_stationary_noise_only():
    params = CavityParams(omega_q=2.0, g_q=0.3, kappa=0.1)
    spec = DipoleSpectrum(drive=DriveParams(1.0, 1), coeffs=[0.0, 0.0])
    fluct = FluctuationModel(0.5)
    tau = np.linspace(0.0, 50.0, 400)
    c_delta = fluct.delta * params.g_q ** 2 / (2 * params.kappa)
    for convention, s in (("as-written", 2.0), ("tau-zero-consistent", 1.0)):
        series = stationary_correlation(params, spec, fluct, tau, convention)
        expected = s * c_delta * np.exp(-(1j * params.omega_q + params.kappa) * tau)
        assert np.allclose(series.values, expected, rtol=1e-12, atol=1e-15)


def test_stationary_coherent_part_has_constant_modulus():
    drive = DriveParams(omega=1.0, n_max=1)
    spec = DipoleSpectrum(drive=drive, coeffs=[0.0, 1.0])
    params = CavityParams(omega_q=1.0, g_q=0.05, kappa=0.1)
    tau = np.linspace(0.0, 100.0, 500)
    series = stationary_correlation(params, spec, FluctuationModel(0.0), tau,
                                    "tau-zero-consistent")
    mods = np.abs(series.values)
    assert np.allclose(mods, mods[0], rtol=1e-12)
    # elastic line: phase advances at the drive frequency
    assert np.allclose(series.values, mods[0] * np.exp(-1j * drive.omega * tau))


def test_hermitian_extension():
    params, spec, fluct = comb_case()
    tau = np.linspace(0.0, 10.0, 101)
    series = stationary_correlation(params, spec, fluct, tau, "tau-zero-consistent")
    full_tau, full_vals = hermitian_extension(series)
    assert full_tau.size == 2 * tau.size - 1
    assert np.allclose(full_tau, -full_tau[::-1])
    assert np.allclose(full_vals, np.conj(full_vals[::-1]))
    shifted = CorrelationSeries(tau=tau + 1.0, values=series.values,
                                convention=series.convention)
    with pytest.raises(ValueError, match="tau = 0"):
        hermitian_extension(shifted)


def test_error_contracts():
    params, spec, fluct = comb_case()
    with pytest.raises(ValueError, match="convention"):
        stationary_correlation(params, spec, fluct, [0.0], "halved")
    with pytest.raises(ValueError, match="nonnegative"):
        stationary_correlation(params, spec, fluct, [-1.0], "as-written")
    with pytest.raises(ValueError, match="t must be nonnegative"):
        two_time_correlation(params, spec, fluct, -1.0, [0.0], "as-written")
    with pytest.raises(ValueError, match="equal length"):
        CorrelationSeries(tau=[0.0, 1.0], values=[1.0], convention="as-written")


def test_stationary_flag():
    params, spec, fluct = comb_case()
    tau = np.array([0.0, 1.0])
    assert stationary_correlation(params, spec, fluct, tau, "as-written").stationary
    finite = two_time_correlation(params, spec, fluct, 3.0, tau, "as-written")
    assert not finite.stationary
    assert finite.t == 3.0
