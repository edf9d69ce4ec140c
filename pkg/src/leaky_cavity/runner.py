"""Scenario execution: compute the requested artifacts and write a manifest."""

import hashlib
import json
import os

import numpy as np

from . import io as lcio
from .cavity import mode_amplitude, occupation
from .correlation import stationary_correlation, two_time_correlation
from .dipole import synthesize_mean_dipole
from .oracle import BathDiscretization, continuum_pole, discrete_bath_decay, \
    integrate_amplitude_ode, monte_carlo_noise
from .scenario import ScenarioConfig, load_scenario
from .spectrum import integrated_power, power_spectrum


def _sha256(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _oracle_step(config: ScenarioConfig) -> float:
    top = max(config.cavity.omega_q, config.spectrum.harmonics()[-1],
              config.cavity.kappa)
    return 0.005 / top


def run(config_path, output_dir, workers: int = 1, seed_override: int | None = None) -> dict:
    """Run a scenario and return the manifest (also written to manifest.json).

    Partial outputs are removed if any artifact fails.
    """
    config = load_scenario(config_path)
    seed = seed_override if seed_override is not None else config.oracle.seed
    os.makedirs(output_dir, exist_ok=True)
    written = []

    def target(name):
        path = os.path.join(output_dir, name)
        written.append(path)
        return path

    checks = {}
    try:
        if "dipole" in config.outputs:
            lcio.write_dipole_spectrum_json(target("dipole_spectrum.json"), config.spectrum)
            lcio.write_timeseries_csv(
                target("mean_dipole.csv"),
                synthesize_mean_dipole(config.spectrum, config.t_grid), label="d")
        if "occupation" in config.outputs:
            curve = occupation(config.cavity, config.spectrum, config.fluctuation,
                               config.t_grid, mode="full")
            lcio.write_occupation_csv(target("occupation.csv"), curve)
        if "correlation" in config.outputs:
            stat = stationary_correlation(config.cavity, config.spectrum,
                                          config.fluctuation, config.tau_grid,
                                          config.correlation_convention)
            lcio.write_correlation_csv(target("stationary_correlation.csv"), stat)
            two = two_time_correlation(config.cavity, config.spectrum,
                                       config.fluctuation, float(config.t_grid[-1]),
                                       config.tau_grid, config.correlation_convention)
            lcio.write_correlation_csv(target("two_time_correlation.csv"), two)
        if "spectrum" in config.outputs:
            spec = power_spectrum(config.cavity, config.spectrum, config.fluctuation,
                                  config.omega_grid, config.normalization)
            lcio.write_spectrum_csv(target("spectrum_lines.csv"),
                                    target("spectrum_continuum.csv"), spec)
            lcio.write_spectrum_json(target("spectrum.json"), spec)
        if "power" in config.outputs:
            report = integrated_power(config.cavity, config.spectrum,
                                      config.fluctuation, config.normalization)
            lcio.write_power_report_json(target("power_report.json"), report)
        if "amplitude_oracle" in config.outputs:
            h = _oracle_step(config)
            t = np.arange(0.0, float(config.t_grid[-1]) + h / 2, h)
            ode = integrate_amplitude_ode(config.cavity, config.spectrum, t)
            closed = mode_amplitude(config.cavity, config.spectrum, t)
            scale = float(np.max(np.abs(closed)))
            if scale > 0:
                checks["amplitude_oracle_max_rel_deviation"] = float(
                    np.max(np.abs(np.conj(ode.values) - closed)) / scale)
            lcio.write_timeseries_csv(target("amplitude_oracle.csv"), ode, label="alpha")
        if "noise_oracle" in config.outputs:
            kappa = config.cavity.kappa
            dt = 0.02 / max(config.cavity.omega_q, kappa)
            t = np.arange(0.0, 20.0 / kappa + dt / 2, dt)
            tau = t[t <= 3.0 / kappa][:: max(1, t.size // 200)]
            ens = monte_carlo_noise(config.cavity, config.fluctuation, t, tau_grid=tau,
                                    n_trials=config.oracle.n_trials,
                                    seed=seed, n_workers=workers)
            closed = config.fluctuation.delta * config.cavity.g_q ** 2 / (2 * kappa) * (
                1.0 - np.exp(-2.0 * kappa * t))
            pulls = np.abs(ens.mean_occupation[1:] - closed[1:]) / np.where(
                ens.stderr_occupation[1:] > 0, ens.stderr_occupation[1:], np.inf)
            checks["noise_oracle_max_pull_stderr"] = float(np.max(pulls))
            lcio.write_ensemble_csv(target("noise_oracle.csv"), ens, which="occupation")
            lcio.write_ensemble_csv(target("noise_oracle_two_time.csv"), ens,
                                    which="two_time")
        if "bath_oracle" in config.outputs:
            kappa = config.cavity.kappa
            bath = BathDiscretization.for_damping(
                kappa, config.cavity.omega_q, config.oracle.bath_modes,
                config.oracle.bath_half_width_kappas * kappa)
            t = np.linspace(0.0, 5.0 / kappa, 256)
            result = discrete_bath_decay(bath, config.cavity, t)
            rate, residue = continuum_pole(bath)
            target_decay = residue * np.exp(-rate * t)
            checks["bath_oracle_max_rel_deviation"] = float(
                np.max(np.abs(np.abs(result.series.values) - target_decay) / target_decay))
            checks["bath_oracle_norm_error"] = result.norm_error
            lcio.write_timeseries_csv(target("bath_decay.csv"), result.series,
                                      label="alpha")
    except Exception:
        for path in written:
            if os.path.exists(path):
                os.remove(path)
        raise

    manifest = {
        "config_sha256": _sha256(config_path),
        "files": {os.path.basename(p): _sha256(p) for p in written},
        "checks": checks,
    }
    with open(os.path.join(output_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest
