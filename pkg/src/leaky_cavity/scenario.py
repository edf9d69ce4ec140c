"""Scenario configuration: parsing and validation of the YAML front-end format.

A scenario bundles the drive, dipole, fluctuation and cavity parameters with
the evaluation grids, the convention tags, and the oracle settings.  Every
invariant violation is reported with the path of the offending field.
"""

import os
from dataclasses import dataclass, field

import numpy as np
import yaml

from .cavity import CavityParams
from .correlation import CONVENTIONS
from .dipole import DipoleSpectrum, DriveParams, FluctuationModel, fourier_decompose
from .spectrum import NORMALIZATIONS

KNOWN_OUTPUTS = (
    "dipole", "occupation", "correlation", "spectrum", "power",
    "amplitude_oracle", "noise_oracle", "bath_oracle",
)


class ScenarioError(ValueError):
    """Invalid configuration; ``errors`` maps field paths to messages."""

    def __init__(self, errors: dict):
        self.errors = dict(errors)
        super().__init__("; ".join(f"{k}: {v}" for k, v in self.errors.items()))


@dataclass(frozen=True)
class OracleSettings:
    n_trials: int = 2000
    seed: int | None = None
    bath_modes: int = 2000
    bath_half_width_kappas: float = 40.0


@dataclass(frozen=True)
class ScenarioConfig:
    drive: DriveParams
    spectrum: DipoleSpectrum
    fluctuation: FluctuationModel
    cavity: CavityParams
    t_grid: np.ndarray = field(repr=False)
    tau_grid: np.ndarray = field(repr=False)
    omega_grid: np.ndarray | None = field(repr=False, default=None)
    correlation_convention: str = "tau-zero-consistent"
    normalization: str = "as-written"
    oracle: OracleSettings = field(default_factory=OracleSettings)
    outputs: tuple = KNOWN_OUTPUTS[:5]


def _grid(doc, path, errors, required=True):
    if doc is None:
        if required:
            errors[path] = "missing grid"
        return None
    stop = doc.get("stop")
    num = doc.get("num")
    if stop is None or num is None:
        errors[path] = "grid needs 'stop' and 'num'"
        return None
    if stop <= 0 or int(num) != num or num < 2:
        errors[path] = f"grid needs stop > 0 and integer num >= 2, got stop={stop}, num={num}"
        return None
    return np.linspace(0.0, float(stop), int(num))


def load_scenario(path) -> ScenarioConfig:
    """Parse and validate a scenario file; raises ScenarioError on any violation."""
    with open(path) as fh:
        doc = yaml.safe_load(fh)
    if not isinstance(doc, dict):
        raise ScenarioError({"<root>": "config must be a mapping"})
    errors: dict = {}

    drive = None
    try:
        dd = doc.get("drive") or {}
        drive = DriveParams(omega=float(dd.get("omega", 1.0)), n_max=dd.get("n_max", 1))
    except (TypeError, ValueError) as exc:
        errors["drive"] = str(exc)

    spectrum = None
    dip = doc.get("dipole") or {}
    if ("coeffs" in dip) == ("series" in dip):
        errors["dipole"] = "give exactly one of 'coeffs' (inline) or 'series' (CSV path)"
    elif drive is not None:
        try:
            if "coeffs" in dip:
                coeffs = np.array([complex(re, im) for re, im in dip["coeffs"]])
                spectrum = DipoleSpectrum(drive=drive, coeffs=coeffs)
            else:
                from .io import read_timeseries_csv
                series_path = dip["series"]
                if not os.path.isabs(series_path):
                    series_path = os.path.join(os.path.dirname(os.path.abspath(path)),
                                               series_path)
                spectrum = fourier_decompose(read_timeseries_csv(series_path), drive)
        except OSError as exc:
            errors["dipole.series"] = str(exc)
        except (TypeError, ValueError) as exc:
            errors["dipole"] = str(exc)

    fluct = None
    try:
        fluct = FluctuationModel(delta=float((doc.get("fluctuation") or {}).get("delta", 0.0)))
    except (TypeError, ValueError) as exc:
        errors["fluctuation.delta"] = str(exc)

    cavity = None
    cav = doc.get("cavity") or {}
    has_kappa = cav.get("kappa") is not None
    has_bath = cav.get("g0") is not None or cav.get("c") is not None
    if has_kappa and has_bath:
        errors["cavity.kappa"] = (
            "give exactly one of 'kappa' or ('g0', 'c'); "
            "found kappa together with g0/c"
        )
    elif not has_kappa and not has_bath:
        errors["cavity"] = "give exactly one of 'kappa' or ('g0', 'c')"
    else:
        try:
            cavity = CavityParams(
                omega_q=float(cav.get("omega_q", 0.0)),
                g_q=float(cav.get("g_q", 0.0)),
                kappa=cav.get("kappa"),
                g0=cav.get("g0"),
                c=cav.get("c"),
                q=cav.get("q"),
            )
        except (TypeError, ValueError) as exc:
            errors["cavity"] = str(exc)

    grids = doc.get("grids") or {}
    t_grid = _grid(grids.get("t"), "grids.t", errors)
    tau_grid = _grid(grids.get("tau"), "grids.tau", errors)
    omega_grid = _grid(grids.get("omega"), "grids.omega", errors, required=False)

    conv = doc.get("conventions") or {}
    correlation_convention = conv.get("correlation", "tau-zero-consistent")
    if correlation_convention not in CONVENTIONS:
        errors["conventions.correlation"] = (
            f"must be one of {CONVENTIONS}, got {correlation_convention!r}"
        )
    normalization = conv.get("normalization", "as-written")
    if normalization not in NORMALIZATIONS:
        errors["conventions.normalization"] = (
            f"must be one of {NORMALIZATIONS}, got {normalization!r}"
        )

    osettings = OracleSettings()
    odoc = doc.get("oracle") or {}
    try:
        osettings = OracleSettings(
            n_trials=int(odoc.get("n_trials", 2000)),
            seed=odoc.get("seed"),
            bath_modes=int(odoc.get("bath_modes", 2000)),
            bath_half_width_kappas=float(odoc.get("bath_half_width_kappas", 40.0)),
        )
        if osettings.n_trials < 1:
            errors["oracle.n_trials"] = "must be at least 1"
        if osettings.bath_modes < 100:
            errors["oracle.bath_modes"] = "must be at least 100 for a meaningful bath"
    except (TypeError, ValueError) as exc:
        errors["oracle"] = str(exc)

    outputs = tuple(doc.get("outputs") or KNOWN_OUTPUTS[:5])
    for name in outputs:
        if name not in KNOWN_OUTPUTS:
            errors[f"outputs.{name}"] = f"unknown artifact; known: {KNOWN_OUTPUTS}"

    if "noise_oracle" in outputs and osettings.seed is None:
        errors["oracle.seed"] = "seed is mandatory when Monte-Carlo output is requested"

    if cavity is not None and "bath_oracle" in outputs:
        n, w = osettings.bath_modes, osettings.bath_half_width_kappas * cavity.kappa
        recurrence = 2.0 * np.pi * (n - 1) / (2.0 * w)
        horizon = 5.0 / cavity.kappa
        if recurrence <= horizon:
            errors["oracle.bath_modes"] = (
                f"undersized bath: recurrence time {recurrence:.3g} does not exceed "
                f"the kappa*t = 5 horizon {horizon:.3g}; increase bath_modes"
            )

    if errors:
        raise ScenarioError(errors)
    return ScenarioConfig(
        drive=drive, spectrum=spectrum, fluctuation=fluct, cavity=cavity,
        t_grid=t_grid, tau_grid=tau_grid, omega_grid=omega_grid,
        correlation_convention=correlation_convention, normalization=normalization,
        oracle=osettings, outputs=outputs,
    )
