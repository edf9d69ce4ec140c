"""Closed-form Langevin observables of the damped cavity mode.

All expressions assume vacuum initial conditions for the cavity and the
environment; the drive enters through the positive-frequency part of the mean
dipole (rotating-wave-like truncation), and dipole white noise adds an
incoherent occupation that saturates at delta*g_q^2/(2*kappa).
"""

from dataclasses import dataclass, field

import numpy as np

from .dipole import DipoleSpectrum, FluctuationModel

_KAPPA_CONSISTENCY_RTOL = 1e-12


def kappa_from_coupling(g0: float, c: float) -> float:
    """Cavity damping rate kappa = g0^2 * pi / c for a flat bath coupling."""
    if g0 <= 0 or c <= 0:
        raise ValueError(f"g0 and c must be positive, got g0={g0}, c={c}")
    return g0 * g0 * np.pi / c


@dataclass(frozen=True)
class CavityParams:
    """One cavity mode: frequency omega_q, dipole coupling g_q, damping kappa.

    kappa may be given directly or derived from the bath coupling (g0, c); if
    both are supplied they must agree.
    """

    omega_q: float
    g_q: float
    kappa: float | None = None
    g0: float | None = None
    c: float | None = None
    q: int | None = None

    def __post_init__(self):
        if self.omega_q <= 0:
            raise ValueError(f"omega_q must be positive, got {self.omega_q}")
        if (self.g0 is None) != (self.c is None):
            raise ValueError("g0 and c must be given together")
        if self.g0 is not None:
            derived = kappa_from_coupling(self.g0, self.c)
            if self.kappa is None:
                object.__setattr__(self, "kappa", derived)
            elif abs(self.kappa - derived) > _KAPPA_CONSISTENCY_RTOL * derived:
                raise ValueError(
                    f"kappa={self.kappa} inconsistent with g0^2*pi/c={derived}"
                )
        if self.kappa is None:
            raise ValueError("either kappa or (g0, c) is required")
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")


@dataclass(frozen=True)
class OccupationCurve:
    """Photon number split into coherent and noise parts; total is their sum."""

    times: np.ndarray = field(repr=False)
    coherent: np.ndarray = field(repr=False)
    noise: np.ndarray = field(repr=False)

    @property
    def total(self) -> np.ndarray:
        return self.coherent + self.noise


def _line_responses(params: CavityParams, spectrum: DipoleSpectrum, t: np.ndarray):
    """Per-harmonic response d_N * (exp(i(omega_q-omega_N)t) - exp(-kappa t)) / (i(omega_q-omega_N)+kappa).

    This is exp(-(i omega_q + kappa) t) times the drive integral
    int_0^t exp((i omega_q + kappa)t') d_N exp(-i omega_N t') dt', written in a
    form that stays finite for arbitrarily large kappa*t.
    """
    detuning = params.omega_q - spectrum.harmonics()
    denom = 1j * detuning + params.kappa
    osc = np.exp(1j * np.outer(t, detuning))
    decay = np.exp(-params.kappa * t)[:, None]
    return (osc - decay) * (spectrum.coeffs / denom)


def mode_amplitude(params: CavityParams, spectrum: DipoleSpectrum, t):
    """Coherent amplitude <a_q^dagger(t)> from vacuum.

    Equals sum_N A_N^* [exp(i omega_N t) - exp(i omega_q t) exp(-kappa t)] with
    A_N^* = g_q conj(d_N) / (-i(omega_q - omega_N) + kappa); zero at t = 0 and
    oscillating at the dipole harmonics once kappa*t >> 1.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    resp = _line_responses(params, spectrum, t_arr).sum(axis=1)
    out = params.g_q * np.conj(resp) * np.exp(1j * params.omega_q * t_arr)
    return out if np.ndim(t) else complex(out[0])


def occupation(params: CavityParams, spectrum: DipoleSpectrum,
               fluct: FluctuationModel, t, mode: str = "full") -> OccupationCurve:
    """Photon occupation <a_q^dagger a_q>(t), coherent plus dipole-noise parts.

    mode "full" keeps the N != M interference terms of the double harmonic sum
    (the coherent part is then exactly |mode_amplitude|^2); mode "diagonal"
    keeps only N = M, the truncation valid after averaging out fast
    oscillations.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr < 0):
        raise ValueError("t must be nonnegative")
    resp = _line_responses(params, spectrum, t_arr)
    if mode == "full":
        coherent = params.g_q ** 2 * np.abs(resp.sum(axis=1)) ** 2
    elif mode == "diagonal":
        coherent = params.g_q ** 2 * (np.abs(resp) ** 2).sum(axis=1)
    else:
        raise ValueError(f"mode must be 'full' or 'diagonal', got {mode!r}")
    noise = dipole_noise_occupation(params, fluct, t_arr)
    return OccupationCurve(times=t_arr, coherent=coherent, noise=noise)


def dipole_noise_occupation(params: CavityParams, fluct: FluctuationModel, t):
    """Incoherent occupation <D^dagger D>(t) = delta g_q^2/(2 kappa) (1 - exp(-2 kappa t))."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("t must be nonnegative")
    out = fluct.delta * params.g_q ** 2 / (2.0 * params.kappa) * (
        1.0 - np.exp(-2.0 * params.kappa * t_arr)
    )
    return out if np.ndim(t) else float(out)


def occupation_longtime(params: CavityParams, spectrum: DipoleSpectrum,
                        fluct: FluctuationModel) -> float:
    """Stationary occupation g_q^2 [sum_N |d_N|^2/((omega_q-omega_N)^2+kappa^2) + delta/(2 kappa)].

    The balance between drive gain and cavity loss; the N != M cross terms
    average to zero in this limit.
    """
    if params.kappa <= 0:
        raise ValueError("no stationary state: kappa must be positive")
    detuning = params.omega_q - spectrum.harmonics()
    coherent = np.sum(np.abs(spectrum.coeffs) ** 2 / (detuning ** 2 + params.kappa ** 2))
    return float(params.g_q ** 2 * (coherent + fluct.delta / (2.0 * params.kappa)))
