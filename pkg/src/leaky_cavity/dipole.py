"""Classical dipole signal: harmonic Fourier decomposition and white-noise fluctuations.

The mean dipole lives on the harmonic comb omega_N = N*omega and is stored as
complex coefficients d_N for N >= 0 only; negative harmonics follow from
d(-omega_N) = conj(d(omega_N)) since the signal is real.  Fluctuations are a
zero-mean delta-correlated noise of magnitude delta, discretized as Gaussian
increments of variance delta/dt.
"""

from dataclasses import dataclass, field

import numpy as np

# Relative slack when deciding whether a sampled window spans whole periods.
_PERIOD_TOL = 1e-9


@dataclass(frozen=True)
class DriveParams:
    """Fundamental drive frequency and harmonic cutoff."""

    omega: float = 1.0
    n_max: int = 1

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"n_max must be a positive integer, got {self.n_max}")

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega

    def harmonics(self) -> np.ndarray:
        """Frequencies omega_N = N*omega for N = 0..n_max."""
        return self.omega * np.arange(self.n_max + 1, dtype=float)


@dataclass(frozen=True)
class DipoleSpectrum:
    """Complex harmonic coefficients d_N of the mean dipole, N = 0..n_max."""

    drive: DriveParams
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size != self.drive.n_max + 1:
            raise ValueError(
                f"need {self.drive.n_max + 1} coefficients (N = 0..n_max), got shape {c.shape}"
            )
        object.__setattr__(self, "coeffs", c)

    def harmonics(self) -> np.ndarray:
        return self.drive.harmonics()

    def positive_frequency_signal(self, t):
        """Analytic (positive-frequency) signal sum_N d_N exp(-i omega_N t).

        This is the part of the drive kept by the rotating-wave-like truncation;
        all closed forms in :mod:`leaky_cavity.cavity` are driven by it.
        """
        t = np.asarray(t, dtype=float)
        phases = np.exp(-1j * np.outer(t, self.harmonics()))
        out = phases @ self.coeffs
        return out if t.ndim else complex(out)

    def to_dict(self) -> dict:
        return {
            "omega": float(self.drive.omega),
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
            # DC coefficient is kept; flagged because its retention in spectra
            # is a modeling choice, not a mathematical necessity.
            "dc_retained": True,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "DipoleSpectrum":
        coeffs = np.array([complex(re, im) for re, im in doc["coeffs"]])
        drive = DriveParams(omega=float(doc["omega"]), n_max=len(coeffs) - 1)
        return cls(drive=drive, coeffs=coeffs)


@dataclass(frozen=True)
class FluctuationModel:
    """Magnitude delta of the delta-correlated dipole noise, <dd dd> = delta*delta(t-t')."""

    delta: float = 0.0

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"delta must be nonnegative, got {self.delta}")


@dataclass(frozen=True)
class TimeSeries:
    """Samples on a strictly increasing time grid."""

    times: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values)
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if t.size >= 2 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.times.size

    @property
    def span(self) -> float:
        return float(self.times[-1] - self.times[0])

    def uniform_dt(self, rtol: float = 1e-9) -> float:
        """Grid spacing, raising if the grid is not uniform."""
        steps = np.diff(self.times)
        dt = float(steps.mean())
        if steps.size and np.max(np.abs(steps - dt)) > rtol * dt:
            raise ValueError("time grid is not uniform")
        return dt


def fourier_decompose(signal: TimeSeries, drive: DriveParams) -> DipoleSpectrum:
    """Project a real dipole series onto the harmonic comb.

    d_N = (1/T) * integral_0^T d(t) exp(+i omega_N t) dt, trapezoidal rule on
    the sampled window.  The window must span a whole number of drive periods
    and resolve the highest requested harmonic.
    """
    dt = signal.uniform_dt()
    span = signal.span
    n_periods = span / drive.period
    if abs(n_periods - round(n_periods)) > _PERIOD_TOL * max(1.0, n_periods):
        raise ValueError(
            f"incommensurate window: span {span} is {n_periods} periods, expected an integer"
        )
    n_periods = int(round(n_periods))
    if n_periods < 1:
        raise ValueError("incommensurate window: signal spans less than one period")
    samples_per_period = (len(signal) - 1) / n_periods
    if samples_per_period < 2 * drive.n_max + 1:
        raise ValueError(
            f"aliasing risk: {samples_per_period:.1f} samples per period cannot resolve "
            f"harmonic {drive.n_max} (need at least {2 * drive.n_max + 1})"
        )
    t = signal.times - signal.times[0]
    vals = np.asarray(signal.values, dtype=float)
    coeffs = np.empty(drive.n_max + 1, dtype=complex)
    for n in range(drive.n_max + 1):
        integrand = vals * np.exp(1j * n * drive.omega * t)
        coeffs[n] = np.trapezoid(integrand, t) / span
    return DipoleSpectrum(drive=drive, coeffs=coeffs)


def synthesize_mean_dipole(spectrum: DipoleSpectrum, times) -> TimeSeries:
    """Reconstruct the real mean dipole sum_N d_N exp(-i omega_N t) over all N.

    Conjugate symmetry folds the negative harmonics in:
    d(t) = sum_{N>=0} 2 Re[d_N exp(-i omega_N t)] - Re[d_0].
    """
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(times, spectrum.harmonics()))
    vals = 2.0 * np.real(phases @ spectrum.coeffs) - np.real(spectrum.coeffs[0])
    return TimeSeries(times=times, values=vals)


def sample_fluctuation(model: FluctuationModel, times, seed) -> TimeSeries:
    """Draw one realization of the discretized white noise on a uniform grid.

    Each sample is an independent N(0, delta/dt) variate, the increment-style
    discretization whose correlation tends to delta * delta(t-t') as dt -> 0.
    Identical seeds give identical series.
    """
    series = TimeSeries(times=np.asarray(times, dtype=float), values=np.zeros(len(times)))
    dt = series.uniform_dt()
    rng = np.random.default_rng(seed)
    vals = rng.normal(0.0, np.sqrt(model.delta / dt), size=len(series))
    return TimeSeries(times=series.times, values=vals)


def clipped_cosine_signal(drive: DriveParams, times, amplitude: float = 1.0,
                          clip_level: float = 0.5) -> TimeSeries:
    """Toy anharmonic dipole: a cosine clipped at +-clip_level.

    Convenience generator of an odd-harmonic comb for demos and tests; it makes
    no claim of modeling a physical strong-field dipole.
    """
    if clip_level <= 0:
        raise ValueError("clip_level must be positive")
    t = np.asarray(times, dtype=float)
    raw = amplitude * np.cos(drive.omega * t)
    return TimeSeries(times=t, values=np.clip(raw, -clip_level, clip_level))
