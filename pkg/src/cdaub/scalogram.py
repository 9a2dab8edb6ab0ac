"""Continuous wavelet transform with a closed-form kernel, and tone detection.

Scales are dimensionless (in samples of ``sampling_dt``): at scale ``a`` the
kernel is stretched to ``psi(t / (a * sampling_dt))``, so its centre
frequency ``Fc`` (cycles per kernel time unit) maps to the pseudo-frequency
``Fc / (a * sampling_dt)``.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import eval_gated, sample_gated
from .errors import BadInput, BadScales
from .model import SumOfSines
from .spectrum import dft_oracle
from .waveform import SampledWaveform, fmt

DEFAULT_NUM_SCALES = 64


@dataclass(frozen=True, eq=False)
class ScaleGrid:
    scales: np.ndarray
    sampling_dt: float

    def __post_init__(self):
        scales = np.atleast_1d(np.asarray(self.scales, dtype=float))
        if scales.size == 0:
            raise BadScales("scale grid is empty")
        if np.any(scales <= 0) or np.any(np.diff(scales) <= 0):
            raise BadScales("scales must be positive and strictly ascending")
        if not self.sampling_dt > 0:
            raise BadScales("sampling_dt must be positive")
        object.__setattr__(self, "scales", scales)


@dataclass(frozen=True, eq=False)
class ScalogramGrid:
    scales: np.ndarray
    times: np.ndarray
    coefficients: np.ndarray
    #: columns whose kernel reaches past the end of the signal at the largest scale
    edge_columns: np.ndarray = field(default=None)

    @property
    def energy(self) -> np.ndarray:
        return self.coefficients**2


@dataclass(frozen=True)
class Tone:
    frequency: float
    energy: float


@dataclass(frozen=True)
class ToneReport:
    Fc: float
    tones: tuple[Tone, ...]
    #: False when fewer maxima were found than requested
    complete: bool

    @property
    def frequencies(self) -> list[float]:
        return [t.frequency for t in self.tones]

    def to_json(self) -> str:
        tones = ", ".join(f'{{"frequency": {fmt(t.frequency)}, "energy": {fmt(t.energy)}}}' for t in self.tones)
        return f'{{"Fc": {fmt(self.Fc)}, "tones": [{tones}], "complete": {json.dumps(self.complete)}}}\n'


def cwt(signal: SampledWaveform, scales: ScaleGrid, kernel: SumOfSines) -> ScalogramGrid:
    """``W[i, j] = a_i**-0.5 * sum_n s[n] psi((t_n - t_j) / (a_i * D)) * dt``.

    ``psi`` is the gated closed form evaluated at the exact (non-dyadic)
    arguments; the signal is zero outside its samples.  The kernel is used
    as is, without reflection (correlation form).
    """
    if not isinstance(scales, ScaleGrid):
        raise BadScales("scales must be a ScaleGrid")
    s = signal.values
    n = s.size
    if n < 8:
        raise BadInput(f"signal needs at least 8 samples, got {n}")
    dt = signal.dt
    T = kernel.support_T
    coeffs = np.empty((scales.scales.size, n))
    for i, a in enumerate(scales.scales):
        width = a * scales.sampling_dt
        m_max = min(n - 1, int(math.ceil(T * width / dt)))
        lags = np.arange(m_max + 1)
        k = eval_gated(kernel, lags * dt / width)
        # sum_m s[j+m] k[m]
        full = np.convolve(s, k[::-1])
        coeffs[i] = full[m_max : m_max + n] * dt / math.sqrt(a)
    reach = int(math.ceil(T * scales.scales[-1] * scales.sampling_dt / dt))
    edge = np.arange(n) > n - 1 - reach
    return ScalogramGrid(scales.scales.copy(), signal.times, coeffs, edge)


def center_frequency(kernel: SumOfSines, method: str = "dominant_term") -> float:
    """Centre frequency of a kernel in cycles per time unit."""
    if method == "dominant_term":
        k = int(np.argmax(np.abs(kernel.a)))
        return abs(kernel.terms[k].frequency_b) / (2 * math.pi)
    if method == "dft_peak":
        wave = sample_gated(kernel, kernel.support_T / 1024)
        grid = dft_oracle(wave, 1 << 18).restrict(0.0, math.inf)
        return float(grid.omegas[np.argmax(grid.magnitude)]) / (2 * math.pi)
    raise BadInput(f"unknown centre-frequency method {method!r}")


def scale_to_frequency(scale, sampling_dt: float, Fc: float):
    """Pseudo-frequency ``Fc / (scale * sampling_dt)``."""
    scale = np.asarray(scale, dtype=float)
    if np.any(scale <= 0) or not sampling_dt > 0 or not Fc > 0:
        raise BadInput("scale, sampling_dt and Fc must all be positive")
    out = Fc / (scale * sampling_dt)
    return float(out) if out.ndim == 0 else out


def frequency_to_scale(freq, sampling_dt: float, Fc: float):
    return scale_to_frequency(freq, sampling_dt, Fc)  # the map is its own inverse


def default_scales(signal: SampledWaveform, Fc: float, num: int = DEFAULT_NUM_SCALES) -> ScaleGrid:
    """Log-spaced scales covering pseudo-frequencies ``[2/duration, 0.5/dt]``."""
    duration = len(signal) * signal.dt
    f_lo, f_hi = 2.0 / duration, 0.5 / signal.dt
    if not f_hi > f_lo:
        raise BadScales("signal too short for the default scale range")
    s_lo = Fc / (f_hi * signal.dt)
    s_hi = Fc / (f_lo * signal.dt)
    return ScaleGrid(np.geomspace(s_lo, s_hi, num), signal.dt)


def scale_energy(gram: ScalogramGrid) -> np.ndarray:
    """Energy per scale, integrated over time."""
    dt = gram.times[1] - gram.times[0] if gram.times.size > 1 else 1.0
    return gram.energy.sum(axis=1) * dt


def detect_tones(gram: ScalogramGrid, Fc: float, count: int, sampling_dt: float | None = None) -> ToneReport:
    """The ``count`` strongest interior maxima of :func:`scale_energy`, as frequencies.

    Tones are returned strongest first.  ``sampling_dt`` defaults to the
    spacing of ``gram.times``.
    """
    if count < 1 or count > gram.scales.size:
        raise BadInput(f"count must be in 1..{gram.scales.size}, got {count}")
    if sampling_dt is None:
        sampling_dt = float(gram.times[1] - gram.times[0])
    e = scale_energy(gram)
    interior = np.flatnonzero((e[1:-1] > e[:-2]) & (e[1:-1] >= e[2:])) + 1
    interior = interior[e[interior] > 0]
    order = interior[np.argsort(-e[interior], kind="stable")][:count]
    tones = tuple(Tone(scale_to_frequency(gram.scales[i], sampling_dt, Fc), float(e[i])) for i in order)
    return ToneReport(Fc, tones, complete=len(tones) == count)


def two_tone_signal(f1: float, f2: float, duration: float, dt: float) -> SampledWaveform:
    """``sin(2 pi f1 t) + sin(2 pi f2 t)`` sampled on ``[0, duration)``."""
    if not dt > 0 or not duration > dt:
        raise BadInput("need 0 < dt < duration")
    n = int(round(duration / dt))
    t = dt * np.arange(n)
    return SampledWaveform(0.0, dt, np.sin(2 * np.pi * f1 * t) + np.sin(2 * np.pi * f2 * t))


# -- long-form export ---------------------------------------------------------


def export_3d(gram: ScalogramGrid) -> np.ndarray:
    """Rows ``(scale, time, coefficient, energy)``, scale-major."""
    S, Tm = np.meshgrid(gram.scales, gram.times, indexing="ij")
    return np.column_stack([S.ravel(), Tm.ravel(), gram.coefficients.ravel(), gram.energy.ravel()])


def import_3d(rows: np.ndarray) -> ScalogramGrid:
    rows = np.asarray(rows, dtype=float)
    scales = np.unique(rows[:, 0])
    times = np.unique(rows[:, 1])
    if scales.size * times.size != rows.shape[0]:
        raise BadInput("rows do not form a complete scale x time grid")
    coeffs = rows[:, 2].reshape(scales.size, times.size)
    return ScalogramGrid(scales, times, coeffs)


def scalogram_to_csv(gram: ScalogramGrid) -> str:
    buf = io.StringIO()
    buf.write("scale,time,coefficient,energy\n")
    for s, t, c, e in export_3d(gram):
        buf.write(f"{fmt(s)},{fmt(t)},{fmt(c)},{fmt(e)}\n")
    return buf.getvalue()


def scalogram_from_csv(text: str) -> ScalogramGrid:
    lines = text.strip().splitlines()
    if not lines or lines[0].strip() != "scale,time,coefficient,energy":
        raise BadInput("scalogram CSV must start with 'scale,time,coefficient,energy'")
    rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    return import_3d(rows)
