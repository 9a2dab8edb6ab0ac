"""Fourier transforms of the sum-of-sines model.

Three views of the same object:

* :func:`line_spectrum` -- the unbounded model, a pair of impulses per term;
* :func:`truncated_spectrum` -- the gated model on ``[0, T)``, exact, each
  impulse convolved with the gate transform
  ``G(w) = T sinc(wT/2pi) exp(-j w T/2)``;
* :func:`magnitude_eq16` -- the positive-frequency sinc-sum shortcut
  ``(T/2) sum_k a_k sinc((w - b_k) T/2pi)``, which drops the phases and the
  negative-frequency lobes.

:func:`dft_oracle` is the numerical ground truth they are checked against.
sinc is the normalized ``sin(pi x)/(pi x)`` throughout.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import BadInput
from .model import SumOfSines
from .waveform import SampledWaveform, fmt

DEFAULT_POINTS = 4096


@dataclass(frozen=True)
class SpectralLine:
    frequency: float
    amplitude: complex


@dataclass(frozen=True, eq=False)
class SpectrumGrid:
    omegas: np.ndarray
    values: np.ndarray
    magnitude_only: bool = False

    def __post_init__(self):
        omegas = np.asarray(self.omegas, dtype=float)
        values = np.asarray(self.values, dtype=float if self.magnitude_only else complex)
        if omegas.shape != values.shape or omegas.ndim != 1:
            raise BadInput("omegas and values must be 1-D and the same length")
        if np.any(np.diff(omegas) <= 0):
            raise BadInput("omegas must be strictly ascending")
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "values", values)

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    def restrict(self, lo: float, hi: float) -> "SpectrumGrid":
        keep = (self.omegas >= lo) & (self.omegas <= hi)
        return SpectrumGrid(self.omegas[keep], self.values[keep], self.magnitude_only)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("omega,real,imag,magnitude\n")
        for w, v in zip(self.omegas, self.values):
            if self.magnitude_only:
                buf.write(f"{fmt(w)},,,{fmt(abs(v))}\n")
            else:
                buf.write(f"{fmt(w)},{fmt(v.real)},{fmt(v.imag)},{fmt(abs(v))}\n")
        return buf.getvalue()


def line_spectrum(model: SumOfSines) -> list[SpectralLine]:
    """Impulse weights of the unbounded model (each multiplies a Dirac delta).

    ``a sin(bt + c)`` transforms to ``-j pi a e^{jc} d(w - b) + j pi a e^{-jc} d(w + b)``.
    """
    lines = []
    for a, b, c in model.terms:
        amp = -1j * np.pi * a * np.exp(1j * c)
        lines.append(SpectralLine(b, complex(amp)))
        lines.append(SpectralLine(-b, complex(np.conj(amp))))
    return lines


def gate_transform(omega, T: float):
    """Transform of the unit gate on ``[0, T)``."""
    omega = np.asarray(omega, dtype=float)
    return T * np.sinc(omega * T / (2 * np.pi)) * np.exp(-0.5j * omega * T)


def truncated_spectrum(model: SumOfSines, omega):
    """Exact transform of the gated model at ``omega`` (scalar or array)."""
    w = np.asarray(omega, dtype=float)
    T = model.support_T
    a, b, c = model.a, model.b, model.c
    ww = w[..., None]
    pos = np.exp(1j * c) * gate_transform(ww - b, T)
    neg = np.exp(-1j * c) * gate_transform(ww + b, T)
    out = ((pos - neg) @ (a / 2j)) if a.size else np.zeros_like(w, dtype=complex)
    return complex(out) if w.ndim == 0 else out


def magnitude_eq16(model: SumOfSines, omega):
    """Signed sinc sum ``(T/2) sum_k a_k sinc((w - b_k) T / 2pi)``, as published."""
    w = np.asarray(omega, dtype=float)
    T = model.support_T
    out = (T / 2) * (np.sinc((w[..., None] - model.b) * T / (2 * np.pi)) @ model.a)
    return float(out) if w.ndim == 0 else out


def gated_integral(model: SumOfSines) -> float:
    """``integral_0^T`` of the model, summed term by term in closed form."""
    from .inharmonic import zero_mean_residual

    return float(sum(zero_mean_residual(a, b, c, model.support_T) for a, b, c in model.terms))


def dft_oracle(wave: SampledWaveform, zero_pad_to: int) -> SpectrumGrid:
    """DFT scaled by ``dt`` (approximates the continuous transform), two-sided.

    Frequencies are ascending in rad/time; the phase accounts for ``t0``.
    """
    n = len(wave)
    if zero_pad_to < n:
        raise BadInput(f"zero_pad_to={zero_pad_to} is shorter than the waveform ({n})")
    X = np.fft.fft(wave.values, zero_pad_to) * wave.dt
    omegas = 2 * np.pi * np.fft.fftfreq(zero_pad_to, wave.dt)
    X = X * np.exp(-1j * omegas * wave.t0)
    order = np.argsort(omegas, kind="stable")
    return SpectrumGrid(omegas[order], X[order])


def relative_l2(approx, exact) -> float:
    approx, exact = np.asarray(approx), np.asarray(exact)
    return float(np.linalg.norm(approx - exact) / np.linalg.norm(exact))


def eq16_deviation(model: SumOfSines, lo: float, hi: float, points: int = DEFAULT_POINTS) -> float:
    """Relative L2 distance of ``|magnitude_eq16|`` from ``|truncated_spectrum|`` on ``[lo, hi]``."""
    w = np.linspace(lo, hi, points)
    return relative_l2(np.abs(magnitude_eq16(model, w)), np.abs(truncated_spectrum(model, w)))


def default_grid(model: SumOfSines, omega_max: float | None = None, points: int = DEFAULT_POINTS) -> np.ndarray:
    if omega_max is None:
        omega_max = 3.0 * float(np.max(np.abs(model.b)))
    if not omega_max > 0 or points < 2:
        raise BadInput("need omega_max > 0 and at least 2 points")
    return np.linspace(0.0, omega_max, points)


def evaluate(model: SumOfSines, method: str, omegas: np.ndarray) -> SpectrumGrid:
    """Spectrum of ``model`` on ``omegas`` by one of ``exact``, ``eq16``."""
    if method == "exact":
        return SpectrumGrid(omegas, truncated_spectrum(model, omegas))
    if method == "eq16":
        return SpectrumGrid(omegas, np.abs(magnitude_eq16(model, omegas)), magnitude_only=True)
    raise BadInput(f"unknown spectrum method {method!r}")
