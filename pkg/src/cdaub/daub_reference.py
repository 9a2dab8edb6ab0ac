"""Daubechies filters by spectral factorization and cascade waveforms.

The lowpass taps are the extremal-phase (minimum-phase) spectral factor of
the Daubechies half-band polynomial.  The scaling function and wavelet are
sampled on the dyadic grid ``n / 2**J`` over ``[0, 2N-1]`` by the cascade
(two-scale refinement) recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .errors import BadInput, GridTooLarge, OrderUnsupported
from .waveform import SampledWaveform

MAX_ORDER = 10
MAX_LEVELS = 14


@dataclass(frozen=True, eq=False)
class DaubechiesSpec:
    order_N: int
    lowpass_h: np.ndarray
    support_T: float

    def __post_init__(self):
        h = np.array(self.lowpass_h, dtype=float)
        if h.size != 2 * self.order_N:
            raise BadInput(f"db{self.order_N} needs {2 * self.order_N} taps, got {h.size}")
        if self.support_T != 2 * self.order_N - 1:
            raise BadInput("support_T must equal 2N-1")
        h.flags.writeable = False
        object.__setattr__(self, "lowpass_h", h)

    @property
    def name(self) -> str:
        return f"db{self.order_N}"


def _halfband_roots(N: int) -> np.ndarray:
    """Zeros (in z) of the non-binomial factor, those inside the unit circle.

    With y = sin^2(w/2) the half-band condition leaves
    P(y) = sum_k C(N-1+k, k) y^k; every root y maps to a reciprocal pair
    of z roots via z + 1/z = 2 - 4y and we keep the one with |z| < 1.
    """
    if N == 1:
        return np.empty(0, dtype=complex)
    coeffs = [comb(N - 1 + k, k) for k in range(N)]
    zs = []
    for y in np.roots(coeffs[::-1]):
        pair = np.roots([1.0, -(2.0 - 4.0 * y), 1.0])
        zs.append(pair[np.argmin(np.abs(pair))])
    return np.asarray(zs)


def daubechies_filter(N: int) -> DaubechiesSpec:
    """Lowpass taps of dbN, normalized so that ``sum(h) == sqrt(2)``.

    >>> daubechies_filter(1).lowpass_h
    array([0.70710678, 0.70710678])
    """
    if not isinstance(N, (int, np.integer)) or not 1 <= N <= MAX_ORDER:
        raise OrderUnsupported(f"order N must be an integer in 1..{MAX_ORDER}, got {N!r}")
    N = int(N)
    zeros = np.concatenate([-np.ones(N), _halfband_roots(N)])
    h = np.real(np.poly(zeros))
    h *= sqrt(2.0) / h.sum()
    return DaubechiesSpec(N, h, float(2 * N - 1))


def highpass_from_lowpass(spec: DaubechiesSpec) -> np.ndarray:
    """Quadrature mirror taps ``g[n] = (-1)**n * h[2N-1-n]``."""
    h = spec.lowpass_h
    signs = np.where(np.arange(h.size) % 2 == 0, 1.0, -1.0)
    return signs * h[::-1]


def _check_levels(J: int) -> None:
    if not isinstance(J, (int, np.integer)) or J < 1:
        raise BadInput(f"levels J must be a positive integer, got {J!r}")
    if J > MAX_LEVELS:
        raise GridTooLarge(f"levels J={J} exceeds the limit of {MAX_LEVELS}")


def _integer_samples(h: np.ndarray) -> np.ndarray:
    """phi(0), ..., phi(2N-1): the unit-sum fixed point of the two-scale matrix."""
    L = h.size
    if L == 2:
        return np.array([1.0, 0.0])  # half-open box [0, 1)
    # Interior points only; phi vanishes at both ends for N >= 2.
    k = np.arange(1, L - 1)
    m = 2 * k[:, None] - k[None, :]
    M = np.where((m >= 0) & (m < L), sqrt(2.0) * h[np.clip(m, 0, L - 1)], 0.0)
    A = np.vstack([M - np.eye(k.size), np.ones(k.size)])
    rhs = np.zeros(k.size + 1)
    rhs[-1] = 1.0
    interior = np.linalg.lstsq(A, rhs, rcond=None)[0]
    return np.concatenate([[0.0], interior, [0.0]])


def _dilate(taps: np.ndarray, step: int) -> np.ndarray:
    out = np.zeros((taps.size - 1) * step + 1)
    out[::step] = taps
    return out


def _refine(spec: DaubechiesSpec, J: int) -> np.ndarray:
    """phi(n / 2**J) for n = 0 .. (2N-1) * 2**J."""
    h = spec.lowpass_h
    T = 2 * spec.order_N - 1
    v = _integer_samples(h)
    for j in range(J):
        # phi(n/2^{j+1}) = sqrt2 * sum_m h[m] phi((n - m 2^j) / 2^j)
        v = sqrt(2.0) * np.convolve(v, _dilate(h, 2**j))[: T * 2 ** (j + 1) + 1]
    return v


def cascade_scaling(spec: DaubechiesSpec, levels_J: int) -> SampledWaveform:
    """Scaling function sampled at ``t = n / 2**J`` over ``[0, 2N-1]``."""
    _check_levels(levels_J)
    return SampledWaveform(0.0, 2.0**-levels_J, _refine(spec, levels_J))


def cascade_wavelet(spec: DaubechiesSpec, levels_J: int) -> SampledWaveform:
    """Wavelet sampled at ``t = n / 2**J``, from one highpass step on level J-1."""
    _check_levels(levels_J)
    J = levels_J
    T = 2 * spec.order_N - 1
    phi = _refine(spec, J - 1)
    g = highpass_from_lowpass(spec)
    psi = sqrt(2.0) * np.convolve(phi, _dilate(g, 2 ** (J - 1)))[: T * 2**J + 1]
    psi[-1] = 0.0
    return SampledWaveform(0.0, 2.0**-J, psi)


def reference_waveform(N: int, kind: str = "wavelet", levels_J: int = 10) -> SampledWaveform:
    """Shorthand for ``cascade_{kind}(daubechies_filter(N), levels_J)``."""
    spec = daubechies_filter(N)
    if kind == "wavelet":
        return cascade_wavelet(spec, levels_J)
    if kind == "scaling":
        return cascade_scaling(spec, levels_J)
    raise BadInput(f"kind must be 'wavelet' or 'scaling', got {kind!r}")
