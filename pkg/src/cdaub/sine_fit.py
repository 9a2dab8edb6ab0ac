"""Levenberg-Marquardt fitting of a sum of sines to a sampled waveform."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadInput, DegenerateTarget, Underdetermined
from .model import MAX_TERMS, SineTerm, SumOfSines, canonicalize, model_eval
from .waveform import SampledWaveform

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FitOptions:
    max_iters: int = 500
    lambda0: float = 1e-3
    lambda_up: float = 10.0
    lambda_down: float = 10.0
    lambda_max: float = 1e16
    rel_cost_tol: float = 1e-12
    grad_tol: float = 1e-10


@dataclass(frozen=True)
class FitReport:
    r_squared: float
    rmse: float
    iterations: int = 0
    converged: bool = False
    final_lambda: float = 0.0
    #: cost 0.5*sum(r^2) after every accepted step, starting from the initial guess
    cost_history: tuple[float, ...] = ()


def residuals(model: SumOfSines, target: SampledWaveform) -> np.ndarray:
    """``target - model`` at the target's grid points."""
    return target.values - model_eval(model, target.times)


def jacobian(model: SumOfSines, target: SampledWaveform) -> np.ndarray:
    """Analytic ``d residual / d (a_k, b_k, c_k)``, shape ``(n, 3K)``."""
    t = target.times
    phase = np.multiply.outer(t, model.b) + model.c
    s, co = np.sin(phase), np.cos(phase)
    J = np.empty((t.size, 3 * len(model)))
    J[:, 0::3] = -s
    J[:, 1::3] = -(model.a * co) * t[:, None]
    J[:, 2::3] = -(model.a * co)
    return J


def goodness(model: SumOfSines, target: SampledWaveform) -> FitReport:
    r = residuals(model, target)
    y = target.values
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        raise DegenerateTarget("target is constant; R^2 is undefined")
    ss_res = float(r @ r)
    return FitReport(r_squared=1.0 - ss_res / ss_tot, rmse=math.sqrt(ss_res / y.size))


def _check_target(target: SampledWaveform, K: int) -> None:
    if not 1 <= K <= MAX_TERMS:
        raise BadInput(f"K must be in 1..{MAX_TERMS}, got {K}")
    if len(target) < 3 * K + 1:
        raise Underdetermined(f"{len(target)} samples cannot determine {3 * K} parameters")
    if not np.all(np.isfinite(target.values)):
        raise BadInput("target contains non-finite values")


def _local_maxima(mag: np.ndarray) -> np.ndarray:
    """Indices of strict-left / weak-right local maxima, including index 0."""
    padded = np.concatenate([[-np.inf], mag, [-np.inf]])
    mid = padded[1:-1]
    idx = np.flatnonzero((mid > padded[:-2]) & (mid >= padded[2:]) & (mid > 0))
    return idx


def initialize_from_spectrum(
    target: SampledWaveform, K: int, pad_factor: int = 16, peak_floor: float = 0.1
) -> SumOfSines:
    """Starting model from the peaks of the target's (zero-padded) DFT.

    Picks the K largest local maxima of |X(w)| that reach ``peak_floor``
    times the global maximum (weaker maxima are mostly sidelobes of the
    observation window).  If there are fewer than K,
    the remaining terms sit on the harmonic grid ``k * 2pi/L`` (L the target
    duration) at the strongest unused harmonics.  Amplitude and phase are
    read off the transform: a sine ``a sin(bt + c)`` observed for a
    duration L has ``X(b) ~ a L e^{jc} / (2j)``.
    """
    _check_target(target, K)
    n = len(target)
    L = n * target.dt
    nfft = 1 << int(math.ceil(math.log2(n * pad_factor)))
    X = np.fft.rfft(target.values, nfft) * target.dt
    omegas = 2 * np.pi * np.fft.rfftfreq(nfft, target.dt)
    X = X * np.exp(-1j * omegas * target.t0)
    mag = np.abs(X)

    def term_at(omega: float) -> SineTerm:
        # DTFT at an arbitrary frequency, same scaling as X
        Xw = target.dt * np.sum(target.values * np.exp(-1j * omega * target.times))
        a = 2.0 * abs(Xw) / L
        c = float(np.angle(Xw)) + math.pi / 2 if a > 0 else 0.0
        return SineTerm(a, float(omega), c)

    peaks = _local_maxima(mag)
    if peaks.size:
        peaks = peaks[mag[peaks] >= peak_floor * mag.max()]
    peaks = peaks[np.argsort(-mag[peaks], kind="stable")][:K]
    freqs = [float(omegas[i]) for i in peaks]

    if len(freqs) < K:
        omega0 = 2 * math.pi / L
        half_bin = omega0 / 2
        candidates = [k * omega0 for k in range(1, 4 * K + 1)]
        candidates = [w for w in candidates if all(abs(w - f) >= half_bin for f in freqs)]
        strength = [abs(term_at(w).amplitude_a) for w in candidates]
        order = np.argsort(-np.asarray(strength), kind="stable")
        freqs += [candidates[i] for i in order[: K - len(freqs)]]

    terms = tuple(term_at(w) for w in sorted(freqs))
    return SumOfSines(terms, L)


def lm_fit(
    target: SampledWaveform,
    K: int,
    init: SumOfSines | None = None,
    options: FitOptions | None = None,
    support_T: float | None = None,
) -> tuple[SumOfSines, FitReport]:
    """Fit ``K`` sine terms to ``target`` by Levenberg-Marquardt.

    Classic Marquardt damping: the normal equations are augmented with
    ``lambda * diag(J^T J)``, lambda is divided by 10 after an accepted step
    and multiplied by 10 after a rejected one.  Converged means the relative
    cost decrease of an accepted step fell below ``rel_cost_tol``, or the
    gradient infinity-norm below ``grad_tol``.

    The returned model is canonical (see :func:`cdaub.model.canonicalize`)
    and carries ``support_T`` (default: the duration spanned by the target).
    """
    opts = options or FitOptions()
    _check_target(target, K)
    if init is None:
        init = initialize_from_spectrum(target, K)
    elif len(init) != K:
        raise BadInput(f"init has {len(init)} terms, expected {K}")
    if support_T is None:
        support_T = init.support_T

    model = init
    p = model.params()
    r = residuals(model, target)
    cost = 0.5 * float(r @ r)
    history = [cost]
    lam = opts.lambda0
    converged = False
    it = 0

    while it < opts.max_iters:
        J = jacobian(model, target)
        grad = J.T @ r
        if cost == 0.0 or np.max(np.abs(grad)) < opts.grad_tol:
            converged = True
            break
        JtJ = J.T @ J
        diag = np.diag(JtJ).copy()
        diag[diag == 0] = 1.0
        it += 1
        try:
            step = np.linalg.solve(JtJ + lam * np.diag(diag), -grad)
        except np.linalg.LinAlgError:
            step = None
        if step is not None and np.all(np.isfinite(step)):
            trial = model.with_params(p + step)
            r_new = residuals(trial, target)
            cost_new = 0.5 * float(r_new @ r_new)
        else:
            cost_new = math.inf
        if cost_new < cost:
            decrease = (cost - cost_new) / cost
            model, p, r, cost = trial, p + step, r_new, cost_new
            history.append(cost)
            lam = max(lam / opts.lambda_down, 1e-300)
            if decrease < opts.rel_cost_tol:
                converged = True
                break
        else:
            lam *= opts.lambda_up
            if lam > opts.lambda_max:
                log.debug("damping exceeded %g; stopping", opts.lambda_max)
                break

    fitted = canonicalize(SumOfSines(model.terms, support_T, init.family, init.kind))
    g = goodness(fitted, target)
    report = FitReport(
        r_squared=g.r_squared,
        rmse=g.rmse,
        iterations=it,
        converged=converged,
        final_lambda=lam,
        cost_history=tuple(history),
    )
    log.info("lm_fit K=%d: R^2=%.8f rmse=%.3g iters=%d converged=%s", K, g.r_squared, g.rmse, it, converged)
    return fitted, report
