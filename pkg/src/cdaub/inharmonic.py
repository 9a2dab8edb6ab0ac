"""Zero-mean constraint of a single sine term and the inharmonic deviation table.

A term ``A sin(w t + theta)`` integrates to zero over ``[0, T]`` when
``w T = -2 theta`` (mod 2 pi).  The two conversions below are the closed
forms of that condition on the principal branch ``w T`` in ``(0, pi)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import BadInput, BranchSingularity, InputNotSorted, TangentSingularity
from .model import SumOfSines
from .waveform import fmt

#: k indices the published db4 deviation table assigns to the ascending b's
DB4_TABLE_K = (1, 2, 4, 5, 6, 7, 9, 10)

_NEAR_SINGULAR = 1e-9


@dataclass(frozen=True)
class InharmonicComponent:
    index_k: int
    amplitude_A: float
    frequency_omega: float
    phase_theta: float

    def __post_init__(self):
        if self.frequency_omega < 0:
            raise BadInput("frequency_omega must be non-negative")


@dataclass(frozen=True)
class InharmonicRow:
    index_k: int
    fitted_b: float
    harmonic_k_omega0: float
    deviation: float


def _is_multiple_of_pi(x: float) -> bool:
    m = round(x / math.pi)
    return abs(x - m * math.pi) <= 4 * math.ulp(max(abs(x), math.pi))


def phase_from_frequency(omega: float, T: float) -> float:
    """Phase that zeroes the term's integral, ``-atan((1-cos wT)/sqrt(1-cos^2 wT))``."""
    if not T > 0:
        raise BadInput(f"T must be positive, got {T}")
    x = omega * T
    if _is_multiple_of_pi(x):
        raise BranchSingularity(f"omega*T = {x} is a multiple of pi")
    if not 0 < x < math.pi:
        raise BadInput(f"omega*T = {x} is outside the principal branch (0, pi)")
    if abs(math.sin(x)) < _NEAR_SINGULAR:
        return -x / 2
    c = math.cos(x)
    return -math.atan((1.0 - c) / math.sqrt((1.0 - c) * (1.0 + c)))


def frequency_from_phase(theta: float, T: float) -> float:
    """Positive-branch frequency for a phase: ``acos((1-tan^2)/(1+tan^2)) / T``."""
    if not T > 0:
        raise BadInput(f"T must be positive, got {T}")
    if abs(abs(theta) - math.pi / 2) <= 4 * math.ulp(math.pi / 2):
        raise TangentSingularity(f"theta = {theta} makes tan unbounded")
    if not 0 < abs(theta) < math.pi / 2:
        raise BadInput(f"theta must satisfy 0 < |theta| < pi/2, got {theta}")
    t2 = math.tan(theta) ** 2
    x = (1.0 - t2) / (1.0 + t2)
    return math.acos(min(1.0, max(-1.0, x))) / T


def zero_mean_residual(a: float, b: float, c: float, T: float) -> float:
    """``a * integral_0^T sin(b t + c) dt`` in closed form."""
    if not T > 0:
        raise BadInput(f"T must be positive, got {T}")
    if b == 0:
        return a * T * math.sin(c)
    return a * (math.cos(c) - math.cos(b * T + c)) / b


def default_k_assignment(b: Sequence[float], T: float) -> list[int]:
    """Nearest harmonic index per frequency, bumped upward on collisions."""
    omega0 = 2 * math.pi / T
    ks: list[int] = []
    for bi in b:
        k = max(1, int(round(bi / omega0)))
        if ks and k <= ks[-1]:
            k = ks[-1] + 1
        ks.append(k)
    return ks


def inharmonic_table(model: SumOfSines, k_assignment: Sequence[int] | None = None) -> list[InharmonicRow]:
    """Deviation of each fitted frequency from its assigned harmonic ``k * 2pi/T``.

    ``model`` must list its terms in ascending frequency (use
    :meth:`SumOfSines.sorted_by_frequency` on a preset first).
    """
    b = [float(x) for x in model.b]
    if any(y < x for x, y in zip(b, b[1:])):
        raise InputNotSorted("model frequencies must be in ascending order")
    T = model.support_T
    if k_assignment is None:
        ks = default_k_assignment(b, T)
    else:
        ks = [int(k) for k in k_assignment]
        if len(ks) != len(b):
            raise BadInput(f"k_assignment has {len(ks)} entries for {len(b)} terms")
        if ks[0] < 1 or any(y <= x for x, y in zip(ks, ks[1:])):
            raise BadInput("k_assignment must be positive and strictly increasing")
    omega0 = 2 * math.pi / T
    rows = []
    for k, bi in zip(ks, b):
        harmonic = k * omega0
        rows.append(InharmonicRow(k, bi, harmonic, bi - harmonic))
    return rows


def table_to_csv(rows: Sequence[InharmonicRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "b", "k_omega0", "deviation"])
    for r in rows:
        w.writerow([r.index_k, fmt(r.fitted_b), fmt(r.harmonic_k_omega0), fmt(r.deviation)])
    return buf.getvalue()
