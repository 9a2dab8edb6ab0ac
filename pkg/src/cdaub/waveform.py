"""Uniformly sampled real waveform and its CSV form."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadInput


def fmt(x: float) -> str:
    """Format a float at 17 significant digits (round-trip exact)."""
    return format(float(x), ".17g")


@dataclass(frozen=True, eq=False)
class SampledWaveform:
    """Samples ``values[i]`` taken at ``t0 + i*dt``."""

    t0: float
    dt: float
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise BadInput("waveform needs a non-empty 1-D array of values")
        if not self.dt > 0:
            raise BadInput(f"dt must be positive, got {self.dt}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    def integral(self) -> float:
        """Riemann sum ``sum(values) * dt``."""
        return float(self.values.sum() * self.dt)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,value\n")
        for t, v in zip(self.times, self.values):
            buf.write(f"{fmt(t)},{fmt(v)}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SampledWaveform":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [c.strip() for c in rows[0]] != ["t", "value"]:
            raise BadInput("waveform CSV must start with header 't,value'")
        try:
            data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
        except ValueError as exc:
            raise BadInput(f"malformed waveform CSV: {exc}") from None
        if data.ndim != 2 or data.shape[0] < 2 or data.shape[1] != 2:
            raise BadInput("waveform CSV needs at least two (t, value) rows")
        t = data[:, 0]
        dt = (t[-1] - t[0]) / (t.size - 1)
        if not dt > 0 or not np.allclose(np.diff(t), dt, rtol=1e-9, atol=1e-12):
            raise BadInput("waveform CSV time column must be uniformly increasing")
        return cls(t[0], dt, data[:, 1])

    @classmethod
    def read_csv(cls, path: str | Path) -> "SampledWaveform":
        return cls.from_csv(Path(path).read_text())
