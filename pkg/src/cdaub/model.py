"""Sum-of-sines model ``sum_k a_k sin(b_k t + c_k)`` and its JSON file format."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import BadInput
from .waveform import fmt

MAX_TERMS = 16
KINDS = ("wavelet", "scaling")


@dataclass(frozen=True)
class SineTerm:
    amplitude_a: float
    frequency_b: float
    phase_c: float

    def __post_init__(self):
        for name in ("amplitude_a", "frequency_b", "phase_c"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def __iter__(self):
        return iter((self.amplitude_a, self.frequency_b, self.phase_c))


@dataclass(frozen=True)
class SumOfSines:
    terms: tuple[SineTerm, ...]
    support_T: float
    family: str | None = field(default=None, compare=False)
    kind: str | None = field(default=None, compare=False)

    def __post_init__(self):
        terms = tuple(t if isinstance(t, SineTerm) else SineTerm(*map(float, t)) for t in self.terms)
        if not 1 <= len(terms) <= MAX_TERMS:
            raise BadInput(f"a model needs 1..{MAX_TERMS} terms, got {len(terms)}")
        if not self.support_T > 0:
            raise BadInput(f"support must be positive, got {self.support_T}")
        if self.kind is not None and self.kind not in KINDS:
            raise BadInput(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "support_T", float(self.support_T))

    @classmethod
    def from_arrays(cls, a, b, c, support_T, **meta) -> "SumOfSines":
        return cls(tuple(SineTerm(float(x), float(y), float(z)) for x, y, z in zip(a, b, c)), support_T, **meta)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def a(self) -> np.ndarray:
        return np.array([t.amplitude_a for t in self.terms])

    @property
    def b(self) -> np.ndarray:
        return np.array([t.frequency_b for t in self.terms])

    @property
    def c(self) -> np.ndarray:
        return np.array([t.phase_c for t in self.terms])

    def params(self) -> np.ndarray:
        """Flat parameter vector ``[a_1, b_1, c_1, a_2, ...]``."""
        return np.array([list(t) for t in self.terms]).ravel()

    def with_params(self, p) -> "SumOfSines":
        p = np.asarray(p, dtype=float).reshape(-1, 3)
        return SumOfSines.from_arrays(p[:, 0], p[:, 1], p[:, 2], self.support_T, family=self.family, kind=self.kind)

    def sorted_by_frequency(self) -> "SumOfSines":
        order = sorted(range(len(self)), key=lambda i: self.terms[i].frequency_b)
        return SumOfSines(tuple(self.terms[i] for i in order), self.support_T, self.family, self.kind)

    def __call__(self, t):
        return model_eval(self, t)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> str:
        terms = ",\n".join(
            f'    {{"a": {fmt(t.amplitude_a)}, "b": {fmt(t.frequency_b)}, "c": {fmt(t.phase_c)}}}'
            for t in self.terms
        )
        return (
            "{\n"
            f'  "family": {json.dumps(self.family or "custom")},\n'
            f'  "kind": {json.dumps(self.kind or "wavelet")},\n'
            f'  "support": {fmt(self.support_T)},\n'
            f'  "terms": [\n{terms}\n  ]\n'
            "}\n"
        )

    @classmethod
    def from_json(cls, text: str) -> "SumOfSines":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BadInput(f"model is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise BadInput("model JSON must be an object")
        missing = {"family", "kind", "support", "terms"} - doc.keys()
        if missing:
            raise BadInput(f"model JSON is missing keys: {sorted(missing)}")
        terms = doc["terms"]
        if not isinstance(terms, list):
            raise BadInput("model JSON 'terms' must be a list")
        try:
            rows = [SineTerm(float(t["a"]), float(t["b"]), float(t["c"])) for t in terms]
            support = float(doc["support"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"malformed model term: {exc}") from None
        return cls(tuple(rows), support, family=str(doc["family"]), kind=doc["kind"])

    @classmethod
    def read_json(cls, path: str | Path) -> "SumOfSines":
        return cls.from_json(Path(path).read_text())


def model_eval(model: SumOfSines, t):
    """Ungated sum ``sum_k a_k sin(b_k t + c_k)``; scalar in, scalar out."""
    t_arr = np.asarray(t, dtype=float)
    out = np.sin(np.multiply.outer(t_arr, model.b) + model.c) @ model.a
    return float(out) if t_arr.ndim == 0 else out


def wrap_phase(c: float) -> float:
    """Wrap an angle to ``(-pi, pi]``."""
    w = math.remainder(c, 2.0 * math.pi)
    return math.pi if w == -math.pi else w


def canonicalize(model: SumOfSines) -> SumOfSines:
    """Fold each term to ``b >= 0``, ``a >= 0``, ``c`` in ``(-pi, pi]``; sort by ``b``.

    ``a sin(-|b| t + c) = -a sin(|b| t - c)`` and ``-a sin(x) = a sin(x + pi)``.
    """
    terms = []
    for a, b, c in model.terms:
        if b < 0:
            a, b, c = -a, -b, -c
        if a < 0:
            a, c = -a, c + math.pi
        terms.append(SineTerm(a, b, wrap_phase(c)))
    terms.sort(key=lambda t: (t.frequency_b, t.amplitude_a, t.phase_c))
    return SumOfSines(tuple(terms), model.support_T, model.family, model.kind)
