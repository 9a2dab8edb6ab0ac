"""Published coefficient presets and the gated closed-form waveforms.

Presets live in ``data/<family>-<kind>.json`` with every number literal
exactly as printed; :func:`preset_text_rows` hands those literals back
untouched so ``cli tables`` can re-emit them byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import BadInput, GridTooCoarse, NoSuchPreset
from .model import SumOfSines, model_eval
from .waveform import SampledWaveform

FAMILIES = ("db4", "db6", "db8")
KINDS = ("wavelet", "scaling")
PRESET_KEYS = tuple((f, k) for k in KINDS for f in FAMILIES)


def _parse_key(family, kind=None) -> tuple[str, str]:
    if kind is None:
        # accept "db4-wavelet" / "cdb4-wavelet"
        family, _, kind = str(family).partition("-")
    family = family.lower()
    if family.startswith("cdb"):
        family = family[1:]
    if (family, kind) not in PRESET_KEYS:
        raise NoSuchPreset(f"no preset for ({family!r}, {kind!r}); available: {[f'{f}-{k}' for f, k in PRESET_KEYS]}")
    return family, kind


@lru_cache(maxsize=None)
def _raw(family: str, kind: str) -> str:
    return resources.files("cdaub").joinpath("data", f"{family}-{kind}.json").read_text()


def preset(family: str, kind: str | None = None) -> SumOfSines:
    """Coefficients of Tables I/II as a model.

    ``preset("db4", "wavelet")`` and ``preset("db4-wavelet")`` are equivalent.
    """
    family, kind = _parse_key(family, kind)
    return _load(family, kind)


@lru_cache(maxsize=None)
def _load(family: str, kind: str) -> SumOfSines:
    return SumOfSines.from_json(_raw(family, kind))


def preset_text_rows(family: str, kind: str | None = None) -> list[tuple[str, str, str]]:
    """The ``(a, b, c)`` literals of a preset, as printed."""
    family, kind = _parse_key(family, kind)
    doc = json.loads(_raw(family, kind), parse_float=str, parse_int=str)
    return [(t["a"], t["b"], t["c"]) for t in doc["terms"]]


def preset_checksum(family: str, kind: str | None = None) -> str:
    """sha256 over the ``k,a,b,c`` lines of a preset."""
    rows = preset_text_rows(family, kind)
    body = "".join(f"{k},{a},{b},{c}\n" for k, (a, b, c) in enumerate(rows, 1))
    return hashlib.sha256(body.encode()).hexdigest()


def eval_gated(model: SumOfSines, t):
    """Model times the gate: the sum on ``[0, T)`` and exactly 0 elsewhere."""
    t_arr = np.asarray(t, dtype=float)
    inside = (t_arr >= 0.0) & (t_arr < model.support_T)
    out = np.where(inside, model_eval(model, np.where(inside, t_arr, 0.0)), 0.0)
    return float(out) if t_arr.ndim == 0 else out


def sample_gated(model: SumOfSines, dt: float) -> SampledWaveform:
    """Samples of :func:`eval_gated` at ``i*dt`` for every ``i*dt < T``."""
    T = model.support_T
    if not dt > 0:
        raise BadInput(f"dt must be positive, got {dt}")
    if dt > T / 16:
        raise GridTooCoarse(f"dt={dt} is coarser than T/16={T / 16}")
    n = int(np.ceil(T / dt - 1e-9))
    t = dt * np.arange(n)
    return SampledWaveform(0.0, dt, eval_gated(model, t))
