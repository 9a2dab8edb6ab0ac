"""Closed-form (sum-of-sines) approximations of Daubechies wavelets.

Cascade reference waveforms, Levenberg-Marquardt refitting, the published
coefficient presets, analytic spectra and CWT scalograms built on them.
"""

from .closed_form import eval_gated, preset, sample_gated
from .daub_reference import (
    DaubechiesSpec,
    cascade_scaling,
    cascade_wavelet,
    daubechies_filter,
    highpass_from_lowpass,
    reference_waveform,
)
from .errors import DaubletError
from .model import SineTerm, SumOfSines, canonicalize, model_eval
from .sine_fit import FitReport, goodness, lm_fit
from .waveform import SampledWaveform

__all__ = [
    "DaubechiesSpec",
    "DaubletError",
    "FitReport",
    "SampledWaveform",
    "SineTerm",
    "SumOfSines",
    "canonicalize",
    "cascade_scaling",
    "cascade_wavelet",
    "daubechies_filter",
    "eval_gated",
    "goodness",
    "highpass_from_lowpass",
    "lm_fit",
    "model_eval",
    "preset",
    "reference_waveform",
    "sample_gated",
]

__version__ = "0.1.0"
