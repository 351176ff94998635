"""
Resampling strategies for imbalanced regression
"""

from .bins import Bin, BinRate, Bins, make_bins, resolve_rates
from .distance import DistanceSchema, distance, pairwise
from .synth import gen_synth_cases, interpolate, perturb
from .base import BaseResampler
from .smoter import SmoteRResampler, smoter
from .random_over import RandomOversampler, random_oversample
from .random_under import RandomUndersampler, random_undersample
from .gaussian_noise import GaussianNoiseResampler, gaussian_noise
from .smogn import SmognResampler, smogn
from .wercs import WercsResampler, wercs
from .resampler import ResampleReport, Resampler, resample

__all__ = [
    'Bin', 'BinRate', 'Bins', 'make_bins', 'resolve_rates',
    'DistanceSchema', 'distance', 'pairwise',
    'gen_synth_cases', 'interpolate', 'perturb',
    'BaseResampler', 'Resampler', 'ResampleReport', 'resample',
    'SmoteRResampler', 'smoter',
    'RandomOversampler', 'random_oversample',
    'RandomUndersampler', 'random_undersample',
    'GaussianNoiseResampler', 'gaussian_noise',
    'SmognResampler', 'smogn',
    'WercsResampler', 'wercs',
]
