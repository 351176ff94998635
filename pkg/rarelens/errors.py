"""
Exception hierarchy for RareLens
"""

from typing import Optional


class RareLensError(Exception):
    """Base class for all RareLens errors"""


class DatasetError(RareLensError, ValueError):
    """Malformed input data or schema violation"""


class DegenerateDistributionError(RareLensError, ValueError):
    """Target distribution too concentrated to derive control points"""


class ControlPointError(RareLensError, ValueError):
    """Invalid control point set"""


class NothingToResampleError(RareLensError, ValueError):
    """No rare rows under the given relevance threshold"""


class SynthesisError(RareLensError, ValueError):
    """Synthetic case generation impossible (e.g. no neighbours)"""


class UndefinedMetricError(RareLensError, ArithmeticError):
    """Utility-based precision or recall with an empty selection"""

    def __init__(self, side: str, message: Optional[str] = None):
        self.side = side
        super().__init__(message or f"{side} undefined: no case above the relevance threshold")


class ConfigError(RareLensError, ValueError):
    """Invalid experiment or resampling configuration"""


class RunTimeoutError(RareLensError, TimeoutError):
    """A benchmark run exceeded its wall-clock budget"""


class LeakageError(RareLensError, AssertionError):
    """A test row reached a training set"""
