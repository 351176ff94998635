"""
Dataset ingestion, encoding, splitting and profiling for RareLens
"""

from .loader import load_csv, write_csv
from .encoding import encode_nominals, decode_nominals
from .splits import Split, kfold_split
from .profile import profile

__all__ = [
    'load_csv', 'write_csv', 'encode_nominals', 'decode_nominals',
    'Split', 'kfold_split', 'profile',
]
