"""
RareLens - Imbalanced Regression Toolkit

Relevance functions over continuous targets, six resampling strategies
for rare target values, rarity-aware metrics (utility-based F1, SERA)
and a cross-validated benchmark harness.
"""

__version__ = "1.0.0"
__author__ = "RareLens"
