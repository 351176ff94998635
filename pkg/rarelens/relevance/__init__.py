"""
Relevance functions over continuous targets
"""

from .control_points import (
    BOXPLOT_COEF, ControlPoint, ControlPointSet,
    control_points_boxplot, load_control_points,
)
from .pchip import (
    RelevanceFunction, check_slopes, fit_relevance, pchip_fit, relevance_eval,
)
from .bumps import GRID_RESOLUTION, Bump, BumpPartition, bump_partition
from .split import RareNormalSplit, split_rare_normal

__all__ = [
    'BOXPLOT_COEF', 'ControlPoint', 'ControlPointSet',
    'control_points_boxplot', 'load_control_points',
    'RelevanceFunction', 'check_slopes', 'fit_relevance', 'pchip_fit', 'relevance_eval',
    'GRID_RESOLUTION', 'Bump', 'BumpPartition', 'bump_partition',
    'RareNormalSplit', 'split_rare_normal',
]
