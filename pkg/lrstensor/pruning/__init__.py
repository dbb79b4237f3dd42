from .active import level_alpha_active_indices, slice_thresholds
from .models import ActiveIndexSet
from .prune import gradient_prune, hard_threshold_support

__all__ = [
    "ActiveIndexSet",
    "gradient_prune",
    "hard_threshold_support",
    "level_alpha_active_indices",
    "slice_thresholds",
]
