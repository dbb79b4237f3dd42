from .manifold_conf import NO_TRIM
from .retraction import entrywise_truncate, trim, trunc
from .tangent import TangentVector, tangent_project, tangent_to_dense

__all__ = [
    "NO_TRIM",
    "TangentVector",
    "entrywise_truncate",
    "tangent_project",
    "tangent_to_dense",
    "trim",
    "trunc",
]
