"""Exact self-mixed volumes, difference bodies and the inequalities around
Godbersen's conjecture, for rational polytopes."""

from .geometry import (Degenerate, Empty, Halfspace, Polytope, affine_map, box, convex_hull,
                       intersect, minkowski_sum, negate, polar, translate, volume)
from .mixed import (MixedVolumeVector, difference_body, self_mixed_volumes,
                    unbalanced_difference_body, unbalanced_volume_polynomial)

__all__ = [
    "Degenerate", "Empty", "Halfspace", "MixedVolumeVector", "Polytope", "affine_map", "box",
    "convex_hull", "difference_body", "intersect", "minkowski_sum", "negate", "polar",
    "self_mixed_volumes", "translate", "unbalanced_difference_body",
    "unbalanced_volume_polynomial", "volume",
]
