"""Fusion rings of su(n) at level k, computed four independent ways."""

from .core import FusionContext, Partition, dual_weight, partition_to_weight, transpose, weight_to_partition
from .fusion_bethe import fuse_bethe
from .fusion_kac_walton import fuse_kac_walton
from .fusion_verlinde import fuse_verlinde, s_matrix
from .plactic import fuse_plactic, nc_poly, nc_schur
from .symfunc import FusionExpansion, SchurExpansion, lr_expand, straighten

__all__ = [
    "FusionContext",
    "FusionExpansion",
    "Partition",
    "SchurExpansion",
    "dual_weight",
    "fuse_bethe",
    "fuse_kac_walton",
    "fuse_plactic",
    "fuse_verlinde",
    "lr_expand",
    "nc_poly",
    "nc_schur",
    "partition_to_weight",
    "s_matrix",
    "straighten",
    "transpose",
    "weight_to_partition",
]
