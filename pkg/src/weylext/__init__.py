"""Weyl, skew Weyl and Schur modules for GL_n over the integers, with exact Hom/Ext."""

__version__ = "0.1.0"

from .combinatorics import Partition, SkewShape, Tableau, conjugate, hook_length  # noqa: E402
from .zlinalg import AbelianGroupType, IntMatrix, snf  # noqa: E402
from .abw import DividedModule, ExteriorModule, WeylModule, schur_module, straighten  # noqa: E402
from .homology import ext_groups, exterior_ext_groups, hom_group, hom_presented  # noqa: E402

__all__ = [
    "Partition", "SkewShape", "Tableau", "conjugate", "hook_length",
    "AbelianGroupType", "IntMatrix", "snf",
    "DividedModule", "ExteriorModule", "WeylModule", "schur_module", "straighten",
    "ext_groups", "exterior_ext_groups", "hom_group", "hom_presented",
]
