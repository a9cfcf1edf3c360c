"""Non-symplectic indices of supersingular K3 surfaces, computed from
characteristic-subspace data both combinatorially and by enumeration."""

from .arith import classify_reduction, residue_classes_for_artin
from .charspace import CharSubspace, psi, search_subspace, special_subspace
from .discform import build_disc_space
from .ffield import field_create
from .oracle import enumerate_index
from .strata import ZeroPattern, nonsymplectic_index, table1

__all__ = [
    "CharSubspace",
    "ZeroPattern",
    "build_disc_space",
    "classify_reduction",
    "enumerate_index",
    "field_create",
    "nonsymplectic_index",
    "psi",
    "residue_classes_for_artin",
    "search_subspace",
    "special_subspace",
    "table1",
]
