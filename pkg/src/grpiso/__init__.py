"""Finite-group computations on explicit Cayley tables.

Isomorphism testing, isomorphism-map extraction and isomorphism counting
for small finite groups, answered either by direct exhaustive search or by
reductions to automorphism-group oracles on direct products.
"""

__version__ = "0.1.0"

from .group_core import (  # noqa: F401
    Group,
    GroupError,
    Homomorphism,
    Subgroup,
    build_group,
    build_hom,
    center,
    derived_subgroup,
    direct_product,
    element_order,
    is_isomorphism,
    quotient,
    subgroup_closure,
)
from .perm_group import PermGroup, Permutation, group_order, orbits  # noqa: F401
