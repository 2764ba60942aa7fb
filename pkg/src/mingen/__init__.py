"""Minimal generating sets of finite permutation groups, computed from chief
series and crowns and cross-checked by exhaustive search."""

from .config import DEFAULT_BUDGETS, Budgets
from .crowns import crown_based_power, crown_decomposition, monolithic_primitive
from .dnum import DInterval, abelianization_d, d_brute, d_crown, schreier_bound
from .errors import InputError, InvariantError, MingenError, ResourceError
from .factors import classify_factor, g_equivalent, g_isomorphic, is_frattini
from .perm import (Homomorphism, PermGroup, Permutation, affine_group, coset_action, direct_product,
                   group_from_generators, wreath_product)
from .structure import chief_series, minimal_normal_subgroups, normal_closure

__version__ = "0.1.0"
