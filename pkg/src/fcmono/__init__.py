"""Monodromy representation of Lauricella's F_C system, exact and numeric."""
from .classify import algebra_dimension, verify_invariant_subspace
from .indexing import BinaryIndex, all_indices, position
from .monodromy import (build_H, build_M0, build_Mk, build_Pm, build_tilde_H, build_tilde_M0,
                        build_tilde_Mk, word_matrix)
from .params import ParameterPoint
from .scalars import ExactField, NumericField
from .series import fc_series, pde_residual, solution_FI
from .verify import run_suite

__all__ = [
    "BinaryIndex", "ExactField", "NumericField", "ParameterPoint",
    "algebra_dimension", "all_indices", "build_H", "build_M0", "build_Mk", "build_Pm",
    "build_tilde_H", "build_tilde_M0", "build_tilde_Mk", "fc_series",
    "pde_residual", "position", "run_suite", "solution_FI", "verify_invariant_subspace",
    "word_matrix",
]
