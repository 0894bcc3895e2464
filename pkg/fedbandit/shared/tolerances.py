"""
Tolerances
===========

All numeric tolerances used by fedbandit live in this one record.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    orthogonality: float = 1e-10
    norm_preservation: float = 1e-9
    symmetry: float = 1e-12
    cholesky_reconstruction: float = 1e-9
    inverse_residual: float = 1e-8
    theta_consistency: float = 1e-10
    radicand_clamp: float = 1e-12
    tie_atol: float = 1e-9
    lossless_relative: float = 1e-8
    witness: float = 1e-9
    witness_distinct: float = 1e-6
    orthogonal_max_retries: int = 8
    degenerate_column_norm: float = 1e-8


TOLERANCES = Tolerances()
