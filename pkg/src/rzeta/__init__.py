"""Reidemeister numbers and rational Reidemeister zeta functions.

Covers automorphisms of crystallographic groups with diagonal holonomy Z_2,
``<Z^k, (0, -I_k)> x Z^(n-k)``, in exact arithmetic.

>>> from rzeta import DiagZ2Group, AffineAut, validate, full_pipeline
>>> auto = validate(DiagZ2Group(2, 2), AffineAut.of([[1, 1], [1, 0]], [0, 0]))
>>> full_pipeline(auto).function.denominator
(1, -2, 0, 0, 2, 0, -1)
"""
from .f2linalg import MatF2, VecF2, count_solutions, rank_and_solve, split_unipotent, sylvester_solve
from .group import (
    INFINITE,
    AffineAut,
    Automorphism,
    DiagZ2Group,
    ValidationError,
    is_finite,
    reidemeister_number,
    reidemeister_numbers,
    validate,
    zeta_exists,
)
from .intlinalg import MatZ, PolyZ, charpoly, det, mat_pow
from .seqdecomp import BasisCombo, combine, decompose, decompose_blocks, eval_combo, solution_sequence
from .zeta import (
    PowerSeriesQ,
    Radius,
    RationalFn,
    degree_bound,
    full_pipeline,
    radius,
    reconstruct,
    second_factor,
    zeta_series,
)

__version__ = "0.1.0"
