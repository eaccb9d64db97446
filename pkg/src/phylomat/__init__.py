"""Exact matroid-separation toolkit for group-based phylogenetic models."""

from .poly import Fp, Polynomial, ExactDivisionError, poly_eval
from .linalg import PolyMatrix, bareiss_rank, minor_degree_bound, scalar_rank, symbolic_rank

__version__ = "0.1.0"
