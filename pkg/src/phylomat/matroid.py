"""Independence oracles for Jacobian matroids.

A coordinate subset is independent exactly when the corresponding columns
are linearly independent over the rational-function field.  The numeric
oracle evaluates at a point first (sound for independence: a nonzero minor
at a point certifies a nonzero minor polynomial); the symbolic oracle is
exact in both directions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from random import Random
from typing import Sequence

from .linalg import PolyMatrix, rank_mod, symbolic_rank
from .poly import DEFAULT_PRIME


def is_independent_numeric(J: PolyMatrix, subset: Sequence[int],
                           point: Sequence[int], p: int = DEFAULT_PRIME) -> bool:
    """True iff the subset's columns have full rank at the given point."""
    subset = list(subset)
    if not subset:
        return True
    if len(subset) > J.nrows:
        return False
    sub = J.columns(subset)
    return rank_mod(sub.eval_mod(point, p), p) == len(subset)


def is_independent_symbolic(J: PolyMatrix, subset: Sequence[int]) -> bool:
    """True iff the subset's columns are independent over the function field."""
    subset = list(subset)
    if not subset:
        return True
    if len(subset) > J.nrows:
        return False
    return symbolic_rank(J.columns(subset)) == len(subset)


def model_dimension(J: PolyMatrix) -> int:
    """Dimension of the parameterized model: the symbolic rank of its
    (matroid-equivalent) Jacobian."""
    return symbolic_rank(J)


@dataclass(frozen=True)
class MatroidComparison:
    equal: bool
    witness: tuple[int, ...] | None
    witness_direction: str | None  # which matrix finds the witness independent
    subsets_checked: int


def exhaustive_matroid_equal(J1: PolyMatrix, J2: PolyMatrix, max_size: int,
                             budget: int = 20000) -> MatroidComparison:
    """Compare two matroids on every subset of size <= max_size.

    Prunes supersets of sets dependent in both matroids (they stay dependent
    in both).  Raises ResourceWarning-style RuntimeError when the subset count
    exceeds the budget.
    """
    if J1.ncols != J2.ncols:
        raise ValueError("matroids live on different ground sets")
    n = J1.ncols
    total = sum(_binom(n, s) for s in range(1, max_size + 1))
    if total > budget:
        raise RuntimeError(
            f"matroid comparison needs {total} subset checks, budget is {budget}"
        )
    dead: set = set()  # sets dependent in both; supersets pruned
    checked = 0
    for size in range(1, max_size + 1):
        for S in itertools.combinations(range(n), size):
            if any(d <= set(S) for d in dead):
                continue
            checked += 1
            i1 = is_independent_symbolic(J1, S)
            i2 = is_independent_symbolic(J2, S)
            if i1 != i2:
                direction = "first" if i1 else "second"
                return MatroidComparison(False, S, direction, checked)
            if not i1:
                dead.add(frozenset(S))
    return MatroidComparison(True, None, None, checked)


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out
