"""Randomized search for matroid-separation certificates.

Both searches draw a coordinate subset, screen it at random evaluation
points, and only then spend effort on the candidate.  The exact search
verifies candidates over the function field, so its certificates are proofs.
The sampled search instead re-tests the dependent side at fresh points: a
candidate that was merely unlucky gets refuted (independence at a point is
conclusive), and one that survives all rounds is wrong with probability at
most (alpha/|E|)^l, where alpha bounds the degree of the screening minors.

A failed search is never evidence that the matroids coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Sequence

from .linalg import PolyMatrix, minor_degree_bound, rank_mod, rank_mod_pivots
from .matroid import is_independent_symbolic
from .poly import DEFAULT_PRIME


@dataclass(frozen=True)
class SZConfig:
    """Sampling parameters for the probabilistic verifier."""

    epsilon: float
    sample_size: int  # |E|; points are drawn from {1, ..., |E|}
    amplification: int  # l, smallest with (alpha/|E|)^l <= epsilon
    trials: int
    alpha: int

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError("tolerance must lie in (0, 1)")
        if self.sample_size <= self.alpha:
            raise ValueError("sample set must be larger than the degree bound")
        if self.sample_size >= DEFAULT_PRIME:
            raise ValueError("sample set exceeds the screening prime field")
        if self.amplification < 1:
            raise ValueError("amplification count must be positive")

    @classmethod
    def for_models(cls, J1: PolyMatrix, J2: PolyMatrix, subset_bound: int,
                   epsilon: float = 1e-10, trials: int = 2000,
                   sample_scale: int = 10**6) -> "SZConfig":
        """Size the sample set from a degree bound on the screening minors.

        alpha bounds every minor tested on either side up to the subset-size
        cap, |E| = sample_scale * alpha, and l is minimal with
        (alpha/|E|)^l <= epsilon.
        """
        s1 = min(subset_bound, J1.nrows, J1.ncols)
        s2 = min(subset_bound, J2.nrows, J2.ncols)
        alpha = max(minor_degree_bound(J1, s1), minor_degree_bound(J2, s2), 1)
        sample_size = sample_scale * alpha
        ratio = Fraction(alpha, sample_size)
        eps = Fraction(epsilon)
        bound = ratio
        amplification = 1
        while bound > eps:
            bound *= ratio
            amplification += 1
        return cls(epsilon, sample_size, amplification, trials, alpha)


@dataclass(frozen=True)
class Separation:
    """A subset separating two matroids, with its verification record."""

    subset: tuple[int, ...]
    independent_side: int  # 1 or 2: which input matroid contains the subset
    verification: dict


@dataclass(frozen=True)
class SearchOutcome:
    separation: Separation | None
    trials_used: int
    screen_hits: int  # candidates that passed the point screen

    @property
    def found(self) -> bool:
        return self.separation is not None


def _screen(J: PolyMatrix, subset: Sequence[int], rng: Random, sample_size: int):
    point = [rng.randint(1, sample_size) for _ in J.vars]
    sub = J.columns(list(subset))
    rank = rank_mod(sub.eval_mod(point, DEFAULT_PRIME), DEFAULT_PRIME)
    return rank == len(subset)


def _draw_small_subset(rng: Random, ncols: int, max_size: int) -> list[int]:
    lo = min(2, max_size)
    size = lo
    while size < max_size and rng.random() < 0.7:
        size += 1
    return sorted(rng.sample(range(ncols), size))


def _greedy_basis(J: PolyMatrix, rng: Random, sample_size: int) -> list[int]:
    """Random basis of J's column matroid: pivots of a shuffled evaluation."""
    order = list(range(J.ncols))
    rng.shuffle(order)
    point = [rng.randint(1, sample_size) for _ in J.vars]
    ev = J.eval_mod(point, DEFAULT_PRIME)
    shuffled = [[row[j] for j in order] for row in ev]
    pivots = rank_mod_pivots(shuffled, DEFAULT_PRIME)
    return sorted(order[j] for j in pivots)


def _shrink_candidate(J_dep: PolyMatrix, J_ind: PolyMatrix, T: list[int],
                      rng: Random, sample_size: int) -> list[int]:
    """Greedily drop columns while the point screen keeps T separating.

    Subsets of an independent set stay independent, so only the dependent
    side needs rechecking; this is a heuristic (the verifier has the final
    word) but it usually returns something close to a circuit, which keeps
    symbolic verification cheap.
    """
    current = list(T)
    order = list(T)
    rng.shuffle(order)
    for col in order:
        if len(current) <= 2:
            break
        trial = [c for c in current if c != col]
        if not _screen(J_dep, trial, rng, sample_size):
            current = trial
    return current


def _next_candidate(J1: PolyMatrix, J2: PolyMatrix, trial: int, rng: Random,
                    sample_size: int, subset_bound: int, same_dim: bool,
                    sampler: str):
    """One candidate (T, dependent side) or None.

    The guided sampler draws a random basis of one matroid and keeps it when
    the point screen finds it dependent in the other; random plain subsets
    rarely separate these models, while a differing basis must exist whenever
    the matroids differ at equal rank.
    """
    if sampler == "small":
        T = _draw_small_subset(rng, J1.ncols, subset_bound)
        if _screen(J2, T, rng, sample_size) and not _screen(J1, T, rng, sample_size):
            return T, 1
        if same_dim and _screen(J1, T, rng, sample_size) and not _screen(J2, T, rng, sample_size):
            return T, 2
        return None
    # guided / basis: orientation alternates in same-dimension mode
    dep_side = 1 if (not same_dim or trial % 2 == 1) else 2
    J_dep, J_ind = (J1, J2) if dep_side == 1 else (J2, J1)
    T = _greedy_basis(J_ind, rng, sample_size)
    if not T or len(T) > subset_bound:
        return None
    if _screen(J_dep, T, rng, sample_size):
        return None
    if sampler != "basis":
        T = _shrink_candidate(J_dep, J_ind, T, rng, sample_size)
        if not _screen(J_ind, T, rng, sample_size):
            return None
    return T, dep_side


def certify_exact(J1: PolyMatrix, J2: PolyMatrix, trials: int,
                  subset_bound: int, seed: int = 0, same_dim: bool = False,
                  sample_size: int = 10**6, sampler: str = "guided") -> SearchOutcome:
    """Search with symbolic verification of every screened candidate.

    Candidates T have |T| <= subset_bound (callers pass dim(M2); orient so
    dim(M1) >= dim(M2)); a certificate has T independent for the second model
    and dependent for the first, or the swapped direction when ``same_dim``.
    Exhausting the trials is not evidence the matroids agree.
    """
    if trials <= 0:
        raise ValueError("trial count must be positive")
    if J1.ncols != J2.ncols:
        raise ValueError("models have different coordinate counts")
    rng = Random(seed)
    hits = 0
    for trial in range(1, trials + 1):
        cand = _next_candidate(J1, J2, trial, rng, sample_size, subset_bound,
                               same_dim, sampler)
        if cand is None:
            continue
        T, dep_side = cand
        hits += 1
        J_dep, J_ind = (J1, J2) if dep_side == 1 else (J2, J1)
        if is_independent_symbolic(J_ind, T) and not is_independent_symbolic(J_dep, T):
            sep = Separation(tuple(T), 3 - dep_side, {"kind": "symbolic"})
            return SearchOutcome(sep, trial, hits)
    return SearchOutcome(None, trials, hits)


def certify_sz(J1: PolyMatrix, J2: PolyMatrix, cfg: SZConfig,
               seed: int = 0, same_dim: bool = False, subset_bound: int | None = None,
               sampler: str = "guided") -> SearchOutcome:
    """Search with amplified point re-sampling instead of symbolic checks.

    A screened candidate's dependent side is re-tested at ``cfg.amplification``
    fresh points; any independence refutes it conclusively, while surviving
    every round leaves at most (alpha/|E|)^l <= epsilon failure probability.
    """
    if J1.ncols != J2.ncols:
        raise ValueError("models have different coordinate counts")
    if subset_bound is None:
        subset_bound = min(J2.nrows, J2.ncols)
    rng = Random(seed)
    hits = 0
    for trial in range(1, cfg.trials + 1):
        cand = _next_candidate(J1, J2, trial, rng, cfg.sample_size, subset_bound,
                               same_dim, sampler)
        if cand is None:
            continue
        T, dep_side = cand
        hits += 1
        J_dep = J1 if dep_side == 1 else J2
        refuted = False
        for _ in range(cfg.amplification):
            if _screen(J_dep, T, rng, cfg.sample_size):
                refuted = True
                break
        if refuted:
            continue
        verification = {
            "kind": "schwartz-zippel",
            "epsilon": cfg.epsilon,
            "l": cfg.amplification,
            "E": cfg.sample_size,
            "alpha": cfg.alpha,
        }
        return SearchOutcome(Separation(tuple(T), 3 - dep_side, verification),
                             trial, hits)
    return SearchOutcome(None, cfg.trials, hits)


def verify_separation(J1: PolyMatrix, J2: PolyMatrix, subset: Sequence[int],
                      independent_side: int) -> bool:
    """Replay the symbolic two-sided check on a stored subset."""
    J_ind, J_dep = (J1, J2) if independent_side == 1 else (J2, J1)
    subset = list(subset)
    if not subset:
        return False
    return is_independent_symbolic(J_ind, subset) and \
        not is_independent_symbolic(J_dep, subset)
