"""Symmetry reduction of mixture comparisons under leaf relabelling.

A comparison case is an unordered pair of distinct 2-multisets of n-leaf
trees; the symmetric group acts simultaneously on both sides.  Enumeration
walks one representative per multiset orbit and then the orbits of its
stabilizer, so the full quadratic pair space is never materialized.  The
canonical representative of a case is the lexicographic minimum of its
encoding over the whole group, which makes case ids stable across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .trees import Tree, apply_permutation, enumerate_trees


@dataclass(frozen=True)
class MixtureCase:
    """Canonical representative {left multiset} vs {right multiset}."""

    left: tuple[Tree, Tree]
    right: tuple[Tree, Tree]
    orbit_size: int


class _Action:
    """Precomputed S_n action on trees and tree 2-multisets."""

    def __init__(self, n: int):
        self.n = n
        self.trees = enumerate_trees(n)
        self.tree_index = {t.key(): i for i, t in enumerate(self.trees)}
        self.perms = [tuple(p) for p in itertools.permutations(range(1, n + 1))]
        self.tree_table = [
            [self.tree_index[apply_permutation(t, sigma).key()] for t in self.trees]
            for sigma in self.perms
        ]
        nt = len(self.trees)
        self.multisets = [(i, j) for i in range(nt) for j in range(i, nt)]
        self.mset_index = {m: k for k, m in enumerate(self.multisets)}
        self.mset_table = []
        for trow in self.tree_table:
            row = []
            for i, j in self.multisets:
                a, b = trow[i], trow[j]
                row.append(self.mset_index[(a, b) if a <= b else (b, a)])
            self.mset_table.append(row)

    def case_canonical(self, a: int, b: int) -> tuple[int, int]:
        """Lexicographic minimum of the (sorted) image pair over all sigma."""
        best = None
        for row in self.mset_table:
            x, y = row[a], row[b]
            if x > y:
                x, y = y, x
            if best is None or (x, y) < best:
                best = (x, y)
        return best

    def case_stabilizer_size(self, a: int, b: int) -> int:
        count = 0
        for row in self.mset_table:
            x, y = row[a], row[b]
            if (x, y) == (a, b) or (y, x) == (a, b):
                count += 1
        return count


_ACTION_CACHE: dict = {}


def _action(n: int) -> _Action:
    if n not in _ACTION_CACHE:
        _ACTION_CACHE[n] = _Action(n)
    return _ACTION_CACHE[n]


def count_mixture_pairs(n: int) -> int:
    """Unordered pairs of distinct 2-multisets of n-leaf trees."""
    nt = len(enumerate_trees(n))
    nm = nt * (nt + 1) // 2
    return nm * (nm - 1) // 2


def enumerate_mixture_cases(n: int) -> list[MixtureCase]:
    """One canonical representative per symmetry class of comparison cases.

    The sum of the returned orbit sizes equals count_mixture_pairs(n).
    """
    if n not in (4, 5, 6):
        raise ValueError("mixture case enumeration supports 4 to 6 leaves")
    act = _action(n)
    group_order = len(act.perms)
    nm = len(act.multisets)

    # orbit representatives of single multisets
    mset_canon = [min(row[m] for row in act.mset_table) for m in range(nm)]
    reps = [m for m in range(nm) if mset_canon[m] == m]

    seen: dict[tuple[int, int], int] = {}
    for a in reps:
        stab_rows = [row for row in act.mset_table if row[a] == a]
        # orbits of the stabilizer on all multisets
        visited = [False] * nm
        for b0 in range(nm):
            if visited[b0]:
                continue
            orbit = {b0}
            frontier = [b0]
            while frontier:
                x = frontier.pop()
                for row in stab_rows:
                    y = row[x]
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            for x in orbit:
                visited[x] = True
            if a in orbit and len(orbit) == 1:
                continue
            b = min(x for x in orbit if x != a)
            key = act.case_canonical(a, b)
            if key not in seen:
                seen[key] = group_order // act.case_stabilizer_size(a, b)

    cases = []
    for (a, b), size in sorted(seen.items()):
        left = tuple(act.trees[i] for i in act.multisets[a])
        right = tuple(act.trees[i] for i in act.multisets[b])
        cases.append(MixtureCase(left, right, size))
    return cases


def canonical_case_key(n: int, left: Sequence[Tree], right: Sequence[Tree]) -> tuple:
    """Canonical (multiset index pair) id of an arbitrary case."""
    act = _action(n)

    def mset(ts):
        i = act.tree_index[ts[0].key()]
        j = act.tree_index[ts[1].key()]
        return act.mset_index[(i, j) if i <= j else (j, i)]

    a, b = mset(left), mset(right)
    if a == b:
        raise ValueError("case sides must be distinct multisets")
    return act.case_canonical(a, b)


def case_trees(n: int, key: tuple[int, int]) -> tuple[tuple[Tree, Tree], tuple[Tree, Tree]]:
    act = _action(n)
    a, b = key
    left = tuple(act.trees[i] for i in act.multisets[a])
    right = tuple(act.trees[i] for i in act.multisets[b])
    return left, right
