"""Symmetry classes of mixture-comparison cases."""

import itertools

import pytest

from phylomat.orbits import (canonical_case_key, case_trees, count_mixture_pairs,
                             enumerate_mixture_cases, _action)
from phylomat.trees import Tree, apply_permutation, enumerate_trees


def burnside_case_count(n):
    """Independent oracle: count orbits of unordered pairs of distinct
    2-multisets by averaging fixed points over the group."""
    act = _action(n)
    nm = len(act.multisets)
    total = 0
    for row in act.mset_table:
        fixed = sum(1 for m in range(nm) if row[m] == m)
        # 2-cycles of the permutation acting on multisets
        two_cycles = sum(1 for m in range(nm) if row[m] > m and row[row[m]] == m)
        total += fixed * (fixed - 1) // 2 + two_cycles
    return total // len(act.mset_table)


def test_four_leaf_case_count():
    cases = enumerate_mixture_cases(4)
    assert len(cases) == 4
    assert sum(c.orbit_size for c in cases) == count_mixture_pairs(4) == 15


def test_five_leaf_cases_match_burnside_oracle():
    cases = enumerate_mixture_cases(5)
    assert len(cases) == burnside_case_count(5)
    assert sum(c.orbit_size for c in cases) == count_mixture_pairs(5)


@pytest.mark.slow
def test_six_leaf_reduction_reproduces_published_counts():
    cases = enumerate_mixture_cases(6)
    assert count_mixture_pairs(6) == 15_481_830
    assert len(cases) == 22_773
    assert sum(c.orbit_size for c in cases) == 15_481_830
    assert len(cases) == burnside_case_count(6)


def test_representatives_are_canonical_and_distinct():
    cases = enumerate_mixture_cases(5)
    keys = set()
    for c in cases:
        key = canonical_case_key(5, c.left, c.right)
        left, right = case_trees(5, key)
        assert (left, right) == (c.left, c.right)
        keys.add(key)
    assert len(keys) == len(cases)


def test_whole_orbit_maps_to_same_representative():
    cases = enumerate_mixture_cases(4)
    perms = list(itertools.permutations(range(1, 5)))
    for c in cases:
        key = canonical_case_key(4, c.left, c.right)
        for sigma in perms:
            left = tuple(apply_permutation(t, sigma) for t in c.left)
            right = tuple(apply_permutation(t, sigma) for t in c.right)
            assert canonical_case_key(4, left, right) == key


def test_unresolved_pair_is_a_single_known_class():
    t1 = Tree.from_text("12|3456,123|456,1234|56")
    t2 = Tree.from_text("23|1456,123|456,1236|45")
    s1 = Tree.from_text("12|3456,123|456,1236|45")
    s2 = Tree.from_text("23|1456,123|456,1234|56")
    key = canonical_case_key(6, (t1, t2), (s1, s2))
    # swapping the sides or relabelling leaves lands in the same class
    assert canonical_case_key(6, (s1, s2), (t1, t2)) == key
    sigma = (3, 1, 2, 5, 6, 4)
    left = tuple(apply_permutation(t, sigma) for t in (t1, t2))
    right = tuple(apply_permutation(t, sigma) for t in (s1, s2))
    assert canonical_case_key(6, left, right) == key


def test_identical_multisets_rejected():
    trees = enumerate_trees(4)
    with pytest.raises(ValueError):
        canonical_case_key(4, (trees[0], trees[1]), (trees[1], trees[0]))
