"""Trees as split sets: enumeration, relabelling, text round trips."""

import itertools
from random import Random

import pytest

from phylomat.trees import Split, Tree, apply_permutation, double_factorial, enumerate_trees


def test_enumeration_counts_match_double_factorial():
    for n in range(4, 9):
        trees = enumerate_trees(n)
        assert len(trees) == double_factorial(2 * n - 5)
        assert len({t.key() for t in trees}) == len(trees)


def all_trees_by_compatibility(n):
    """Independent oracle: maximal sets of pairwise compatible nontrivial
    splits, found by brute force over all split combinations."""
    blocks = []
    for size in range(2, n - 1):
        for comb in itertools.combinations(range(1, n + 1), size):
            s = Split.of(n, comb)
            if not s.is_trivial:
                blocks.append(s)
    blocks = sorted(set(blocks))
    internal = n - 3
    found = set()
    for comb in itertools.combinations(blocks, internal):
        if all(a.compatible(b) for a, b in itertools.combinations(comb, 2)):
            found.add(tuple(sorted(s.block for s in comb)))
    return found


@pytest.mark.parametrize("n", [4, 5, 6])
def test_enumeration_matches_compatibility_oracle(n):
    oracle = all_trees_by_compatibility(n)
    ours = {t.key() for t in enumerate_trees(n)}
    assert ours == oracle


def test_quartet_topologies():
    # canonical split blocks avoid the top leaf, so {1,4}|{2,3} prints 23|14
    texts = sorted(t.text() for t in enumerate_trees(4))
    assert texts == ["12|34", "13|24", "23|14"]


def test_text_round_trip():
    rng = Random(6)
    for n in (4, 5, 6):
        for t in enumerate_trees(n):
            assert Tree.from_text(t.text()) == t
    t = Tree.from_text("12|3456,123|456,1234|56")
    assert t.text() == "12|3456,123|456,1234|56"


def test_from_text_rejects_garbage():
    with pytest.raises(ValueError):
        Tree.from_text("12|34,13|24")  # incompatible splits
    with pytest.raises(ValueError):
        Tree.from_text("12|345")  # not a partition of [n]
    with pytest.raises(ValueError):
        Tree.from_text("")
    with pytest.raises(ValueError):
        Tree.from_text("11|23")


def test_permutation_round_trip():
    rng = Random(8)
    trees = enumerate_trees(6)
    for _ in range(200):
        t = trees[rng.randrange(len(trees))]
        sigma = list(range(1, 7))
        rng.shuffle(sigma)
        inverse = [0] * 6
        for i, v in enumerate(sigma):
            inverse[v - 1] = i + 1
        assert apply_permutation(apply_permutation(t, sigma), inverse) == t


def test_identity_permutation_fixes_tree():
    t = Tree.from_text("12|3456,123|456,1234|56")
    assert apply_permutation(t, (1, 2, 3, 4, 5, 6)) == t


def test_quartet_relabelling():
    t = Tree.from_text("12|34")
    assert apply_permutation(t, (1, 3, 2, 4)).text() == "13|24"


def test_unresolved_pair_trees_related_by_permutation():
    # sigma = 1->2, 2->3, 3->1, 4->6, 5->4, 6->5 carries the first tree of the
    # unseparated comparison onto the second
    t1 = Tree.from_text("12|3456,123|456,1234|56")
    t2 = Tree.from_text("23|1456,123|456,1236|45")
    assert apply_permutation(t1, (2, 3, 1, 6, 4, 5)) == t2


def test_split_canonical_orientation():
    s = Split.of(6, [4, 5, 6])  # contains the top leaf: flips to complement
    assert s.leaves() == [1, 2, 3]
    assert s.text() == "123|456"
    with pytest.raises(ValueError):
        Split.of(4, [])
    with pytest.raises(ValueError):
        Split.of(4, [1, 2, 3, 4])


def test_split_compatibility():
    a = Split.of(6, [1, 2])
    b = Split.of(6, [1, 2, 3])
    c = Split.of(6, [2, 3])
    assert a.compatible(b)
    assert not a.compatible(c)


def test_tree_validation():
    with pytest.raises(ValueError):
        Tree.from_internal_splits(6, [[1, 2], [2, 3], [1, 2, 3]])
    with pytest.raises(ValueError):
        Tree.from_internal_splits(6, [[1, 2]])  # too few splits
    with pytest.raises(ValueError):
        Tree.from_internal_splits(6, [[1]])  # trivial block
