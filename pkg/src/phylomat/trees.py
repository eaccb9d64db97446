"""Unrooted binary leaf-labelled trees encoded as split sets.

A split is one side of the bipartition a tree edge induces on the leaf set
[n]; we store the side that does not contain leaf n, as a bitmask.  A tree is
exactly its set of splits (trivial leaf splits included), so equality,
hashing, and the text format all go through splits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(mask: int) -> list[int]:
    out = []
    leaf = 1
    while mask:
        if mask & 1:
            out.append(leaf)
        mask >>= 1
        leaf += 1
    return out


@dataclass(frozen=True, order=True)
class Split:
    """One side of a leaf bipartition, canonically the side without leaf n."""

    n: int
    block: int

    def __post_init__(self):
        full = (1 << self.n) - 1
        if not (0 < self.block < full):
            raise ValueError("split block must be a nonempty proper subset")
        if self.block & (1 << (self.n - 1)):
            raise ValueError("canonical split block must not contain the top leaf")

    @classmethod
    def of(cls, n: int, leaves: Iterable[int]) -> "Split":
        mask = 0
        for leaf in leaves:
            if not 1 <= leaf <= n:
                raise ValueError(f"leaf {leaf} outside [1,{n}]")
            mask |= 1 << (leaf - 1)
        if mask & (1 << (n - 1)):
            mask = ((1 << n) - 1) ^ mask
        return cls(n, mask)

    @property
    def size(self) -> int:
        return _popcount(self.block)

    @property
    def is_trivial(self) -> bool:
        return self.size == 1 or self.size == self.n - 1

    def leaves(self) -> list[int]:
        return _bits(self.block)

    def other_side(self) -> list[int]:
        return _bits(((1 << self.n) - 1) ^ self.block)

    def compatible(self, other: "Split") -> bool:
        """Two splits coexist in a tree iff some pair of opposite sides is disjoint."""
        full = (1 << self.n) - 1
        a, b = self.block, full ^ self.block
        c, d = other.block, full ^ other.block
        return not (a & c) or not (a & d) or not (b & c) or not (b & d)

    def permuted(self, sigma: Sequence[int]) -> "Split":
        """Relabel leaves by sigma (sigma[i-1] is the image of leaf i)."""
        return Split.of(self.n, [sigma[leaf - 1] for leaf in self.leaves()])

    def text(self) -> str:
        left = "".join(str(x) for x in self.leaves())
        right = "".join(str(x) for x in self.other_side())
        return f"{left}|{right}"


@dataclass(frozen=True)
class Tree:
    """Unrooted binary tree on leaves [n], determined by its split set."""

    n: int
    splits: frozenset

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("need at least 4 leaves")
        if len(self.splits) != 2 * self.n - 3:
            raise ValueError(
                f"a binary tree on {self.n} leaves has {2 * self.n - 3} splits, "
                f"got {len(self.splits)}"
            )
        ss = sorted(self.splits)
        for i, s in enumerate(ss):
            if s.n != self.n:
                raise ValueError("split over wrong leaf count")
            for t in ss[i + 1:]:
                if not s.compatible(t):
                    raise ValueError(f"incompatible splits {s.text()} / {t.text()}")

    @classmethod
    def from_internal_splits(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Tree":
        splits = {Split.of(n, [leaf]) for leaf in range(1, n + 1)}
        for b in blocks:
            s = Split.of(n, b)
            if s.is_trivial:
                raise ValueError("trivial split passed as internal")
            splits.add(s)
        return cls(n, frozenset(splits))

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Tree":
        """Parse the split-list notation, e.g. '12|3456,123|456,1234|56'.

        Leaf splits are implied.  Every listed split must partition the same
        leaf set.
        """
        pieces = [p for p in text.replace(" ", "").split(",") if p]
        if not pieces:
            raise ValueError("empty tree text")
        blocks = []
        seen_n = n
        for piece in pieces:
            if piece.count("|") != 1:
                raise ValueError(f"bad split {piece!r}")
            left, right = piece.split("|")
            both = [int(ch) for ch in left + right]
            if len(set(both)) != len(both):
                raise ValueError(f"repeated leaf in split {piece!r}")
            m = max(both)
            if sorted(both) != list(range(1, m + 1)):
                raise ValueError(f"split {piece!r} does not partition a leaf set")
            if seen_n is None:
                seen_n = m
            elif seen_n != m:
                raise ValueError("splits over different leaf sets")
            blocks.append([int(ch) for ch in left])
        return cls.from_internal_splits(seen_n, blocks)

    def internal_splits(self) -> list[Split]:
        return sorted((s for s in self.splits if not s.is_trivial),
                      key=lambda s: (s.size, s.block))

    def sorted_splits(self) -> list[Split]:
        return sorted(self.splits, key=lambda s: (s.size, s.block))

    def text(self) -> str:
        return ",".join(s.text() for s in self.internal_splits())

    def key(self) -> tuple:
        """Canonical sort key: sorted internal-split bitmasks."""
        return tuple(sorted(s.block for s in self.splits if not s.is_trivial))

    def __lt__(self, other: "Tree"):
        return self.key() < other.key()


def apply_permutation(tree: Tree, sigma: Sequence[int]) -> Tree:
    """Relabel a tree's leaves; canonical split orientation is restored."""
    if sorted(sigma) != list(range(1, tree.n + 1)):
        raise ValueError("sigma is not a permutation of the leaf set")
    return Tree(tree.n, frozenset(s.permuted(sigma) for s in tree.splits))


def enumerate_trees(n: int) -> list[Tree]:
    """All unrooted binary trees on [n], canonically ordered.

    Built by inserting leaves 4..n into every edge of every smaller tree.
    """
    if not 4 <= n <= 8:
        raise ValueError("leaf count must be between 4 and 8")
    # adjacency-list representation during construction: leaves 1..n,
    # internal vertices get negative ids
    base_edges = [(1, -1), (2, -1), (3, -1)]
    shapes = [base_edges]
    for leaf in range(4, n + 1):
        grown = []
        for edges in shapes:
            new_internal = -(leaf - 2)
            for k in range(len(edges)):
                u, v = edges[k]
                rest = edges[:k] + edges[k + 1:]
                grown.append(rest + [(u, new_internal), (v, new_internal),
                                     (leaf, new_internal)])
        shapes = grown
    trees = sorted(Tree(n, frozenset(_edge_splits(edges, n))) for edges in shapes)
    return trees


def _edge_splits(edges: list[tuple[int, int]], n: int) -> list[Split]:
    adj: dict = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    splits = []
    for u, v in edges:
        # leaves on u's side of edge (u, v)
        stack, seen, mask = [u], {u, v}, 0
        while stack:
            w = stack.pop()
            if w > 0:
                mask |= 1 << (w - 1)
            for x in adj[w]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        splits.append(Split.of(n, _bits(mask)))
    return splits


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out
