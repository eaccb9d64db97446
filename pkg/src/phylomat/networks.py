"""Semi-directed cycle networks with one reticulation vertex.

A k-cycle network attaches a rooted subtree (at least one leaf) to each of k
cycle vertices; position 0 is the reticulation vertex and its two incident
cycle edges are the reticulation edges.  Reflecting the cycle through
position 0 gives the same semi-directed network, so constructors canonicalize
the orientation.

Edges carry explicit 1-based labels: subtree edges first (by cycle position,
depth-first within a subtree), then the cycle edges starting with the
reticulation edge toward position 1.  The two reticulation-deletion trees
share all surviving labels, which is what makes the network model a
parameter-sharing mixture.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .models import LAMBDA, ModelKind, Parameterization, zero_sum_tuples
from .trees import Split, Tree

# a subtree is a leaf int or a pair of subtrees
Subtree = object


def _subtree_leaves(t) -> list[int]:
    if isinstance(t, int):
        return [t]
    a, b = t
    return _subtree_leaves(a) + _subtree_leaves(b)


def _normalize_subtree(t):
    if isinstance(t, int):
        return t
    a, b = t
    a = _normalize_subtree(a)
    b = _normalize_subtree(b)
    if min(_subtree_leaves(a)) > min(_subtree_leaves(b)):
        a, b = b, a
    return (a, b)


def _subtree_text(t) -> str:
    if isinstance(t, int):
        return str(t)
    a, b = t
    return f"({_subtree_text(a)},{_subtree_text(b)})"


def _parse_subtree(s: str, pos: int = 0):
    if s[pos] == "(":
        left, pos = _parse_subtree(s, pos + 1)
        if s[pos] != ",":
            raise ValueError(f"bad subtree near index {pos} in {s!r}")
        right, pos = _parse_subtree(s, pos + 1)
        if s[pos] != ")":
            raise ValueError(f"bad subtree near index {pos} in {s!r}")
        return (left, right), pos + 1
    j = pos
    while j < len(s) and s[j].isdigit():
        j += 1
    if j == pos:
        raise ValueError(f"bad subtree near index {pos} in {s!r}")
    return int(s[pos:j]), j


@dataclass(frozen=True)
class CycleNetwork:
    """k-cycle network on leaves [n]; subtrees[0] hangs off the reticulation."""

    n: int
    k: int
    subtrees: tuple

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("cycle size must be at least 2")
        if len(self.subtrees) != self.k:
            raise ValueError("one subtree per cycle vertex required")
        leaves = []
        for t in self.subtrees:
            leaves.extend(_subtree_leaves(t))
        if sorted(leaves) != list(range(1, self.n + 1)):
            raise ValueError("subtree leaves must partition the leaf set")
        canon = canonical_subtrees(self.subtrees)
        if canon != self.subtrees:
            object.__setattr__(self, "subtrees", canon)

    @classmethod
    def of(cls, subtrees: Sequence) -> "CycleNetwork":
        subtrees = tuple(subtrees)
        n = sum(len(_subtree_leaves(t)) for t in subtrees)
        return cls(n, len(subtrees), subtrees)

    def serial(self) -> str:
        body = "|".join(_subtree_text(t) for t in self.subtrees)
        return f"cyc{self.k}:{body}"

    @classmethod
    def from_serial(cls, s: str) -> "CycleNetwork":
        head, _, body = s.partition(":")
        if not head.startswith("cyc") or not body:
            raise ValueError(f"bad network serial {s!r}")
        k = int(head[3:])
        parts = body.split("|")
        if len(parts) != k:
            raise ValueError(f"expected {k} subtrees in {s!r}")
        subtrees = []
        for part in parts:
            t, end = _parse_subtree(part)
            if end != len(part):
                raise ValueError(f"trailing junk in subtree {part!r}")
            subtrees.append(t)
        return cls.of(subtrees)

    # -- structure ----------------------------------------------------------

    def edges(self) -> list[tuple]:
        """Edge list [(u, v), ...] in label order; labels are 1-based indices.

        Vertices: ("c", i) cycle vertices, ("v", j) internal subtree vertices,
        and positive ints for leaves.
        """
        out = []
        counter = itertools.count()

        def walk(parent, t):
            if isinstance(t, int):
                out.append((parent, t))
                return
            me = ("v", next(counter))
            out.append((parent, me))
            a, b = t
            walk(me, a)
            walk(me, b)

        for i, t in enumerate(self.subtrees):
            walk(("c", i), t)
        for i in range(self.k):
            out.append((("c", i), ("c", (i + 1) % self.k)))
        return out

    def reticulation_edge_labels(self) -> tuple[int, int]:
        """Labels of the two cycle edges at the reticulation vertex."""
        m = len(self.edges())
        return (m - self.k + 1, m)

    def edge_splits(self, drop: int) -> dict[int, Split]:
        """Split of [n] induced by each surviving edge after deleting the
        cycle edge labelled ``drop``."""
        edges = self.edges()
        adj: dict = {}
        for idx, (u, v) in enumerate(edges, start=1):
            if idx == drop:
                continue
            adj.setdefault(u, []).append((v, idx))
            adj.setdefault(v, []).append((u, idx))
        out = {}
        for idx, (u, v) in enumerate(edges, start=1):
            if idx == drop:
                continue
            stack, seen, leaves = [u], {u, v}, []
            while stack:
                w = stack.pop()
                if isinstance(w, int):
                    leaves.append(w)
                for x, _ in adj.get(w, ()):  # pragma: no branch
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
            out[idx] = Split.of(self.n, leaves)
        return out

    def deletion_trees(self) -> tuple[Tree, Tree]:
        """The two trees left by removing either reticulation edge (and
        suppressing the degree-2 vertices, which dedupes path splits)."""
        first, second = self.reticulation_edge_labels()
        out = []
        for drop in (first, second):
            splits = frozenset(self.edge_splits(drop).values())
            out.append(Tree(self.n, splits))
        return tuple(out)


def canonical_subtrees(subtrees: Sequence) -> tuple:
    norm = tuple(_normalize_subtree(t) for t in subtrees)
    flipped = (norm[0],) + tuple(reversed(norm[1:]))
    key = tuple(_subtree_text(t) for t in norm)
    fkey = tuple(_subtree_text(t) for t in flipped)
    return norm if key <= fkey else flipped


def network_map(net: CycleNetwork, kind: ModelKind) -> Parameterization:
    """Fourier parameterization of a cycle-network model.

    Coordinate-wise lam * first-tree monomial + (1 - lam) * second-tree
    monomial, where both terms draw the same per-edge parameter symbols and
    each term omits the deleted reticulation edge.  Unlike the tree and
    mixture maps, identity-element parameters are kept: they homogenize the
    map, so its rank is the dimension of the cone over the network variety.
    """
    m = len(net.edges())
    slots = (kind.identity_slot,) + kind.slot_labels
    variables = []
    var_index = {}
    groups = []
    for e in range(1, m + 1):
        groups.append(tuple(range(len(variables), len(variables) + len(slots))))
        for slot in slots:
            var_index[(e, slot)] = len(variables)
            variables.append(f"e{e}.{slot}")
    variables.append(LAMBDA)
    variables = tuple(variables)
    nv = len(variables)

    first, second = net.reticulation_edge_labels()
    splits_by_term = [net.edge_splits(first), net.edge_splits(second)]
    coords = tuple(zero_sum_tuples(net.n, kind.group_order))
    comps = []
    for g in coords:
        pair = []
        for splits in splits_by_term:
            e_vec = [0] * nv
            for label, split in splits.items():
                h = 0
                for leaf in split.leaves():
                    h ^= g[leaf - 1]
                e_vec[var_index[(label, kind.slot(h))]] += 1
            pair.append(tuple(e_vec))
        comps.append(tuple(pair))
    return Parameterization(kind, net.n, variables, coords, tuple(comps),
                            var_groups=tuple(groups))


def enumerate_rooted_shapes(leaves: Sequence[int]) -> list:
    """All rooted binary shapes on a fixed leaf set."""
    leaves = sorted(leaves)
    if len(leaves) == 1:
        return [leaves[0]]
    out = []
    rest = leaves[1:]
    # leaves[0] stays on the left side to avoid mirror duplicates
    for size in range(0, len(rest)):
        for extra in itertools.combinations(rest, size):
            left_set = [leaves[0], *extra]
            right_set = [x for x in rest if x not in extra]
            if not right_set:
                continue
            for left in enumerate_rooted_shapes(left_set):
                for right in enumerate_rooted_shapes(right_set):
                    out.append(_normalize_subtree((left, right)))
    return out


def enumerate_cycle_networks(n: int, k: int) -> list[CycleNetwork]:
    """All k-cycle networks on [n], one per semi-directed isomorphism class."""
    if not 2 <= k <= n:
        raise ValueError("need 2 <= k <= n")
    leaves = list(range(1, n + 1))
    seen = {}
    for blocks in _ordered_set_partitions(leaves, k):
        for shapes in itertools.product(*[enumerate_rooted_shapes(b) for b in blocks]):
            net = CycleNetwork.of(shapes)
            seen.setdefault(net.serial(), net)
    return [seen[s] for s in sorted(seen)]


def _ordered_set_partitions(items: list[int], k: int):
    """Ordered partitions of ``items`` into k nonempty blocks."""
    n = len(items)
    for assignment in itertools.product(range(k), repeat=n):
        blocks = [[] for _ in range(k)]
        for item, b in zip(items, assignment):
            blocks[b].append(item)
        if all(blocks):
            yield blocks


# acceptance networks, named by their shape
NAMED_NETWORKS = {
    # the two 4-leaf 4-cycle networks that differ by one leaf transposition
    "ring4-1234": "cyc4:1|2|3|4",
    "ring4-1243": "cyc4:1|2|4|3",
    # 5-leaf 4-cycle networks with a cherry opposite the reticulation leaf
    "ring4-cherry45": "cyc4:1|(4,5)|3|2",
    "ring4-cherry23": "cyc4:1|(2,3)|4|5",
    # 5-cycle with every leaf pendant, reticulation at leaf 1
    "sunlet5": "cyc5:1|2|3|4|5",
}


def named_network(name: str) -> CycleNetwork:
    if name in NAMED_NETWORKS:
        return CycleNetwork.from_serial(NAMED_NETWORKS[name])
    return CycleNetwork.from_serial(name)
