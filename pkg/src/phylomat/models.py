"""Fourier-coordinate parameterizations of group-based models on trees.

The binary-state model lives over Z2 and the three four-state models over
Z2 x Z2; both groups are elementary abelian, so group addition is bitwise
xor on the integer encodings 0..1 and 0..3 (value = 2x + y for the pair
(x, y)).  Coordinates are indexed by leaf tuples of group elements summing
to zero; every other coordinate is identically zero and is omitted.

Parameters attached to the identity element are pinned to 1 and never appear
as variables.  Four-state kinds differ only in which nonzero elements share a
parameter slot per edge:

* k3p: all three distinct,
* k2p: a_(0,1) = a_(1,1) (our fixed convention, applied uniformly),
* jc:  all three identified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .linalg import PolyMatrix
from .poly import Polynomial
from .trees import Split, Tree

LAMBDA = "lam"


class ModelKind(Enum):
    CFN = "cfn"
    JC = "jc"
    K2P = "k2p"
    K3P = "k3p"

    @property
    def group_order(self) -> int:
        return 2 if self is ModelKind.CFN else 4

    @property
    def slot_labels(self) -> tuple[str, ...]:
        """Distinct per-edge parameter slots for the nonzero group elements."""
        if self is ModelKind.CFN:
            return ("1",)
        if self is ModelKind.K3P:
            return ("01", "10", "11")
        if self is ModelKind.K2P:
            return ("01", "10")
        return ("01",)

    @property
    def identity_slot(self) -> str:
        """Slot label of the identity element (kept only on network models)."""
        return "0" if self is ModelKind.CFN else "00"

    def slot(self, g: int) -> str:
        """Slot label of a group element."""
        if g == 0:
            return self.identity_slot
        if self is ModelKind.CFN:
            return "1"
        if self is ModelKind.K3P:
            return {1: "01", 2: "10", 3: "11"}[g]
        if self is ModelKind.K2P:
            return {1: "01", 2: "10", 3: "01"}[g]
        return "01"

    def element_wire(self, g: int):
        """JSON form of a group element: int for Z2, [x, y] pair otherwise."""
        if self is ModelKind.CFN:
            return g
        return [g >> 1, g & 1]

    def element_unwire(self, obj) -> int:
        if self is ModelKind.CFN:
            if obj not in (0, 1):
                raise ValueError(f"bad Z2 element {obj!r}")
            return obj
        x, y = obj
        if x not in (0, 1) or y not in (0, 1):
            raise ValueError(f"bad Z2xZ2 element {obj!r}")
        return 2 * x + y


def zero_sum_tuples(n: int, order: int) -> list[tuple[int, ...]]:
    """All g-tuples over the group with xor-sum zero, lexicographically."""
    out = []
    for head in itertools.product(range(order), repeat=n - 1):
        last = 0
        for g in head:
            last ^= g
        out.append(head + (last,))
    out.sort()
    return out


@dataclass(frozen=True)
class Parameterization:
    """Symbolic map from model parameters to the surviving Fourier coordinates.

    ``components[j]`` holds the exponent vectors of the one (tree) or two
    (mixture / network) monomials behind coordinate j; the mixing variable
    slot inside them is always zero.  The full coordinate polynomial is the
    monomial itself, or lam*first + (1-lam)*second.
    """

    kind: ModelKind
    n: int
    variables: tuple[str, ...]
    coords: tuple[tuple[int, ...], ...]
    components: tuple[tuple[tuple[int, ...], ...], ...]
    #: partition of the non-mixing variables such that within each group the
    #: exponents sum to 1 on every coordinate of a term using the group (and
    #: to 0 on the term that omits it); set by network builders, where groups
    #: are the per-edge parameter slots
    var_groups: tuple[tuple[int, ...], ...] | None = None

    @property
    def has_mixing(self) -> bool:
        return bool(self.variables) and self.variables[-1] == LAMBDA

    def coordinate_polys(self) -> list[Polynomial]:
        vs = self.variables
        if not self.has_mixing:
            return [Polynomial.monomial(vs, comps[0]) for comps in self.components]
        li = len(vs) - 1
        polys = []
        for comps in self.components:
            first, second = comps
            f_lam = first[:li] + (1,)
            s_lam = second[:li] + (1,)
            terms = {}
            terms[f_lam] = terms.get(f_lam, 0) + 1
            terms[second] = terms.get(second, 0) + 1
            terms[s_lam] = terms.get(s_lam, 0) - 1
            polys.append(Polynomial(vs, terms))
        return polys

    def jacobian(self) -> PolyMatrix:
        """Transposed Jacobian: rows are parameters, columns coordinates."""
        polys = self.coordinate_polys()
        rows = []
        for i in range(len(self.variables)):
            rows.append([f.diff(i) for f in polys])
        return PolyMatrix(self.variables, rows)

    def matroid_matrix(self) -> PolyMatrix:
        """Row-reduced Jacobian defining the same column matroid.

        The transposed Jacobian is transformed by invertible row operations
        over the function field (scaling row theta_i by theta_i, dividing
        disjoint mixture blocks by lam and 1-lam, and for parameter-sharing
        maps the per-group reduction below), so every column subset keeps its
        rank and the matroid is untouched while entries stay much smaller.
        """
        vs = self.variables
        nvars = len(vs)
        rows = []
        if not self.has_mixing:
            for i in range(nvars):
                row = []
                for comps in self.components:
                    e = comps[0]
                    row.append(Polynomial(vs, {e: e[i]}) if e[i] else Polynomial.zero(vs))
                rows.append(row)
            return PolyMatrix(vs, rows)
        li = nvars - 1
        if not self._shares_parameters():
            for i in range(li):
                row = []
                for comps in self.components:
                    # disjoint blocks: variable i occurs in only one term, and
                    # the lam / (1-lam) prefactor rescales away
                    first, second = comps
                    e = first if first[i] else second
                    row.append(Polynomial(vs, {e: e[i]}) if e[i] else Polynomial.zero(vs))
                rows.append(row)
            rows.append(self._mixing_row())
            return PolyMatrix(vs, rows)
        if self.var_groups is not None:
            return self._grouped_matroid_matrix()
        for i in range(li):
            rows.append([self._shared_row_entry(i, comps) for comps in self.components])
        rows.append(self._mixing_row())
        return PolyMatrix(vs, rows)

    def _shared_row_entry(self, i: int, comps) -> Polynomial:
        """Entry lam*e_i*first + (1-lam)*e'_i*second of the theta_i-scaled row."""
        vs = self.variables
        li = len(vs) - 1
        first, second = comps
        terms: dict = {}
        if first[i]:
            f_lam = first[:li] + (1,)
            terms[f_lam] = terms.get(f_lam, 0) + first[i]
        if second[i]:
            s_lam = second[:li] + (1,)
            terms[second] = terms.get(second, 0) + second[i]
            terms[s_lam] = terms.get(s_lam, 0) - second[i]
        return Polynomial(vs, terms)

    def _mixing_row(self) -> list[Polynomial]:
        vs = self.variables
        row = []
        for first, second in self.components:
            terms: dict = {}
            terms[first] = terms.get(first, 0) + 1
            terms[second] = terms.get(second, 0) - 1
            row.append(Polynomial(vs, terms))
        return row

    def _grouped_matroid_matrix(self) -> PolyMatrix:
        """Reduced matrix for parameter-sharing maps with grouped variables.

        Within a group the slot rows sum to lam*first (group omitted from the
        second term), (1-lam)*second (omitted from the first), or the full
        coordinate lam*first + (1-lam)*second.  Those sums make all but two of
        them, and the mixing row, linear combinations of the rest:

            sum_g = sum_first + sum_second   and
            lam*(1-lam) * d/dlam = (1-lam)*sum_first - lam*sum_second.

        So the row space is spanned by per-group slot differences plus the two
        monomial rows ``first`` and ``second`` (the rescaled sums), which is
        what this returns; the change of basis is invertible, so the column
        matroid is exactly that of the Jacobian.
        """
        vs = self.variables
        # dividing column j by the shared monomial content of its two term
        # monomials is a column scaling, so ranks and the matroid survive;
        # shared factors (every edge whose split agrees in both trees) vanish
        stripped = []
        for first, second in self.components:
            m = tuple(min(a, b) for a, b in zip(first, second))
            stripped.append((tuple(a - c for a, c in zip(first, m)),
                             tuple(b - c for b, c in zip(second, m))))
        rows: list[list[Polynomial]] = []
        one_sided = [False, False]
        for group in self.var_groups:
            in_first = any(c[0][i] for c in self.components for i in group)
            in_second = any(c[1][i] for c in self.components for i in group)
            if in_first and not in_second:
                one_sided[0] = True
            if in_second and not in_first:
                one_sided[1] = True
            for comps in self.components:
                first, second = comps
                s1 = sum(first[i] for i in group)
                s2 = sum(second[i] for i in group)
                if (in_first and s1 != 1) or (in_second and s2 != 1) \
                        or (not in_first and s1) or (not in_second and s2):
                    raise AssertionError("variable group is not a unit partition")
            base = group[0]
            for i in group[1:]:
                row = []
                for comps, bare in zip(self.components, stripped):
                    entry = self._scaled_pair_entry(
                        bare, comps[0][i] - comps[0][base], comps[1][i] - comps[1][base])
                    row.append(entry)
                rows.append(row)
        if not (one_sided[0] and one_sided[1]):
            # the monomial rows are only reachable via the sums of the
            # one-sided groups (the deleted reticulation edges)
            raise AssertionError("grouped reduction needs a group unique to each term")
        rows.append([Polynomial(vs, {c[0]: 1}) for c in stripped])
        rows.append([Polynomial(vs, {c[1]: 1}) for c in stripped])
        return PolyMatrix(vs, rows)

    def _scaled_pair_entry(self, bare, c1: int, c2: int) -> Polynomial:
        """c1 * lam * first + c2 * (1 - lam) * second on stripped monomials."""
        vs = self.variables
        li = len(vs) - 1
        first, second = bare
        terms: dict = {}
        if c1:
            f_lam = first[:li] + (1,)
            terms[f_lam] = terms.get(f_lam, 0) + c1
        if c2:
            s_lam = second[:li] + (1,)
            terms[second] = terms.get(second, 0) + c2
            terms[s_lam] = terms.get(s_lam, 0) - c2
        return Polynomial(vs, terms)

    def _shares_parameters(self) -> bool:
        """True when the two mixture terms draw on common variables."""
        if not self.has_mixing:
            return False
        li = len(self.variables) - 1
        seen_first = [False] * li
        seen_second = [False] * li
        for first, second in self.components:
            for i in range(li):
                if first[i]:
                    seen_first[i] = True
                if second[i]:
                    seen_second[i] = True
        return any(a and b for a, b in zip(seen_first, seen_second))


def _split_vars(kind: ModelKind, splits: Sequence[Split], prefix: str) -> list[str]:
    out = []
    for s in splits:
        block = "".join(str(x) for x in s.leaves())
        for slot in kind.slot_labels:
            out.append(f"{prefix}{block}.{slot}")
    return out


def _monomial_exponents(kind: ModelKind, splits: Sequence[Split], g: tuple[int, ...],
                        var_index: dict, prefix: str, nvars: int) -> tuple[int, ...]:
    e = [0] * nvars
    for s in splits:
        h = 0
        for leaf in s.leaves():
            h ^= g[leaf - 1]
        if h:
            block = "".join(str(x) for x in s.leaves())
            e[var_index[f"{prefix}{block}.{kind.slot(h)}"]] += 1
    return tuple(e)


def fourier_map(tree: Tree, kind: ModelKind) -> Parameterization:
    """Monomial parameterization of a single tree model.

    Each surviving coordinate is the product over all splits of the edge
    parameter attached to the group-sum across the split, identity factors
    dropped.
    """
    splits = tree.sorted_splits()
    variables = tuple(_split_vars(kind, splits, "a."))
    var_index = {v: i for i, v in enumerate(variables)}
    coords = tuple(zero_sum_tuples(tree.n, kind.group_order))
    comps = tuple(
        (_monomial_exponents(kind, splits, g, var_index, "a.", len(variables)),)
        for g in coords
    )
    return Parameterization(kind, tree.n, variables, coords, comps)


def mixture_map(t1: Tree, t2: Tree, kind: ModelKind) -> Parameterization:
    """Two-tree mixture: coordinate-wise lam * first + (1 - lam) * second,
    with disjoint parameter sets for the two trees."""
    if t1.n != t2.n:
        raise ValueError("mixture components must share a leaf set")
    s1 = t1.sorted_splits()
    s2 = t2.sorted_splits()
    variables = tuple(_split_vars(kind, s1, "a1.") + _split_vars(kind, s2, "a2.")
                      + [LAMBDA])
    var_index = {v: i for i, v in enumerate(variables)}
    nv = len(variables)
    coords = tuple(zero_sum_tuples(t1.n, kind.group_order))
    comps = []
    for g in coords:
        m1 = _monomial_exponents(kind, s1, g, var_index, "a1.", nv)
        m2 = _monomial_exponents(kind, s2, g, var_index, "a2.", nv)
        comps.append((m1, m2))
    return Parameterization(kind, t1.n, variables, coords, tuple(comps))


def k2p_cfn_projection(p: Parameterization) -> Parameterization:
    """Restrict a K3P tree or mixture map to the subgroup generated by (1,0).

    Surviving coordinates have every entry in {(0,0), (1,0)}; renaming (1,0)
    to 1 makes the result literally the binary-model map on the same trees.
    """
    if p.kind is not ModelKind.K3P:
        raise ValueError("projection is defined for k3p parameterizations")
    keep = [j for j, g in enumerate(p.coords) if all(x in (0, 2) for x in g)]
    new_coords = tuple(tuple(1 if x == 2 else 0 for x in p.coords[j]) for j in keep)

    # surviving monomials only touch ".10" slots; map those onto the Z2 slot
    keep_var_idx = []
    new_vars = []
    for i, v in enumerate(p.variables):
        if v == LAMBDA:
            keep_var_idx.append(i)
            new_vars.append(LAMBDA)
        elif v.endswith(".10"):
            keep_var_idx.append(i)
            new_vars.append(v[: -len(".10")] + ".1")
    dropped = set(range(len(p.variables))) - set(keep_var_idx)
    new_comps = []
    for j in keep:
        comp_out = []
        for e in p.components[j]:
            if any(e[i] for i in dropped):
                raise AssertionError("projected coordinate uses a dropped slot")
            comp_out.append(tuple(e[i] for i in keep_var_idx))
        new_comps.append(tuple(comp_out))
    return Parameterization(ModelKind.CFN, p.n, tuple(new_vars), new_coords,
                            tuple(new_comps))


def jacobian(p: Parameterization) -> PolyMatrix:
    return p.jacobian()
