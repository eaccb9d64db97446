"""Exact rank computation for scalar and polynomial matrices.

Scalar ranks run over the rationals or a prime field, always with exact
arithmetic.  Polynomial ranks over the rational-function field use
fraction-free (Bareiss) elimination; intermediate entries are minors of the
input and every division along the way must be exact.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Sequence

from .poly import DEFAULT_PRIME, ExactDivisionError, Fp, Polynomial


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over F_p of an integer matrix, by Gaussian elimination."""
    return len(rank_mod_pivots(rows, p))


def rank_mod_pivots(rows: Sequence[Sequence[int]], p: int) -> list[int]:
    """Pivot columns of a mod-p echelon form; their count is the rank and the
    pivot minor is nonzero mod p, which certifies those columns independent
    over the function field when the matrix came from one."""
    m = [[x % p for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    rank = 0
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        prow = m[rank]
        for j in range(col, nc):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, nr):
            f = m[i][col]
            if f:
                ri = m[i]
                for j in range(col, nc):
                    ri[j] = (ri[j] - f * prow[j]) % p
        pivots.append(col)
        rank += 1
        if rank == nr:
            break
    return pivots


def rank_exact(rows: Sequence[Sequence]) -> int:
    """Rank over Q of a matrix of ints / Fractions, by Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pval = m[rank][col]
        prow = m[rank]
        for j in range(col, nc):
            prow[j] /= pval
        for i in range(rank + 1, nr):
            f = m[i][col]
            if f:
                ri = m[i]
                for j in range(col, nc):
                    ri[j] -= f * prow[j]
        rank += 1
        if rank == nr:
            break
    return rank


def scalar_rank(rows: Sequence[Sequence], p: int | None = None) -> int:
    """Exact rank of a scalar matrix.

    Entries may be ints, Fractions, or Fp elements (all over one modulus);
    pass ``p`` to force prime-field arithmetic on integer entries.
    """
    if not rows or not rows[0]:
        return 0
    first = rows[0][0]
    if isinstance(first, Fp):
        return rank_mod([[x.value for x in row] for row in rows], first.p)
    if p is not None:
        return rank_mod(rows, p)
    return rank_exact(rows)


class PolyMatrix:
    """Rectangular matrix of polynomials over one shared variable list."""

    __slots__ = ("vars", "rows")

    def __init__(self, variables: Sequence[str], rows: Sequence[Sequence[Polynomial]]):
        vs = tuple(variables)
        rr = tuple(tuple(row) for row in rows)
        width = len(rr[0]) if rr else 0
        for row in rr:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for entry in row:
                if entry.vars != vs:
                    raise ValueError("entry over a different variable list")
        self.vars = vs
        self.rows = rr

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> Polynomial:
        return self.rows[i][j]

    def columns(self, idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.vars, [[row[j] for j in idx] for row in self.rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.vars, list(zip(*self.rows)))

    def eval_mod(self, point: Sequence[int], p: int) -> list[list[int]]:
        return [[e.eval_mod(point, p) for e in row] for row in self.rows]

    def eval(self, point: Sequence) -> list[list]:
        return [[e.eval(point) for e in row] for row in self.rows]

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols} over {len(self.vars)} vars)"


def bareiss_rank(M: PolyMatrix) -> int:
    """Rank over the rational-function field by fraction-free elimination.

    Single-step Bareiss: intermediate entries stay polynomial because each
    division by the previous pivot is exact; an inexact division is a bug and
    raises.  Pivots are chosen with lowest total degree, ties by position, to
    limit intermediate growth.
    """
    work = [list(row) for row in M.rows]
    nr = len(work)
    nc = len(work[0]) if nr else 0
    bound = min(nr, nc)
    prev_pivot: Polynomial | None = None
    rank = 0
    while rank < bound:
        best = None
        for i in range(rank, nr):
            for j in range(rank, nc):
                e = work[i][j]
                if e.is_zero:
                    continue
                key = (e.total_degree(), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != rank:
            work[rank], work[pi] = work[pi], work[rank]
        if pj != rank:
            for row in work:
                row[rank], row[pj] = row[pj], row[rank]
        pivot = work[rank][rank]
        for i in range(rank + 1, nr):
            head = work[i][rank]
            for j in range(rank + 1, nc):
                num = pivot * work[i][j] - head * work[rank][j]
                if prev_pivot is not None:
                    try:
                        num = num.exact_div(prev_pivot)
                    except ExactDivisionError as exc:
                        raise AssertionError(
                            "Bareiss division was inexact; elimination state corrupt"
                        ) from exc
                work[i][j] = num
            work[i][rank] = Polynomial.zero(M.vars)
        prev_pivot = pivot
        rank += 1
    return rank


# --- packed polynomial kernel -------------------------------------------
#
# Inside the elimination loops, polynomials are dicts mapping a single packed
# integer key (a fixed-width field per variable, little-endian by variable
# index) to an exact coefficient.  Key addition is monomial multiplication;
# the field width is sized so that no product formed during an elimination
# can carry between fields.


class _PackLayout:
    """Field geometry for packed exponent keys plus SWAR guard masks."""

    def __init__(self, nvars: int, max_exponent: int):
        bits = max(4, max_exponent.bit_length() + 1)
        self.bits = bits
        self.nvars = nvars
        self.limit = 1 << (bits - 1)
        self.field_mask = (1 << bits) - 1
        guard = 0
        for i in range(nvars):
            guard |= (1 << (bits - 1)) << (bits * i)
        self.guard = guard

    def pack(self, f: Polynomial) -> dict[int, int]:
        out = {}
        bits = self.bits
        for exps, c in f.terms.items():
            key = 0
            for i, e in enumerate(exps):
                if e:
                    key |= e << (bits * i)
            out[key] = c
        return out

    def degree(self, key: int) -> int:
        total = 0
        mask = self.field_mask
        while key:
            total += key & mask
            key >>= self.bits
        return total


def _pk_mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            s = out.get(k, 0) + ca * cb
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _pk_cross(p: dict, x: dict, h: dict, y: dict) -> dict:
    """p*x - h*y."""
    out: dict = {}
    for ka, ca in p.items():
        for kb, cb in x.items():
            k = ka + kb
            s = out.get(k, 0) + ca * cb
            if s:
                out[k] = s
            else:
                del out[k]
    for ka, ca in h.items():
        for kb, cb in y.items():
            k = ka + kb
            s = out.get(k, 0) - ca * cb
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _pk_exact_div(num: dict, den: dict, guard: int) -> dict:
    """Exact division of packed polynomials; raises when inexact."""
    if not num:
        return {}
    dlead = max(den)
    dcoeff = den[dlead]
    rem = dict(num)
    quot: dict = {}
    while rem:
        rlead = max(rem)
        if rlead < dlead or (((rlead | guard) - dlead) & guard) != guard:
            raise ExactDivisionError("inexact division in packed kernel")
        qkey = rlead - dlead
        rc = rem.pop(rlead)
        if isinstance(rc, int) and isinstance(dcoeff, int):
            qc, remainder = divmod(rc, dcoeff)
            if remainder:
                qc = Fraction(rc, dcoeff)
        else:
            qc = Fraction(rc) / dcoeff
        quot[qkey] = qc
        for kd, cd in den.items():
            if kd == dlead:
                continue
            k = qkey + kd
            s = rem.get(k, 0) - qc * cd
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return quot


class ColumnSpanChecker:
    """Fraction-free elimination state over an independent column set.

    Eliminates the basis columns once, recording each step's pivot and
    multipliers; testing a further column replays those updates on the single
    column, so membership in the span costs one column's worth of elimination
    instead of a full matrix pass.  Divisions stay exact (entries are minors
    of the bordered matrix), and a nonzero residual after replay exhibits a
    nonzero (r+1)-minor, so both answers are certificates.
    """

    def __init__(self, M: PolyMatrix, basis: Sequence[int]):
        nr, r = M.nrows, len(basis)
        max_exp = 1
        for row in M.rows:
            for e in row:
                for exps in e.terms:
                    for x in exps:
                        if x > max_exp:
                            max_exp = x
        # minors stack one entry exponent per pivot step; the cross product
        # doubles that before the exact division brings it back down
        self.layout = _PackLayout(len(M.vars), 2 * (r + 2) * max_exp)
        self.guard = self.layout.guard
        work = [(i, [self.layout.pack(M.rows[i][j]) for j in basis]) for i in range(nr)]
        # per step: (prev_pivot or None, pivot, pivot row's original id,
        #            {original row id: multiplier} for the rows still below)
        self.steps: list[tuple] = []
        prev = None
        for k in range(r):
            best = None
            for i in range(k, nr):
                for j in range(k, r):
                    e = work[i][1][j]
                    if not e:
                        continue
                    deg = max(self.layout.degree(key) for key in e)
                    key = (deg, len(e), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
            if best is None:
                raise ValueError("basis columns are not independent")
            _, pi, pj = best
            if pi != k:
                work[k], work[pi] = work[pi], work[k]
            if pj != k:
                for _, row in work:
                    row[k], row[pj] = row[pj], row[k]
            pivot = work[k][1][k]
            mults = {work[i][0]: work[i][1][k] for i in range(k + 1, nr)}
            for i in range(k + 1, nr):
                head = work[i][1][k]
                for j in range(k + 1, r):
                    num = _pk_cross(pivot, work[i][1][j], head, work[k][1][j])
                    if prev is not None:
                        num = _pk_exact_div(num, prev, self.guard)
                    work[i][1][j] = num
            self.steps.append((prev, pivot, work[k][0], mults))
            prev = pivot
        self.rank = r
        self.nrows = nr
        self.residual_rows = [work[i][0] for i in range(r, nr)]

    def in_span(self, column: Sequence[Polynomial]) -> bool:
        c = [self.layout.pack(e) for e in column]
        for prev, pivot, prow, mults in self.steps:
            ck = c[prow]
            for i, m in mults.items():
                num = _pk_cross(pivot, c[i], m, ck)
                if prev is not None:
                    num = _pk_exact_div(num, prev, self.guard)
                c[i] = num
        return all(not c[i] for i in self.residual_rows)


def symbolic_rank(M: PolyMatrix, rng: Random | None = None, attempts: int = 4) -> int:
    """Rank of M over the rational-function field, exact in both directions.

    A nonzero maximal minor at any evaluation point already certifies full
    rank, so a few random prime-field evaluations settle the common case.
    For deficient matrices the pivot minor of the best evaluation certifies
    those columns independent, and every remaining column is proved dependent
    on them by exact elimination; a column that turns out independent is
    adopted into the basis, so a poor evaluation point costs time, never
    correctness.
    """
    nr, nc = M.nrows, M.ncols
    bound = min(nr, nc)
    if bound == 0:
        return 0
    rng = rng or Random(0x5EED)
    p = DEFAULT_PRIME
    best_pivots: list[int] = []
    for _ in range(attempts):
        point = [rng.randrange(1, p) for _ in M.vars]
        pivots = rank_mod_pivots(M.eval_mod(point, p), p)
        if len(pivots) == bound:
            return bound
        if len(pivots) > len(best_pivots):
            best_pivots = pivots
    basis = list(best_pivots)
    checker = ColumnSpanChecker(M, basis)
    for j in range(nc):
        if j in basis:
            continue
        column = [M.rows[i][j] for i in range(nr)]
        if not checker.in_span(column):
            basis.append(j)
            checker = ColumnSpanChecker(M, basis)
    return len(basis)


def minor_degree_bound(M: PolyMatrix, s: int) -> int:
    """Upper bound on the total degree of any s x s minor of M.

    Sum of the s largest per-row entry-degree maxima; coarse but cheap, and
    any valid upper bound suffices for sizing the evaluation sample set.
    """
    if s < 0 or s > min(M.nrows, M.ncols):
        raise ValueError(f"minor size {s} out of range for {M.nrows}x{M.ncols}")
    if s == 0:
        return 0
    row_max = []
    for row in M.rows:
        row_max.append(max((e.total_degree() for e in row), default=-1))
    row_max = [max(d, 0) for d in row_max]
    row_max.sort(reverse=True)
    return sum(row_max[:s])
