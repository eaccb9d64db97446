"""Exact rank computation, checked against the worked matrix examples and an
independently coded row-echelon oracle."""

import itertools
from fractions import Fraction
from random import Random

import pytest

from phylomat.linalg import (ColumnSpanChecker, PolyMatrix, bareiss_rank,
                             minor_degree_bound, rank_mod, scalar_rank,
                             symbolic_rank)
from phylomat.poly import DEFAULT_PRIME, Fp, Polynomial, random_polynomial

# 3x4 integer matrix whose linear matroid has exactly twelve independent sets
EXAMPLE_MATRIX = [
    [1, 1, -1, -2],
    [3, 1, 2, 4],
    [0, -1, 1, 2],
]

EXAMPLE_INDEPENDENT_SETS = [
    (), (1,), (2,), (3,), (4,), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4),
    (1, 2, 3), (1, 2, 4),
]


def echelon_rank_oracle(rows):
    """Row echelon over exact rationals, coded independently of scalar_rank."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    for j in range(cols):
        pivot_row = next((i for i in range(rank, len(m)) if m[i][j] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][j] != 0:
                factor = m[i][j] / m[rank][j]
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def columns(matrix, subset):
    return [[row[j - 1] for j in subset] for row in matrix]


def test_linear_matroid_independent_sets_reproduced_exactly():
    found = []
    for r in range(5):
        for S in itertools.combinations((1, 2, 3, 4), r):
            if not S:
                found.append(S)
                continue
            if scalar_rank(columns(EXAMPLE_MATRIX, S)) == len(S):
                found.append(S)
    assert found == EXAMPLE_INDEPENDENT_SETS


def test_column_pair_with_proportional_columns_is_dependent():
    assert scalar_rank(columns(EXAMPLE_MATRIX, (3, 4))) == 1


def test_zero_matrix_rank():
    assert scalar_rank([[0, 0], [0, 0]]) == 0


def test_scalar_rank_matches_oracle_exhaustively_2x2():
    vals = range(-3, 4)
    for a, b, c, d in itertools.product(vals, repeat=4):
        m = [[a, b], [c, d]]
        assert scalar_rank(m) == echelon_rank_oracle(m)


def test_scalar_rank_matches_oracle_random_up_to_6x6():
    rng = Random(4)
    for _ in range(300):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        m = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
        assert scalar_rank(m) == echelon_rank_oracle(m)


def test_scalar_rank_prime_field_and_fp_entries():
    m = [[2, 4], [1, 2]]
    assert scalar_rank(m, p=7) == 1
    assert scalar_rank([[Fp(2, 7), Fp(4, 7)], [Fp(1, 7), Fp(2, 7)]]) == 1
    # rank can drop mod p when p divides a minor
    assert scalar_rank([[7]], p=7) == 0
    assert scalar_rank([[7]]) == 1


def binomial_jacobian():
    """Transposed Jacobian of the 2-trial binomial model (t, theta)."""
    vs = ("t", "th")
    t = Polynomial.variable(vs, "t")
    th = Polynomial.variable(vs, "th")
    one = Polynomial.const(vs, 1)
    phi = [t * (one - th) * (one - th), 2 * t * th * (one - th), t * th * th]
    return PolyMatrix(vs, [[f.diff(v) for f in phi] for v in vs])


def test_binomial_jacobian_symbolic_rank_is_two():
    J = binomial_jacobian()
    assert symbolic_rank(J) == 2
    assert bareiss_rank(J) == 2


def test_identically_zero_entry_has_rank_zero():
    vs = ("th1", "th2")
    a = Polynomial.variable(vs, "th1") * Polynomial.variable(vs, "th2")
    b = Polynomial.variable(vs, "th2") * Polynomial.variable(vs, "th1")
    M = PolyMatrix(vs, [[a - b]])
    assert symbolic_rank(M) == 0
    assert bareiss_rank(M) == 0


def test_diagonal_rank():
    vs = ("th1", "th2")
    z = Polynomial.zero(vs)
    M = PolyMatrix(vs, [
        [Polynomial.variable(vs, "th1"), z],
        [z, Polynomial.variable(vs, "th2")],
    ])
    assert symbolic_rank(M) == 2


def test_symbolic_rank_agrees_with_bareiss_on_random_matrices():
    rng = Random(17)
    vs = ("x", "y")
    for _ in range(400):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        M = PolyMatrix(vs, [[random_polynomial(rng, vs, max_terms=2, max_exp=2,
                                               coeff_range=3)
                             for _ in range(nc)] for _ in range(nr)])
        assert symbolic_rank(M) == bareiss_rank(M)


def test_symbolic_rank_is_max_of_evaluated_ranks():
    # the rank at any point never exceeds the symbolic rank and reaches it at
    # random points with overwhelming probability
    rng = Random(23)
    vs = ("x", "y", "z")
    for _ in range(40):
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        M = PolyMatrix(vs, [[random_polynomial(rng, vs, max_terms=3, max_exp=2,
                                               coeff_range=3)
                             for _ in range(nc)] for _ in range(nr)])
        symbolic = symbolic_rank(M)
        best = 0
        for _ in range(1000):
            point = [Fraction(rng.randint(-50, 50)) for _ in vs]
            evaluated = scalar_rank(M.eval(point))
            assert evaluated <= symbolic
            best = max(best, evaluated)
            if best == symbolic:
                break
        assert best == symbolic


def test_bareiss_divisions_stay_exact_on_structured_matrices():
    # products of monomial matrices exercise the exact-division invariant;
    # an inexact division would raise, failing this test
    rng = Random(31)
    vs = ("a", "b", "c")
    for _ in range(50):
        rows = []
        for _ in range(4):
            row = []
            for _ in range(4):
                e = tuple(rng.randint(0, 2) for _ in vs)
                row.append(Polynomial(vs, {e: rng.randint(-2, 2)}))
            rows.append(row)
        M = PolyMatrix(vs, rows)
        assert bareiss_rank(M) == symbolic_rank(M)


def test_minor_degree_bound_binomial_model():
    J = binomial_jacobian()
    bound = minor_degree_bound(J, 2)
    # expand both 2x2 minors symbolically; the bound must cover their degrees
    minors = []
    for c1, c2 in itertools.combinations(range(3), 2):
        det = J.rows[0][c1] * J.rows[1][c2] - J.rows[0][c2] * J.rows[1][c1]
        minors.append(det.total_degree())
    assert bound >= max(minors)
    assert bound == 4


def test_minor_degree_bound_trivial_and_diagonal():
    J = binomial_jacobian()
    assert minor_degree_bound(J, 0) == 0
    vs = ("th1", "th2")
    z = Polynomial.zero(vs)
    D = PolyMatrix(vs, [
        [Polynomial.monomial(vs, (2, 0)), z],
        [z, Polynomial.monomial(vs, (0, 3))],
    ])
    # determinant is th1^2 * th2^3, degree 5; the bound must reach it
    assert minor_degree_bound(D, 2) >= 5


def test_minor_degree_bound_range_check():
    J = binomial_jacobian()
    with pytest.raises(ValueError):
        minor_degree_bound(J, 3)


def test_column_span_checker_matches_direct_elimination():
    rng = Random(41)
    vs = ("x", "y")
    for _ in range(200):
        nr = rng.randint(2, 5)
        nc = rng.randint(2, 5)
        M = PolyMatrix(vs, [[random_polynomial(rng, vs, max_terms=2, max_exp=2,
                                               coeff_range=2)
                             for _ in range(nc)] for _ in range(nr)])
        r = bareiss_rank(M)
        if r == 0:
            continue
        # grow a basis greedily with the checker and compare against the rank
        basis = []
        checker = ColumnSpanChecker(M, basis)
        for j in range(nc):
            col = [M.rows[i][j] for i in range(nr)]
            if not checker.in_span(col):
                basis.append(j)
                checker = ColumnSpanChecker(M, basis)
        assert len(basis) == r


def test_polymatrix_validation():
    vs = ("x",)
    with pytest.raises(ValueError):
        PolyMatrix(vs, [[Polynomial.zero(("y",))]])
    with pytest.raises(ValueError):
        PolyMatrix(vs, [[Polynomial.zero(vs)], []])
