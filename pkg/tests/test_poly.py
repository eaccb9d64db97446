"""Exact polynomial arithmetic: evaluation, division, derivatives."""

from fractions import Fraction
from random import Random

import pytest

from phylomat.poly import DEFAULT_PRIME, ExactDivisionError, Fp, Polynomial, poly_eval, random_polynomial

VARS = ("p0", "p1", "p2")


def poly(terms):
    return Polynomial(VARS, terms)


def test_eval_model_relation_vanishes_at_model_point():
    # 4*p0*p2 - p1^2 vanishes at (1, 2, 1)
    f = poly({(1, 0, 1): 4, (0, 2, 0): -1})
    assert poly_eval(f, [1, 2, 1]) == 0
    assert poly_eval(f, [Fraction(1), Fraction(2), Fraction(1)]) == 0


def test_eval_zero_polynomial():
    z = Polynomial.zero(VARS)
    assert poly_eval(z, [5, 7, 9]) == 0
    assert z.is_zero and z.total_degree() == -1


def test_eval_direct_arithmetic():
    vs = ("x", "y")
    f = Polynomial(vs, {(1, 1): 1, (0, 2): 1})  # x*y + y^2
    assert poly_eval(f, [2, 3]) == 15


def test_eval_length_mismatch_rejected():
    f = poly({(1, 0, 0): 1})
    with pytest.raises(ValueError):
        poly_eval(f, [1, 2])


def test_eval_prime_field_matches_rational():
    rng = Random(101)
    vs = ("a", "b", "c")
    p = 10007
    for _ in range(100):
        f = random_polynomial(rng, vs)
        point = [rng.randint(0, 50) for _ in vs]
        exact = poly_eval(f, point)
        modular = poly_eval(f, [Fp(x, p) for x in point])
        assert isinstance(modular, Fp)
        assert modular.value == exact % p


def test_eval_is_ring_homomorphism():
    rng = Random(7)
    vs = ("a", "b", "c", "d")
    for _ in range(300):
        f = random_polynomial(rng, vs)
        g = random_polynomial(rng, vs)
        point = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in vs]
        assert poly_eval(f + g, point) == poly_eval(f, point) + poly_eval(g, point)
        assert poly_eval(f * g, point) == poly_eval(f, point) * poly_eval(g, point)


def test_product_then_exact_division_roundtrips():
    rng = Random(13)
    vs = ("x", "y", "z")
    for _ in range(200):
        f = random_polynomial(rng, vs)
        g = random_polynomial(rng, vs)
        if g.is_zero:
            continue
        assert (f * g).exact_div(g) == f


def test_inexact_division_raises():
    vs = ("x", "y")
    f = Polynomial(vs, {(2, 0): 1, (0, 0): 1})  # x^2 + 1
    g = Polynomial(vs, {(1, 0): 1})  # x
    with pytest.raises(ExactDivisionError):
        f.exact_div(g)


def test_division_by_zero_rejected():
    vs = ("x",)
    f = Polynomial(vs, {(1,): 1})
    with pytest.raises(ZeroDivisionError):
        f.exact_div(Polynomial.zero(vs))


def test_derivative_product_rule():
    rng = Random(29)
    vs = ("x", "y")
    for _ in range(100):
        f = random_polynomial(rng, vs)
        g = random_polynomial(rng, vs)
        lhs = (f * g).diff("x")
        rhs = f.diff("x") * g + f * g.diff("x")
        assert lhs == rhs


def test_power_and_constants():
    vs = ("t",)
    t = Polynomial.variable(vs, "t")
    one = Polynomial.const(vs, 1)
    assert (t + one) ** 2 == t * t + 2 * t + one
    assert (t + one) ** 0 == one


def test_coefficients_normalize_to_int():
    vs = ("x",)
    f = Polynomial(vs, {(1,): Fraction(4, 2)})
    assert f.terms[(1,)] == 2
    assert isinstance(f.terms[(1,)], int)


def test_rename_permutes_exponents():
    vs = ("a", "b")
    f = Polynomial(vs, {(2, 1): 3})
    g = f.rename({"a": "u", "b": "v"}, new_order=("v", "u"))
    assert g.vars == ("v", "u")
    assert g.terms == {(1, 2): 3}


def test_fp_arithmetic():
    p = 11
    a, b = Fp(7, p), Fp(8, p)
    assert (a + b).value == 4
    assert (a * b).value == 1
    assert (a - b).value == 10
    assert a.inverse() * a == Fp(1, p)
    assert DEFAULT_PRIME == 2**31 - 1
