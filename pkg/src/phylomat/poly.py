"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are plain ints where possible and ``fractions.Fraction``
otherwise; nothing in this module ever touches floating point.  Terms are
stored as a dict mapping exponent tuples (one slot per variable) to nonzero
coefficients, which suits the monomial and binomial maps this package builds.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Iterable, Mapping, Sequence, Union

Coeff = Union[int, Fraction]


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


def _norm_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Fp:
    """Element of the prime field Z/pZ; the modulus must exceed the
    evaluation sample set so integer sample points embed injectively."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def __add__(self, other):
        return Fp(self.value + self._val(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._val(other), self.p)

    def __rsub__(self, other):
        return Fp(self._val(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._val(other), self.p)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return Fp(pow(self.value, e, self.p), self.p)

    def inverse(self) -> "Fp":
        return Fp(pow(self.value, -1, self.p), self.p)

    def _val(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot coerce {type(other).__name__} into F_p")

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fp({self.value}, p={self.p})"


#: Mersenne prime 2^31 - 1, default screening modulus.
DEFAULT_PRIME = 2**31 - 1


class Polynomial:
    """Immutable sparse polynomial over an ordered tuple of named variables.

    ``terms`` maps exponent tuples to nonzero coefficients; zero terms are
    never stored, so the zero polynomial has an empty term dict.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Coeff]):
        vs = tuple(variables)
        nv = len(vs)
        clean = {}
        for exps, c in terms.items():
            if len(exps) != nv:
                raise ValueError("exponent vector length != number of variables")
            c = _norm_coeff(c)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Sequence[str], c: Coeff) -> "Polynomial":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], c: Coeff = 1) -> "Polynomial":
        return cls(variables, {tuple(exps): c})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        vs = tuple(variables)
        i = vs.index(name)
        e = [0] * len(vs)
        e[i] = 1
        return cls(vs, {tuple(e): 1})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Max term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError("polynomials over different variable lists")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, var: Union[str, int]) -> "Polynomial":
        """Partial derivative with respect to one variable."""
        i = self.vars.index(var) if isinstance(var, str) else var
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            e2 = e[:i] + (k - 1,) + e[i + 1:]
            s = out.get(e2, 0) + c * k
            if s == 0:
                out.pop(e2, None)
            else:
                out[e2] = s
        return Polynomial(self.vars, out)

    # -- evaluation --------------------------------------------------------

    def eval(self, point: Sequence) -> Coeff:
        """Exact value at a point of ints, Fractions, or Fp elements."""
        if len(point) != len(self.vars):
            raise ValueError(
                f"point has {len(point)} entries for {len(self.vars)} variables"
            )
        if point and isinstance(point[0], Fp):
            p = point[0].p
            v = self.eval_mod([x.value for x in point], p)
            return Fp(v, p)
        total: Coeff = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return _norm_coeff(total)

    def eval_mod(self, point: Sequence[int], p: int) -> int:
        """Value at an integer point, reduced mod the prime p."""
        if len(point) != len(self.vars):
            raise ValueError(
                f"point has {len(point)} entries for {len(self.vars)} variables"
            )
        total = 0
        for e, c in self.terms.items():
            v = c % p if isinstance(c, int) else (c.numerator * pow(c.denominator, -1, p)) % p
            for x, k in zip(point, e):
                if k:
                    v = v * pow(x, k, p) % p
            total = (total + v) % p
        return total

    # -- exact division ----------------------------------------------------

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient self/divisor when the division is exact.

        Raises ExactDivisionError otherwise; fraction-free elimination relies
        on this never being silently rounded.
        """
        if divisor.vars != self.vars:
            raise ValueError("polynomials over different variable lists")
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return self
        dlead = max(divisor.terms, key=_grlex_key)
        dcoeff = divisor.terms[dlead]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            rlead = max(rem, key=_grlex_key)
            qexp = tuple(a - b for a, b in zip(rlead, dlead))
            if any(k < 0 for k in qexp):
                raise ExactDivisionError("inexact polynomial division")
            qc = _norm_coeff(Fraction(rem[rlead]) / dcoeff)
            quot[qexp] = qc
            for e, c in divisor.terms.items():
                e2 = tuple(a + b for a, b in zip(qexp, e))
                s = rem.get(e2, 0) - qc * c
                if s == 0:
                    rem.pop(e2, None)
                else:
                    rem[e2] = _norm_coeff(s)
        return Polynomial(self.vars, quot)

    # -- variable plumbing -------------------------------------------------

    def rename(self, mapping: Mapping[str, str], new_order: Sequence[str] | None = None) -> "Polynomial":
        """Rename variables; unmapped names pass through unchanged.

        The result is expressed over ``new_order`` when given, otherwise over
        the renamed list in the original order.  Every renamed variable must
        appear in the target list; variables absent from it must not occur in
        any term.
        """
        renamed = [mapping.get(v, v) for v in self.vars]
        target = tuple(new_order) if new_order is not None else tuple(renamed)
        idx = []
        for v in renamed:
            idx.append(target.index(v) if v in target else -1)
        out: dict = {}
        for e, c in self.terms.items():
            e2 = [0] * len(target)
            for pos, k in enumerate(e):
                if k == 0:
                    continue
                j = idx[pos]
                if j < 0:
                    raise ValueError(f"variable {renamed[pos]!r} dropped but used")
                e2[j] += k
            key = tuple(e2)
            s = out.get(key, 0) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return Polynomial(target, out)

    # -- dunder plumbing ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            bits.append("*".join(factors))
        return " + ".join(bits)


def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


def poly_eval(f: Polynomial, point: Sequence) -> Coeff:
    """Exact evaluation of f at a point of rationals or prime-field elements."""
    return f.eval(point)


def random_polynomial(rng: Random, variables: Sequence[str], *, max_terms: int = 5,
                      max_exp: int = 3, coeff_range: int = 6) -> Polynomial:
    """Small random polynomial, for property tests."""
    vs = tuple(variables)
    terms: dict = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(0, max_exp) for _ in vs)
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[e] = terms.get(e, 0) + c
    return Polynomial(vs, {e: c for e, c in terms.items() if c})
