"""Multivariable Laurent polynomials over Q with exact arithmetic.

Terms are stored as a map from integer exponent vectors to nonzero rational
coefficients. Units are c*t^a; the canonical representative of an ideal
generator shifts minimal exponents to zero and scales the lexicographically
leading coefficient to 1. Gcd and irreducible factorization are delegated to
sympy's polynomial ring over QQ after clearing monomial units.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy as sp

from .cyclotomic import Cyclotomic, _reduce_mod_cyclotomic, lcm, mod1


@lru_cache(maxsize=None)
def _symbols(num_vars):
    return sp.symbols(["t%d" % (i + 1) for i in range(num_vars)], positive=False)


class LaurentPoly:
    """A Laurent polynomial in r variables with Fraction coefficients."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars, terms=None):
        self.num_vars = num_vars
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                exps = tuple(int(e) for e in exps)
                assert len(exps) == num_vars
                clean[exps] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(r):
        return LaurentPoly(r)

    @staticmethod
    def one(r):
        return LaurentPoly.constant(r, 1)

    @staticmethod
    def constant(r, c):
        return LaurentPoly(r, {(0,) * r: Fraction(c)})

    @staticmethod
    def variable(r, i, power=1):
        exps = [0] * r
        exps[i] = power
        return LaurentPoly(r, {tuple(exps): Fraction(1)})

    @staticmethod
    def monomial(r, exps, coeff=1):
        return LaurentPoly(r, {tuple(exps): Fraction(coeff)})

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0,) * self.num_vars}

    def constant_value(self):
        assert self.is_constant()
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.num_vars, other)
        assert isinstance(other, LaurentPoly) and other.num_vars == self.num_vars, \
            "mismatched variable counts"
        return other

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPoly(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e, Fraction(0)) + c1 * c2
                if v:
                    terms[e] = v
                elif e in terms:
                    del terms[e]
        return LaurentPoly(self.num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            assert self.is_unit(), "negative powers only for monomial units"
            (e, c), = self.terms.items()
            inv = LaurentPoly(self.num_vars,
                              {tuple(-x for x in e): Fraction(1) / c})
            return inv ** (-k)
        result = LaurentPoly.one(self.num_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.num_vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # -- normalization -----------------------------------------------------

    def min_exponents(self):
        assert self.terms
        return tuple(min(e[i] for e in self.terms) for i in range(self.num_vars))

    def leading_exponent(self):
        return max(self.terms)

    def normalized(self):
        """Shift minimal exponents to 0, scale the lex-leading coefficient to 1."""
        if not self.terms:
            return self
        shift = self.min_exponents()
        lead = self.terms[self.leading_exponent()]
        return LaurentPoly(self.num_vars, {
            tuple(a - b for a, b in zip(e, shift)): c / lead
            for e, c in self.terms.items()})

    # -- evaluation and substitution ----------------------------------------

    def eval_at_torsion(self, point):
        """Exact value at (e^(2*pi*i*c_1), ..., e^(2*pi*i*c_r)) as a Cyclotomic."""
        assert len(point) == self.num_vars, "point length must match num_vars"
        point = [mod1(c) for c in point]
        order = 1
        for c in point:
            order = lcm(order, c.denominator)
        table = [Fraction(0)] * order
        for exps, coeff in self.terms.items():
            angle = sum((Fraction(e) * c for e, c in zip(exps, point)),
                        Fraction(0))
            angle = mod1(angle)
            table[angle.numerator * (order // angle.denominator)] += coeff
        return Cyclotomic(order, _reduce_mod_cyclotomic(table, order))

    def eval_rational(self, point):
        """Exact value at a point with nonzero rational coordinates."""
        assert len(point) == self.num_vars
        point = [Fraction(p) for p in point]
        assert all(point), "rational evaluation needs nonzero coordinates"
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            val = coeff
            for p, e in zip(point, exps):
                val *= p ** e
            total += val
        return total

    def substitute_exponents(self, M):
        """Monomial substitution t_i -> prod_j u_j^(M[i][j]); M is r x m."""
        assert len(M) == self.num_vars
        m = len(M[0]) if M else 0
        terms = {}
        for e, c in self.terms.items():
            new = tuple(sum(e[i] * M[i][j] for i in range(self.num_vars))
                        for j in range(m))
            v = terms.get(new, Fraction(0)) + c
            if v:
                terms[new] = v
            elif new in terms:
                del terms[new]
        return LaurentPoly(m, terms)

    def diagonal_restriction(self):
        """Substitute every variable by the single variable t."""
        return self.substitute_exponents([[1]] * self.num_vars)

    def pad_variables(self, r, positions):
        """View in r variables, variable i placed at positions[i]."""
        M = [[0] * r for _ in range(self.num_vars)]
        for i, p in enumerate(positions):
            M[i][p] = 1
        return self.substitute_exponents(M)

    # -- sympy bridge --------------------------------------------------------

    def _cleared(self):
        """Polynomial part after shifting minimal exponents to zero."""
        if not self.terms:
            return self
        shift = self.min_exponents()
        return LaurentPoly(self.num_vars, {
            tuple(a - b for a, b in zip(e, shift)): c
            for e, c in self.terms.items()})

    def to_sympy(self):
        gens = _symbols(self.num_vars)
        cleared = self._cleared()
        return sp.Poly.from_dict(
            {e: sp.Rational(c.numerator, c.denominator)
             for e, c in cleared.terms.items()},
            *gens, domain=sp.QQ)

    @staticmethod
    def from_sympy(poly, num_vars):
        terms = {}
        for exps, coeff in poly.as_dict(native=False).items():
            q = sp.Rational(coeff)
            terms[tuple(int(e) for e in exps)] = Fraction(int(q.p), int(q.q))
        return LaurentPoly(num_vars, terms)

    # -- display -------------------------------------------------------------

    def __repr__(self):
        return "LaurentPoly(%s)" % str(self)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                ("t%d" % (i + 1)) + ("" if k == 1 else "^%d" % k)
                for i, k in enumerate(e) if k)
            if not mono:
                frag = str(c)
            elif c == 1:
                frag = mono
            elif c == -1:
                frag = "-" + mono
            else:
                frag = "%s*%s" % (c, mono)
            bits.append(frag)
        out = bits[0]
        for frag in bits[1:]:
            out += (" - " + frag[1:]) if frag.startswith("-") else (" + " + frag)
        return out


def laurent_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Gcd in the Laurent ring, reported in normalized polynomial form."""
    if f.num_vars != g.num_vars:
        raise ValueError("gcd of Laurent polynomials in different rings")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    if f.is_unit() or g.is_unit():
        return LaurentPoly.one(f.num_vars)
    d = sp.gcd(f.to_sympy(), g.to_sympy())
    if isinstance(d, sp.Poly):
        result = LaurentPoly.from_sympy(d, f.num_vars)
    else:
        result = LaurentPoly.from_sympy(
            sp.Poly(d, *_symbols(f.num_vars), domain=sp.QQ), f.num_vars)
    return result.normalized()


def laurent_gcd_list(polys) -> LaurentPoly:
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty family")
    acc = polys[0]
    for p in polys[1:]:
        acc = laurent_gcd(acc, p)
        if acc == LaurentPoly.one(acc.num_vars):
            return acc
    return acc.normalized() if not acc.is_zero() else acc


def laurent_divides(f: LaurentPoly, g: LaurentPoly) -> bool:
    """True iff f divides g in the Laurent ring (up to units)."""
    if g.is_zero():
        return True
    if f.is_zero():
        return False
    if f.is_unit():
        return True
    _, rem = sp.div(g.to_sympy(), f.to_sympy())
    return rem == 0 or (hasattr(rem, "is_zero") and rem.is_zero)


def laurent_exact_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Quotient g/f (g must be divisible by f up to a unit)."""
    quo, rem = sp.div(g.to_sympy(), f.to_sympy())
    assert rem == 0 or (hasattr(rem, "is_zero") and rem.is_zero), \
        "not an exact division"
    if isinstance(quo, sp.Poly):
        return LaurentPoly.from_sympy(quo, g.num_vars)
    return LaurentPoly.from_sympy(
        sp.Poly(quo, *_symbols(g.num_vars), domain=sp.QQ), g.num_vars)


def factor_rational(f: LaurentPoly):
    """Irreducible factorization over Q: (unit content, [(factor, multiplicity)]).

    Factors come back normalized; monomial unit content is dropped.
    """
    assert not f.is_zero()
    if f.is_unit():
        return []
    _, factors = f.to_sympy().factor_list()
    out = []
    for poly, mult in factors:
        lf = LaurentPoly.from_sympy(poly, f.num_vars).normalized()
        if not lf.is_unit():
            out.append((lf, int(mult)))
    return out
