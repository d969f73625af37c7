"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q(zeta_n) = Q[x]/(Phi_n(x)) with rational coefficients, and are kept at the
minimal order (conductor) so that equality of values is equality of data.
Torsion points on tori are represented throughout the package as rational
"angles" c with the convention that c stands for exp(2*pi*i*c).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def mod1(q) -> Fraction:
    """Reduce a rational to the half-open interval [0, 1)."""
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    assert n >= 1
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod(num, den):
    """Divide coefficient lists (ascending powers) over Q; return (quo, rem)."""
    num = list(num)
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        if c:
            quo[k] = c
            for j, d in enumerate(den):
                num[k + j] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return quo, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (ascending, integer) of the n-th cyclotomic polynomial."""
    assert n >= 1
    if n == 1:
        return (-1, 1)
    # Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d
    num = [Fraction(0)] * (n + 1)
    num[0], num[n] = Fraction(-1), Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            quo, rem = _poly_divmod(num, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not rem
            num = quo
    coeffs = tuple(int(c) for c in num)
    assert len(coeffs) == euler_phi(n) + 1
    return coeffs


def _divisors(n: int):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _reduce_mod_cyclotomic(vec, n):
    """Reduce a coefficient vector of zeta_n powers modulo Phi_n."""
    phi = euler_phi(n)
    vec = [Fraction(c) for c in vec]
    if len(vec) <= phi:
        return tuple(vec + [Fraction(0)] * (phi - len(vec)))
    den = [Fraction(c) for c in cyclotomic_polynomial(n)]
    _, rem = _poly_divmod(vec, den)
    rem += [Fraction(0)] * (phi - len(rem))
    return tuple(rem)


def _solve_exact(columns, target):
    """Solve sum_j x_j * columns[j] = target over Q; None if inconsistent."""
    rows = len(target)
    ncols = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, rows) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if mat[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = mat[i][ncols]
    return sol


class Cyclotomic:
    """An element of Q(zeta_n), normalized to its minimal (conductor) order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs, normalize=True):
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        assert len(self.coeffs) == euler_phi(order)
        if normalize:
            reduced = self._to_minimal_order()
            self.order = reduced.order
            self.coeffs = reduced.coeffs

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),), normalize=False)

    @staticmethod
    def zero() -> "Cyclotomic":
        return Cyclotomic.from_rational(0)

    @staticmethod
    def one() -> "Cyclotomic":
        return Cyclotomic.from_rational(1)

    @staticmethod
    def root_of_unity(angle) -> "Cyclotomic":
        """exp(2*pi*i*angle) for a rational angle."""
        angle = mod1(angle)
        n, k = angle.denominator, angle.numerator
        vec = [Fraction(0)] * (k + 1)
        vec[k] = Fraction(1)
        return Cyclotomic(n, _reduce_mod_cyclotomic(vec, n))

    # -- normalization -----------------------------------------------------

    def _power_vector(self, n):
        """Coefficients of self on 1, zeta_n, ..., zeta_n^(n-1), for order | n."""
        step = n // self.order
        vec = [Fraction(0)] * max(1, (euler_phi(self.order) - 1) * step + 1)
        for k, c in enumerate(self.coeffs):
            vec[k * step] += c
        return vec

    def lift(self, n) -> "Cyclotomic":
        assert n % self.order == 0
        return Cyclotomic(n, _reduce_mod_cyclotomic(self._power_vector(n), n),
                          normalize=False)

    def _to_minimal_order(self) -> "Cyclotomic":
        n = self.order
        for d in _divisors(n):
            if d == n:
                break
            step = n // d
            cols = []
            for i in range(euler_phi(d)):
                vec = [Fraction(0)] * (i * step + 1)
                vec[i * step] = Fraction(1)
                cols.append(_reduce_mod_cyclotomic(vec, n))
            sol = _solve_exact(cols, self.coeffs)
            if sol is not None:
                return Cyclotomic(d, tuple(sol), normalize=False)
        return self

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.order == 1

    def as_rational(self) -> Fraction:
        if self.order != 1:
            raise ValueError("element is irrational: order %d" % self.order)
        return self.coeffs[0]

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        n = lcm(self.order, other.order)
        return self.lift(n), other.lift(n), n

    def __add__(self, other):
        a, b, n = self._pair(other)
        return Cyclotomic(n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs), normalize=False)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic)
                       else Cyclotomic.from_rational(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b, n = self._pair(other)
        prod = [Fraction(0)] * (2 * euler_phi(n))
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
        return Cyclotomic(n, _reduce_mod_cyclotomic(prod, n))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        n = self.order
        if n == 1:
            return Cyclotomic.from_rational(1 / self.coeffs[0])
        # extended Euclid in Q[x]: a*self + b*Phi_n = 1
        phi = [Fraction(c) for c in cyclotomic_polynomial(n)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                return Cyclotomic(n, _reduce_mod_cyclotomic([c * inv for c in s1], n))
            quo, rem = _poly_divmod(r0, r1)
            # s_next = s0 - quo*s1
            s_next = list(s0) + [Fraction(0)] * max(0, len(quo) + len(s1) - 1 - len(s0))
            for i, q in enumerate(quo):
                if q:
                    for j, s in enumerate(s1):
                        s_next[i + j] -= q * s
            r0, r1 = r1, rem
            s0, s1 = s1, s_next

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        if self.order == 1:
            return "Cyclotomic(%s)" % self.coeffs[0]
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append("%s*z%d^%d" % (c, self.order, k))
        return "Cyclotomic(%s)" % " + ".join(terms or ["0"])
