"""Finitely presented modules over the Laurent ring: Fitting ideals, supports,
characteristic polynomials, involution, divisibility checks."""

from __future__ import annotations

from itertools import combinations

from .laurent import (LaurentPoly, laurent_divides, laurent_gcd_list)
from .torus import SupportLocus, extract_components, torsion_grid


def minor_determinants(rows, size, row_choices=None):
    """All size x size minors of a LaurentPoly matrix, with shared memoization.

    rows: list of tuples of LaurentPoly. Returns a list of LaurentPoly (zeros
    included). row_choices restricts the row combinations when given.
    """
    if size == 0:
        num_vars = rows[0][0].num_vars if rows and rows[0] else None
        if num_vars is None:
            raise ValueError("cannot infer variable count for empty minors")
        return [LaurentPoly.one(num_vars)]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if size > nrows or size > ncols:
        return []
    memo = {}

    def det(ridx, cidx):
        if len(ridx) == 1:
            return rows[ridx[0]][cidx[0]]
        key = (ridx, cidx)
        if key in memo:
            return memo[key]
        i0 = ridx[0]
        rest = ridx[1:]
        acc = None
        for pos, j in enumerate(cidx):
            entry = rows[i0][j]
            if entry.is_zero():
                continue
            sub = det(rest, cidx[:pos] + cidx[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            if pos % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = LaurentPoly.zero(rows[0][0].num_vars)
        memo[key] = acc
        return acc

    out = []
    rsets = row_choices if row_choices is not None \
        else combinations(range(nrows), size)
    col_sets = list(combinations(range(ncols), size))
    for ridx in rsets:
        ridx = tuple(ridx)
        for cidx in col_sets:
            out.append(det(ridx, cidx))
    return out


class FPModule:
    """coker(Gamma^s -> Gamma^g) presented by an s x g matrix of LaurentPoly."""

    __slots__ = ("num_vars", "rows", "num_generators", "num_relations")

    def __init__(self, num_vars, rows, num_generators=None):
        self.num_vars = num_vars
        clean = []
        for row in rows:
            row = tuple(p if isinstance(p, LaurentPoly)
                        else LaurentPoly.constant(num_vars, p) for p in row)
            clean.append(row)
        if clean:
            g = len(clean[0])
            assert all(len(r) == g for r in clean)
        else:
            assert num_generators is not None
            g = num_generators
        self.rows = tuple(clean)
        self.num_generators = g
        self.num_relations = len(clean)

    @staticmethod
    def cyclic(f: LaurentPoly):
        return FPModule(f.num_vars, [(f,)])

    @staticmethod
    def quotient_by(num_vars, polys):
        """Gamma / (f1, ..., fk), one generator."""
        return FPModule(num_vars, [(p,) for p in polys], num_generators=1)

    def fitting_ideal(self, k):
        """Generators of E_k (the (g-k)-minors); [] encodes the zero ideal."""
        size = self.num_generators - k
        if size <= 0:
            return [LaurentPoly.one(self.num_vars)]
        if size > self.num_relations:
            return []
        minors = minor_determinants(list(self.rows), size)
        out, seen = [], set()
        for m in minors:
            m = m.normalized()
            if m.is_zero() or m in seen:
                continue
            seen.add(m)
            out.append(m)
        return out

    def support(self) -> SupportLocus:
        gens = self.fitting_ideal(0)
        return extract_components(SupportLocus(self.num_vars, gens))

    def char_poly(self) -> LaurentPoly:
        """Codimension-one part of the support, by gcd of the 0-th Fitting ideal.

        Returns 1 for a non-torsion module (full support) and for supports of
        codimension > 1, matching the standard conventions.
        """
        gens = self.fitting_ideal(0)
        if not gens:
            return LaurentPoly.one(self.num_vars)
        if any(g.is_unit() for g in gens):
            return LaurentPoly.one(self.num_vars)
        return laurent_gcd_list(gens)

    def involution(self) -> "FPModule":
        rows = [tuple(LaurentPoly(self.num_vars,
                                  {tuple(-x for x in e): c
                                   for e, c in p.terms.items()})
                      for p in row) for row in self.rows]
        return FPModule(self.num_vars, rows, num_generators=self.num_generators)

    def __repr__(self):
        return "FPModule(%d vars, %d x %d)" % (
            self.num_vars, self.num_relations, self.num_generators)


def divisibility_check(A: FPModule, B: FPModule, C: FPModule,
                       sample_points=None) -> bool:
    """Consequence check for an exact sequence A -> B -> C.

    Verifies Supp(B) is inside Supp(A) union Supp(C) on a torsion sample, and
    that char_poly(B) divides char_poly(A) * char_poly(C).
    """
    r = A.num_vars
    assert B.num_vars == r and C.num_vars == r
    sa, sb, sc = A.support(), B.support(), C.support()
    pts = sample_points if sample_points is not None else torsion_grid(r)
    for p in pts:
        if sb.membership(p) and not (sa.membership(p) or sc.membership(p)):
            return False
    prod = A.char_poly() * C.char_poly()
    return laurent_divides(B.char_poly(), prod)
