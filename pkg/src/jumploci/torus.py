"""Torsion-translated subtori of (C*)^r and support loci.

A translated subtorus is stored in canonical form: a Hermite-reduced basis of a
*saturated* integer lattice of exponent vectors together with one rational
angle per basis row (the equations t^b = e^(2*pi*i*angle)). With a saturated
basis the solution set is a single coset, nonempty, and two subtori are equal
iff their canonical data are equal. Arbitrary monomial systems are decomposed
into finitely many such cosets via the Smith normal form.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as int_gcd

from .cyclotomic import Cyclotomic, cyclotomic_polynomial, euler_phi, mod1
from .intmatrix import (IntMatrix, in_row_lattice, kernel_basis, row_hermite,
                        saturation, snf_with_inverse, solve_rational)
from .laurent import LaurentPoly, factor_rational

COSET_CAP = 4096
COMPONENT_CAP = 400


class InconsistentSystemError(ValueError):
    pass


class TranslatedSubtorus:
    """A coset of a subtorus of (C*)^r cut out by torsion monomial equations."""

    __slots__ = ("num_vars", "rows", "angles")

    def __init__(self, num_vars, rows, angles, _canonical=False):
        self.num_vars = num_vars
        if not _canonical:
            canon = _canonicalize(num_vars, rows, angles)
            rows, angles = canon
        self.rows = tuple(tuple(int(x) for x in row) for row in rows)
        self.angles = tuple(mod1(a) for a in angles)
        assert len(self.rows) == len(self.angles)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def full_torus(r):
        return TranslatedSubtorus(r, (), (), _canonical=True)

    @staticmethod
    def identity_point(r):
        rows = [[1 if j == i else 0 for j in range(r)] for i in range(r)]
        return TranslatedSubtorus(r, rows, [Fraction(0)] * r, _canonical=True)

    @staticmethod
    def point(angles):
        r = len(angles)
        rows = [[1 if j == i else 0 for j in range(r)] for i in range(r)]
        return TranslatedSubtorus(r, rows, [mod1(a) for a in angles],
                                  _canonical=True)

    # -- basic geometry ------------------------------------------------------

    @property
    def codim(self):
        return len(self.rows)

    @property
    def dim(self):
        return self.num_vars - len(self.rows)

    def contains_identity(self):
        return all(a == 0 for a in self.angles)

    def membership(self, point):
        """Is the torsion point (given by angles) on this subtorus?"""
        assert len(point) == self.num_vars
        for row, angle in zip(self.rows, self.angles):
            val = sum((Fraction(b) * mod1(p) for b, p in zip(row, point)),
                      Fraction(0))
            if mod1(val - angle) != 0:
                return False
        return True

    def contains(self, other: "TranslatedSubtorus") -> bool:
        """Lattice-level test that other is a subset of self."""
        assert self.num_vars == other.num_vars
        if not self.rows:
            return True
        B2 = IntMatrix(other.rows, cols=self.num_vars) if other.rows else None
        for row, angle in zip(self.rows, self.angles):
            if B2 is None:
                return False  # a proper equation cannot hold on the full torus
            q = in_row_lattice(B2, row)
            if q is None:
                return False
            shift = sum((Fraction(qi) * a for qi, a in zip(q, other.angles)),
                        Fraction(0))
            if mod1(shift - angle) != 0:
                return False
        return True

    def intersect(self, other: "TranslatedSubtorus"):
        """Intersection as a finite (possibly empty) list of translated subtori."""
        assert self.num_vars == other.num_vars
        rows = list(self.rows) + list(other.rows)
        angles = list(self.angles) + list(other.angles)
        return solve_monomial_system(self.num_vars, rows, angles)

    def tangent_cone(self):
        """Exponent-lattice tangent cone at 1, or None when 1 is not on self."""
        if not self.contains_identity():
            return None
        return LinearSubspace(self.num_vars, self.rows)

    # -- parametrization -----------------------------------------------------

    def parametrization(self):
        """A rational base angle vector and an integer basis of the direction lattice."""
        r = self.num_vars
        if not self.rows:
            return tuple(Fraction(0) for _ in range(r)), \
                [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
        B = IntMatrix(self.rows, cols=r)
        z0 = solve_rational(B, list(self.angles))
        assert z0 is not None, "saturated system must be solvable"
        return tuple(mod1(z) for z in z0), kernel_basis(B)

    def sample_torsion_points(self, count, orders=(1, 2, 3, 4, 6, 12), seed=None):
        """Deterministic torsion points on the subtorus (includes the base point)."""
        z0, K = self.parametrization()
        pts = []
        seen = set()

        def push(p):
            p = tuple(mod1(x) for x in p)
            if p not in seen:
                seen.add(p)
                pts.append(p)

        push(z0)
        for N in orders:
            if len(pts) >= count:
                break
            for j, k in enumerate(K):
                for mult in range(1, N):
                    push([z + Fraction(mult, N) * kj for z, kj in zip(z0, k)])
                    if len(pts) >= count:
                        return pts
            if len(K) >= 2:
                for mult in range(1, N):
                    push([z + Fraction(mult, N) * sum(kk[i] for kk in K)
                          for i, z in enumerate(z0)])
                    if len(pts) >= count:
                        return pts
        if seed is not None and len(pts) < count:
            rng = random.Random(seed)
            tries = 0
            while len(pts) < count and tries < 40 * count:
                tries += 1
                N = rng.choice([o for o in orders if o > 1] or [1])
                coeffs = [rng.randrange(N) for _ in K]
                push([z + sum(Fraction(c, N) * kk[i] for c, kk in zip(coeffs, K))
                      for i, z in enumerate(z0)])
        return pts[:count]

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, TranslatedSubtorus)
                and self.num_vars == other.num_vars
                and self.rows == other.rows and self.angles == other.angles)

    def __hash__(self):
        return hash((self.num_vars, self.rows, self.angles))

    def sort_key(self):
        return (len(self.rows), self.rows,
                tuple((a.numerator, a.denominator) for a in self.angles))

    def equations_str(self):
        if not self.rows:
            return "(full torus)"
        bits = []
        for row, angle in zip(self.rows, self.angles):
            mono = "*".join(("t%d" % (i + 1)) + ("" if e == 1 else "^%d" % e)
                            for i, e in enumerate(row) if e)
            rhs = "1" if angle == 0 else "e(%s)" % angle
            bits.append("%s = %s" % (mono, rhs))
        return "{" + ", ".join(bits) + "}"

    def __repr__(self):
        return "TranslatedSubtorus%s" % self.equations_str()


def _canonicalize(num_vars, rows, angles):
    """Canonical (Hermite basis, angles) for a saturated single-coset system."""
    rows = [tuple(int(x) for x in r) for r in rows]
    angles = [mod1(a) for a in angles]
    nonzero = [(r, a) for r, a in zip(rows, angles) if any(r)]
    for r, a in zip(rows, angles):
        if not any(r) and mod1(a) != 0:
            raise InconsistentSystemError("0 = nontrivial angle")
    if not nonzero:
        return (), ()
    A = IntMatrix([r for r, _ in nonzero], cols=num_vars)
    H, R = row_hermite(A)
    s = sum(1 for row in H.entries if any(row))
    sat = saturation(A)
    assert sat.entries == H.entries[:s], \
        "translated subtorus needs a saturated lattice (use solve_monomial_system)"
    new_angles = []
    for i in range(s):
        val = sum((Fraction(R[i, j]) * nonzero[j][1] for j in range(len(nonzero))),
                  Fraction(0))
        new_angles.append(mod1(val))
    for i in range(s, A.rows):
        val = sum((Fraction(R[i, j]) * nonzero[j][1] for j in range(len(nonzero))),
                  Fraction(0))
        if mod1(val) != 0:
            raise InconsistentSystemError("redundant rows with mismatched angles")
    return tuple(H.entries[:s]), tuple(new_angles)


def solve_monomial_system(num_vars, rows, angles):
    """All solutions of {t^rows[j] = e(angles[j])} as disjoint translated subtori."""
    rows = [tuple(int(x) for x in r) for r in rows]
    angles = [mod1(a) for a in angles]
    if not rows:
        return [TranslatedSubtorus.full_torus(num_vars)]
    A = IntMatrix(rows, cols=num_vars)
    U, D, V, Vinv = snf_with_inverse(A)
    s = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i] != 0)
    c = [sum((Fraction(U[i, j]) * angles[j] for j in range(len(angles))),
             Fraction(0)) for i in range(A.rows)]
    for i in range(s, A.rows):
        if mod1(c[i]) != 0:
            return []
    diag = [D[i, i] for i in range(s)]
    total = 1
    for d in diag:
        total *= d
        if total > COSET_CAP:
            raise ValueError("coset decomposition too large (%d cosets)" % total)
    basis = [tuple(Vinv.entries[i]) for i in range(s)]
    out = []
    combo = [0] * s
    while True:
        coset_angles = [mod1((c[i] + combo[i]) / diag[i]) for i in range(s)]
        out.append(TranslatedSubtorus(num_vars, basis, coset_angles))
        # increment the mixed-radix counter
        i = 0
        while i < s:
            combo[i] += 1
            if combo[i] < diag[i]:
                break
            combo[i] = 0
            i += 1
        else:
            break
        if i == s:
            break
    return out


class LinearSubspace:
    """A rational linear subspace of C^r given by integer normal vectors."""

    __slots__ = ("num_vars", "rows")

    def __init__(self, num_vars, rows):
        self.num_vars = num_vars
        nonzero = [tuple(int(x) for x in r) for r in rows if any(r)]
        if nonzero:
            sat = saturation(IntMatrix(nonzero, cols=num_vars))
            self.rows = tuple(sat.entries)
        else:
            self.rows = ()

    @staticmethod
    def whole_space(r):
        return LinearSubspace(r, ())

    @property
    def codim(self):
        return len(self.rows)

    @property
    def dim(self):
        return self.num_vars - len(self.rows)

    def is_zero_space(self):
        return self.dim == 0

    def membership(self, vec):
        assert len(vec) == self.num_vars
        return all(sum(Fraction(b) * Fraction(v) for b, v in zip(row, vec)) == 0
                   for row in self.rows)

    def contains(self, other: "LinearSubspace") -> bool:
        """Solution-space containment: other's space inside self's space."""
        assert self.num_vars == other.num_vars
        if not self.rows:
            return True
        if not other.rows:
            return False
        B = IntMatrix(other.rows, cols=self.num_vars)
        base_rank = B.rank()
        for row in self.rows:
            aug = IntMatrix(list(other.rows) + [row], cols=self.num_vars)
            if aug.rank() != base_rank:
                return False
        return True

    def intersect(self, other: "LinearSubspace") -> "LinearSubspace":
        assert self.num_vars == other.num_vars
        return LinearSubspace(self.num_vars, list(self.rows) + list(other.rows))

    def basis(self):
        """Integer basis of the subspace itself."""
        if not self.rows:
            return [tuple(1 if j == i else 0 for j in range(self.num_vars))
                    for i in range(self.num_vars)]
        return kernel_basis(IntMatrix(self.rows, cols=self.num_vars))

    def sample_points(self, count, seed=None):
        """Deterministic nonzero rational points on the subspace."""
        K = self.basis()
        if not K:
            return []
        pts, seen = [], set()

        def push(vec):
            v = tuple(Fraction(x) for x in vec)
            if any(v) and v not in seen:
                seen.add(v)
                pts.append(v)

        for k in K:
            push(k)
        for i in range(len(K)):
            for j in range(i + 1, len(K)):
                push([a + b for a, b in zip(K[i], K[j])])
                push([a - b for a, b in zip(K[i], K[j])])
        weights = [1, 2, 3, 5, 7, 11, 13, 17]
        for shift in range(len(weights)):
            vec = [0] * self.num_vars
            for idx, k in enumerate(K):
                w = weights[(idx + shift) % len(weights)]
                vec = [a + w * b for a, b in zip(vec, k)]
            push(vec)
        rng = random.Random(seed if seed is not None else 0)
        tries = 0
        while len(pts) < count and tries < 50 * count:
            tries += 1
            vec = [0] * self.num_vars
            for k in K:
                w = rng.randrange(-6, 7)
                vec = [a + w * b for a, b in zip(vec, k)]
            push(vec)
        return pts[:count]

    def __eq__(self, other):
        return (isinstance(other, LinearSubspace)
                and self.num_vars == other.num_vars and self.rows == other.rows)

    def __hash__(self):
        return hash((self.num_vars, self.rows))

    def equations_str(self):
        if not self.rows:
            return "(all of C^%d)" % self.num_vars
        bits = []
        for row in self.rows:
            terms = []
            for i, cf in enumerate(row):
                if cf:
                    name = "z%d" % (i + 1)
                    if cf == 1:
                        terms.append("+" + name)
                    elif cf == -1:
                        terms.append("-" + name)
                    else:
                        terms.append("%+d*%s" % (cf, name))
            lhs = "".join(terms).lstrip("+")
            bits.append("%s = 0" % lhs)
        return "{" + ", ".join(bits) + "}"

    def __repr__(self):
        return "LinearSubspace%s" % self.equations_str()


def prune_to_maximal(tori):
    """Drop subtori contained in another member (union stays the same)."""
    unique = []
    for t in sorted(set(tori), key=lambda t: t.sort_key()):
        unique.append(t)
    keep = []
    for t in unique:
        if not any(u is not t and u.contains(t) for u in unique):
            keep.append(t)
    return keep


class SupportLocus:
    """A Zariski-closed subset of (C*)^r given by ideal generators.

    components, when present, is the exact decomposition into maximal
    torsion-translated subtori; status records how much was proved:
    'exact' (decomposition certified by factorization into binomials),
    'sampled' (generators were subsampled), 'undecomposed' (a non-binomial
    factor was met; membership falls back to the generators).
    """

    __slots__ = ("num_vars", "ideal_gens", "components", "status")

    def __init__(self, num_vars, ideal_gens, components=None, status="undecomposed"):
        self.num_vars = num_vars
        gens = []
        seen = set()
        for g in ideal_gens:
            g = g.normalized()
            if g.is_zero():
                continue
            if g not in seen:
                seen.add(g)
                gens.append(g)
        self.ideal_gens = tuple(gens)
        self.components = tuple(components) if components is not None else None
        self.status = status

    def is_full(self):
        return not self.ideal_gens

    def is_empty(self):
        if self.components is not None:
            return len(self.components) == 0
        return any(g.is_unit() for g in self.ideal_gens)

    def membership(self, point):
        if self.components is not None:
            return any(t.membership(point) for t in self.components)
        if self.is_full():
            return True
        return all(g.eval_at_torsion(point).is_zero() for g in self.ideal_gens)

    def gens_vanish_at(self, point):
        return all(g.eval_at_torsion(point).is_zero() for g in self.ideal_gens)

    def __repr__(self):
        comps = ("undecomposed" if self.components is None
                 else "; ".join(t.equations_str() for t in self.components) or "empty")
        return "SupportLocus(%d gens; %s; %s)" % (
            len(self.ideal_gens), comps, self.status)


def classify_binomial_factor(f: LaurentPoly):
    """If V(f) is a union of torsion-translated subtori, return them; else None.

    Detects factors of the shape t^e0 * h(t^a) with a primitive and h a
    cyclotomic polynomial (this covers every Q-irreducible polynomial whose
    zero set in the torus is torsion-translated).
    """
    r = f.num_vars
    exps = list(f.terms)
    if len(exps) == 1:
        return []  # unit: empty zero set
    e0 = exps[0]
    diffs = [tuple(a - b for a, b in zip(e, e0)) for e in exps]
    direction = None
    for d in diffs:
        if any(d):
            g = 0
            for x in d:
                g = int_gcd(g, abs(x))
            direction = tuple(x // g for x in d)
            break
    steps = []
    for d in diffs:
        if not any(d):
            steps.append(0)
            continue
        ratio = None
        for a, b in zip(d, direction):
            if b:
                if a % b:
                    return None
                k = a // b
                if ratio is None:
                    ratio = k
                elif ratio != k:
                    return None
            elif a:
                return None
        if any(a != ratio * b for a, b in zip(d, direction)):
            return None
        steps.append(ratio)
    base = min(steps)
    steps = [k - base for k in steps]
    deg = max(steps)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, k in zip(exps, steps):
        coeffs[k] += f.terms[e]
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    # match against cyclotomic polynomials of the right degree
    d_match = None
    limit = 6 * deg * deg + 30
    for d in range(1, limit + 1):
        if euler_phi(d) != deg:
            continue
        if list(monic) == [Fraction(c) for c in cyclotomic_polynomial(d)]:
            d_match = d
            break
    if d_match is None:
        return None
    out = []
    for k in range(1, d_match + 1):
        if int_gcd(k, d_match) == 1:
            cosets = solve_monomial_system(r, [direction], [Fraction(k, d_match)])
            assert len(cosets) == 1, "primitive direction must give one coset"
            out.extend(cosets)
    return out


def restricted_terms(f: LaurentPoly, torus: TranslatedSubtorus):
    """Terms of f pulled back along the subtorus parametrization.

    Returns a dict mapping exponent vectors (in the direction-lattice
    coordinates) to nonzero Cyclotomic coefficients.
    """
    z0, K = torus.parametrization()
    acc = {}
    for e, c in f.terms.items():
        angle = mod1(sum((Fraction(x) * z for x, z in zip(e, z0)), Fraction(0)))
        newe = tuple(sum(e[i] * k[i] for i in range(len(e))) for k in K)
        val = acc.get(newe, Cyclotomic.zero()) + \
            Cyclotomic.root_of_unity(angle) * c
        if val.is_zero():
            acc.pop(newe, None)
        else:
            acc[newe] = val
    return acc


def _prune_pieces(pieces):
    """Drop (torus, residuals) pieces absorbed by a larger piece.

    (T, R) is absorbed by (T', R') when T' contains T and R' is a subset of R
    (then T' cap V(R') contains T cap V(R)).
    """
    unique = sorted(set(pieces),
                    key=lambda p: (len(p[1]), p[0].sort_key()))
    keep = []
    for t, res in unique:
        absorbed = False
        for t2, res2 in unique:
            if (t2, res2) != (t, res) and res2 <= res and t2.contains(t):
                absorbed = True
                break
        if not absorbed:
            keep.append((t, res))
    return keep


def extract_components(locus: SupportLocus) -> SupportLocus:
    """Best-effort exact decomposition of V(ideal_gens) into translated subtori.

    Every generator is factored over Q; binomial-type factors branch the
    running intersection into subtori, other factors ride along as residual
    equations on their carrier subtorus and are resolved at the end by exact
    restriction. The decomposition is certified exact when every residual
    either vanishes on, is invertible on, or is absorbed into a carrier.
    """
    r = locus.num_vars
    gens = locus.ideal_gens
    if not gens:
        return SupportLocus(r, (), components=[TranslatedSubtorus.full_torus(r)],
                            status="exact")
    if any(g.is_unit() for g in gens):
        return SupportLocus(r, gens, components=[], status="exact")
    factored = []
    for g in gens:
        branches = []
        for factor, _mult in factor_rational(g):
            branches.append((factor, classify_binomial_factor(factor)))
        factored.append(branches)
    # fully binomial generators first: they pin the components early
    factored.sort(key=lambda brs: (sum(1 for _, t in brs if t is None),
                                   len(brs)))
    pieces = [(TranslatedSubtorus.full_torus(r), frozenset())]
    for branches in factored:
        new = []
        for carrier, residual in pieces:
            for factor, tori in branches:
                if tori is None:
                    new.append((carrier, residual | {factor}))
                else:
                    for t in tori:
                        for isect in carrier.intersect(t):
                            new.append((isect, residual))
        pieces = _prune_pieces(new)
        if len(pieces) > COMPONENT_CAP:
            return SupportLocus(r, gens, components=None, status="undecomposed")
        if not pieces:
            break
    # resolve residual equations on their carriers
    resolved = []
    unresolved = False
    for carrier, residual in pieces:
        live = []
        dead = False
        for f in residual:
            terms = restricted_terms(f, carrier)
            if not terms:
                continue  # f vanishes identically on the carrier
            if len(terms) == 1:
                dead = True  # f is invertible on the carrier: empty branch
                break
            live.append(f)
        if dead:
            continue
        resolved.append((carrier, frozenset(live)))
    resolved = _prune_pieces(resolved)
    components = []
    for carrier, residual in resolved:
        if residual:
            unresolved = True
        else:
            components.append(carrier)
    if unresolved:
        return SupportLocus(r, gens, components=None, status="undecomposed")
    components.sort(key=lambda t: t.sort_key())
    return SupportLocus(r, gens, components=components,
                        status=locus.status if locus.status == "sampled"
                        else "exact")


# -- torsion sampling -------------------------------------------------------

def torsion_grid(r, orders=(1, 2, 3, 4, 6, 12)):
    """Small deterministic battery of torsion points in (C*)^r."""
    pts, seen = [], set()

    def push(p):
        p = tuple(mod1(x) for x in p)
        if p not in seen:
            seen.add(p)
            pts.append(p)

    push([Fraction(0)] * r)
    for N in orders:
        if N == 1:
            continue
        for k in range(1, N):
            push([Fraction(k, N)] * r)
        for j in range(r):
            p = [Fraction(0)] * r
            p[j] = Fraction(1, N)
            push(p)
            q = [Fraction(1, N)] * r
            q[j] = Fraction(0)
            push(q)
    return pts


def seeded_torsion_points(r, count, seed, orders=(2, 3, 4, 6, 8, 12)):
    """Pseudorandom torsion points with a single order per point."""
    rng = random.Random(seed)
    pts, seen = [], set()
    while len(pts) < count:
        N = rng.choice(orders)
        p = tuple(Fraction(rng.randrange(N), N) for _ in range(r))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return pts


def vanishes_on(f: LaurentPoly, torus: TranslatedSubtorus) -> bool:
    """Exact test that f restricts to zero on the subtorus."""
    assert f.num_vars == torus.num_vars
    return not restricted_terms(f, torus)
