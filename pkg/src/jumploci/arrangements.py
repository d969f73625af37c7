"""Hyperplane arrangements: intersection lattice, Euler characteristics,
strata along a component, local sub-arrangements, deconing and generic
charts/sections over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .intmatrix import IntMatrix, kernel_basis


class InputError(ValueError):
    pass


def _primitive(vec):
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    fracs = [Fraction(x) for x in vec]
    if not any(fracs):
        raise InputError("zero hyperplane coefficients")
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _rank(rows):
    """Rank of a list of integer/rational row vectors."""
    if not rows:
        return 0
    return IntMatrix([_primitive(r) for r in rows], cols=len(rows[0])).rank()


@dataclass(frozen=True)
class Flat:
    """A lattice flat: closure is the full set of hyperplanes containing it."""

    closure: frozenset
    rank: int
    mobius: int

    def dim_in(self, ambient_dim):
        return ambient_dim - self.rank

    @property
    def members(self):
        return self.closure

    def multiplicity(self):
        return len(self.closure)


class Arrangement:
    """A projective arrangement: r pairwise-distinct hyperplanes in CP^n."""

    def __init__(self, ambient_dim, hyperplanes, labels=None):
        self.ambient_dim = int(ambient_dim)
        forms = [_primitive(h) for h in hyperplanes]
        for f in forms:
            if len(f) != self.ambient_dim + 1:
                raise InputError("hyperplane has %d coefficients, expected %d"
                                 % (len(f), self.ambient_dim + 1))
        for i in range(len(forms)):
            for j in range(i + 1, len(forms)):
                if forms[i] == forms[j]:
                    raise InputError(
                        "non-reduced divisor: hyperplanes %d and %d coincide"
                        % (i + 1, j + 1))
        if not forms:
            raise InputError("empty arrangement")
        self.forms = tuple(forms)
        self.num_hyperplanes = len(forms)
        if labels is None:
            labels = ["H%d" % (i + 1) for i in range(len(forms))]
        assert len(labels) == len(forms)
        self.labels = tuple(str(x) for x in labels)
        self._lattice = None

    @staticmethod
    def from_affine(forms, labels=None):
        """Affine forms c0 + c1*x1 + ... + cn*xn, homogenized with x0."""
        projective = []
        for f in forms:
            projective.append(tuple(Fraction(x) for x in f))
        n = len(projective[0]) - 1
        for f in projective:
            if len(f) != n + 1:
                raise InputError("inconsistent affine form lengths")
            if not any(f[1:]):
                raise InputError("affine form with no variable part")
        return Arrangement(n, projective, labels)

    # -- lattice -------------------------------------------------------------

    def lattice(self):
        """All central flats (including the center when reached), with Mobius values."""
        if self._lattice is not None:
            return self._lattice
        r = self.num_hyperplanes
        span_cache = {}

        def closure_of(subset):
            rows = [self.forms[i] for i in subset]
            rank = _rank(rows)
            close = frozenset(
                i for i in range(r)
                if _rank(rows + [self.forms[i]]) == rank)
            return close, rank

        flats = {}
        frontier = [frozenset()]
        flats[frozenset()] = 0
        while frontier:
            new_frontier = []
            for closure in frontier:
                base_rank = flats[closure]
                for i in range(r):
                    if i in closure:
                        continue
                    key = tuple(sorted(closure | {i}))
                    if key in span_cache:
                        close, rank = span_cache[key]
                    else:
                        close, rank = closure_of(closure | {i})
                        span_cache[key] = (close, rank)
                    if close not in flats:
                        flats[close] = rank
                        new_frontier.append(close)
            frontier = new_frontier
        # Mobius recursion from the bottom (ambient, empty closure)
        order = sorted(flats, key=lambda c: (flats[c], tuple(sorted(c))))
        mobius = {}
        for closure in order:
            if flats[closure] == 0:
                mobius[closure] = 1
                continue
            total = 0
            for other in order:
                if other != closure and other <= closure:
                    total += mobius[other]
            mobius[closure] = -total
        self._lattice = tuple(
            Flat(closure=c, rank=flats[c], mobius=mobius[c]) for c in order)
        return self._lattice

    def flats(self, rank=None, projective_only=False):
        out = []
        for f in self.lattice():
            if rank is not None and f.rank != rank:
                continue
            if projective_only and f.rank > self.ambient_dim:
                continue
            out.append(f)
        return out

    def poincare_polynomial(self):
        """Coefficients of pi(A, t) = sum mu(X) (-t)^rank(X) (central lattice)."""
        coeffs = [0] * (self.ambient_dim + 2)
        for f in self.lattice():
            coeffs[f.rank] += f.mobius * ((-1) ** f.rank)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    def deconed_poincare(self):
        """pi(A, t) / (1 + t): the Poincare polynomial of the projective complement."""
        num = list(self.poincare_polynomial())
        quo = []
        # divide by (1 + t), ascending coefficients
        carry = 0
        for c in num:
            cur = c - carry
            quo.append(cur)
            carry = cur
        assert quo[-1] == 0 or len(num) == 1, "pi(A,t) must be divisible by 1+t"
        if quo and quo[-1] == 0:
            quo.pop()
        return quo

    def euler_projective_complement(self):
        """chi of CP^n minus the arrangement, via the deconed Poincare polynomial."""
        quo = self.deconed_poincare()
        return sum(c * ((-1) ** i) for i, c in enumerate(quo))

    def milnor_fiber_euler(self):
        """chi(F) = d * chi(M*) for the Milnor fiber of the defining product."""
        return self.num_hyperplanes * self.euler_projective_complement()

    def is_essential(self):
        return _rank(list(self.forms)) == self.ambient_dim + 1

    # -- strata --------------------------------------------------------------

    def strata_along(self, component, min_dim=0):
        """Projective flats through the given component (1-based), dim >= min_dim."""
        assert 1 <= component <= self.num_hyperplanes
        idx = component - 1
        out = []
        for f in self.lattice():
            if f.rank == 0 or f.rank > self.ambient_dim:
                continue
            if idx in f.closure and f.dim_in(self.ambient_dim) >= min_dim:
                out.append(f)
        return out

    def witness_point(self, flat: Flat):
        """A rational projective point in the open stratum of the flat."""
        rows = [self.forms[i] for i in sorted(flat.closure)]
        if rows:
            K = kernel_basis(IntMatrix(rows, cols=self.ambient_dim + 1))
        else:
            K = [tuple(1 if j == i else 0 for j in range(self.ambient_dim + 1))
             for i in range(self.ambient_dim + 1)]
        assert K, "flat has empty projective support"
        outside = [self.forms[i] for i in range(self.num_hyperplanes)
                   if i not in flat.closure]
        weights = list(range(1, 40))
        for shift in range(200):
            vec = [0] * (self.ambient_dim + 1)
            for pos, k in enumerate(K):
                w = weights[(pos * 7 + shift) % len(weights)] ** (pos + 1)
                vec = [a + w * b for a, b in zip(vec, k)]
            if not any(vec):
                continue
            if all(sum(c * v for c, v in zip(form, vec)) != 0 for form in outside):
                return tuple(Fraction(v) for v in vec)
        raise RuntimeError("witness point search exhausted (should not happen)")

    def local_subarrangement(self, flat: Flat):
        """Central sub-arrangement of the hyperplanes through the flat.

        Returns (forms in C^rank, global 1-based labels), essentialized by
        expressing every form through a maximal independent subset.
        """
        indices = sorted(flat.closure)
        rows = [self.forms[i] for i in indices]
        basis_idx = []
        for pos in range(len(rows)):
            if _rank([rows[i] for i in basis_idx] + [rows[pos]]) > len(basis_idx):
                basis_idx.append(pos)
        rho = len(basis_idx)
        assert rho == flat.rank
        basis_rows = [rows[i] for i in basis_idx]
        local_forms = []
        for row in rows:
            coeffs = _solve_in_span(basis_rows, row)
            local_forms.append(tuple(coeffs))
        return local_forms, [i + 1 for i in indices]

    def restrict_to_plane(self, embedding):
        """Section by the plane spanned by the columns of the embedding matrix."""
        new_forms = []
        m = len(embedding[0])
        for f in self.forms:
            g = tuple(sum(Fraction(f[i]) * embedding[i][j]
                          for i in range(self.ambient_dim + 1))
                      for j in range(m))
            if not any(g):
                return None
            new_forms.append(g)
        try:
            return Arrangement(m - 1, new_forms, labels=self.labels)
        except InputError:
            return None

    def __repr__(self):
        return "Arrangement(CP^%d, %d hyperplanes)" % (
            self.ambient_dim, self.num_hyperplanes)


def _solve_in_span(basis_rows, target):
    """Coefficients expressing target in the rational span of basis_rows."""
    cols = [[Fraction(b[i]) for b in basis_rows] for i in range(len(target))]
    # solve basis^T c = target by Gaussian elimination
    n = len(basis_rows)
    aug = [cols[i] + [Fraction(target[i])] for i in range(len(target))]
    pivots, r = [], 0
    for c in range(n):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        assert aug[i][n] == 0, "target not in span"
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = aug[i][n]
    return sol


# -- euler characteristic oracle (inclusion-exclusion over open strata) -------

def euler_by_strata(arr: Arrangement):
    """Independent chi(M*) via open-stratum counting on the projective lattice."""
    n = arr.ambient_dim
    proj_flats = [f for f in arr.lattice() if 1 <= f.rank <= n]

    def chi_P(k):
        return k + 1  # chi of CP^k

    chi_open = {}
    for f in sorted(proj_flats, key=lambda f: -f.rank):
        total = chi_P(n - f.rank)
        for g in proj_flats:
            if g is not f and f.closure < g.closure:
                total -= chi_open[g.closure]
        chi_open[f.closure] = total
    return chi_P(n) - sum(chi_open.values())


# -- deconing and generic charts ---------------------------------------------

def _invert_rational(matrix):
    n = len(matrix)
    aug = [[Fraction(matrix[i][j]) for j in range(n)] +
           [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c]), None)
        assert pivot is not None, "singular coordinate change"
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def decone(arr: Arrangement, chart, drop=None):
    """Affine forms of the arrangement in the chart {chart . x = 1}.

    chart must not be proportional to a kept hyperplane. drop (1-based index)
    removes a component (used when the chart is that component). Returns
    (affine_forms, labels_1based) where each affine form is a tuple
    (c0, c1, ..., cn) meaning c0 + sum c_i y_i = 0.
    """
    n = arr.ambient_dim
    chart = _primitive(chart)
    rows = [list(chart)]
    for i in range(n + 1):
        e = [1 if j == i else 0 for j in range(n + 1)]
        if _rank(rows + [e]) > len(rows):
            rows.append(e)
        if len(rows) == n + 1:
            break
    C = rows
    Cinv = _invert_rational(C)
    affine, labels = [], []
    for idx, f in enumerate(arr.forms):
        if drop is not None and idx == drop - 1:
            continue
        g = [sum(Fraction(f[i]) * Cinv[i][j] for i in range(n + 1))
             for j in range(n + 1)]
        if not any(g[1:]):
            raise InputError(
                "hyperplane %s is the chart hyperplane; decone undefined"
                % arr.labels[idx])
        affine.append(_primitive(g))
        labels.append(idx + 1)
    return affine, labels


def chart_is_transversal(arr: Arrangement, chart):
    """No flat of the arrangement is contained in the chart hyperplane."""
    chart = _primitive(chart)
    n = arr.ambient_dim
    for f in arr.lattice():
        if not (1 <= f.rank <= n):
            continue
        rows = [arr.forms[i] for i in sorted(f.closure)]
        if _rank(rows + [list(chart)]) == f.rank:
            return False
    return True


def find_generic_chart(arr: Arrangement):
    """Deterministic rational chart hyperplane transversal to the arrangement."""
    n = arr.ambient_dim
    candidates = []
    for k in range(0, 120):
        candidates.append(tuple((k + 1) ** j + (j + 1) * k for j in range(n + 1)))
        candidates.append(tuple(1 + j * (2 * k + 1) for j in range(n + 1)))
    for cand in candidates:
        if not any(cand):
            continue
        cand = _primitive(cand)
        if any(cand == f for f in arr.forms):
            continue
        if chart_is_transversal(arr, cand):
            return cand
    raise RuntimeError("no generic chart found (search exhausted)")


def find_generic_section(arr: Arrangement):
    """A generic plane section CP^2 of an arrangement in CP^3.

    Returns (sectioned Arrangement with the same labels, embedding matrix).
    Validated combinatorially: the multiple points of the section match the
    rank-2 flats of the input.
    """
    assert arr.ambient_dim == 3
    rank2 = [f for f in arr.lattice() if f.rank == 2]
    rank3 = [f for f in arr.lattice() if f.rank == 3]
    for k in range(200):
        h = _primitive(tuple((k + 2) ** j + j * k for j in range(4)))
        K = kernel_basis(IntMatrix([list(h)], cols=4))
        if len(K) != 3:
            continue
        E = [[K[j][i] for j in range(3)] for i in range(4)]
        section = arr.restrict_to_plane(E)
        if section is None:
            continue
        sec_rank2 = {f.closure for f in section.lattice() if f.rank == 2}
        want = {f.closure for f in rank2}
        if sec_rank2 != want:
            continue
        # section must avoid the point flats
        ok = True
        for f in rank3:
            rows = [arr.forms[i] for i in sorted(f.closure)]
            pt = kernel_basis(IntMatrix(rows, cols=4))
            if len(pt) == 1 and _rank([list(h)] + [list(pt[0])]) == 1:
                ok = False
                break
            # point on the plane iff h . pt == 0
            if len(pt) == 1 and sum(a * b for a, b in zip(h, pt[0])) == 0:
                ok = False
                break
        if ok:
            return section, E
    raise RuntimeError("no generic plane section found (search exhausted)")
