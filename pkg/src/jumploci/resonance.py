"""Orlik-Solomon algebra, Aomoto complex ranks, and resonance loci.

The algebra of a central arrangement is built on no-broken-circuit monomial
bases with exact rational structure constants; the projective (deconed) model
is realized as the subalgebra generated by the sum-zero part of degree one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arrangements import Arrangement, _rank
from .exactlinalg import coords_in_basis, matrix_rank, row_space_basis
from .torus import LinearSubspace


def _merge_sign(left, right):
    """Sign of sorting the concatenation of two disjoint sorted tuples."""
    inversions = 0
    for a in left:
        for b in right:
            if a > b:
                inversions += 1
    return -1 if inversions % 2 else 1


class OSAlgebra:
    """Cohomology algebra of the complement of a central arrangement.

    forms: rational vectors cutting the hyperplanes in C^(ambient). Basis
    monomials are the no-broken-circuit subsets for the given index order.
    """

    def __init__(self, forms, max_degree=None):
        self.forms = [tuple(Fraction(x) for x in f) for f in forms]
        self.n = len(self.forms)
        self.rank = _rank(self.forms)
        if max_degree is None:
            max_degree = self.rank
        self.max_degree = min(max_degree, self.rank)
        self._rank_cache = {}
        self._circuits = self._find_circuits()
        self._broken = [(frozenset(c) - {min(c)}, tuple(sorted(c)))
                        for c in self._circuits]
        self.bases = self._nbc_bases()
        self._straighten_cache = {}
        self._basis_index = [
            {S: i for i, S in enumerate(level)} for level in self.bases]

    # -- matroid -------------------------------------------------------------

    def _subset_rank(self, subset):
        key = frozenset(subset)
        if key not in self._rank_cache:
            self._rank_cache[key] = _rank([self.forms[i] for i in key]) \
                if key else 0
        return self._rank_cache[key]

    def _find_circuits(self):
        circuits = []
        for size in range(2, self.rank + 2):
            for subset in combinations(range(self.n), size):
                if self._subset_rank(subset) >= size:
                    continue
                if any(set(c) < set(subset) for c in circuits):
                    continue
                circuits.append(tuple(subset))
        return circuits

    def _nbc_bases(self):
        bases = [[()]]
        for p in range(1, self.max_degree + 1):
            level = []
            for subset in combinations(range(self.n), p):
                if self._subset_rank(subset) < p:
                    continue
                sset = set(subset)
                if any(b <= sset for b, _ in self._broken):
                    continue
                level.append(subset)
            bases.append(level)
        return bases

    def dim(self, p):
        if p < 0 or p > self.rank:
            return 0
        if p <= self.max_degree:
            return len(self.bases[p])
        raise ValueError("degree %d beyond built maximum %d" % (p, self.max_degree))

    # -- straightening -------------------------------------------------------

    def straighten(self, subset):
        """Expand the monomial of a sorted tuple in the NBC basis."""
        subset = tuple(subset)
        if subset in self._straighten_cache:
            return self._straighten_cache[subset]
        result = self._straighten(subset)
        self._straighten_cache[subset] = result
        return result

    def _straighten(self, subset):
        if len(set(subset)) < len(subset):
            return {}
        if self._subset_rank(subset) < len(subset):
            return {}  # dependent monomials vanish
        sset = set(subset)
        offender = None
        for broken, circuit in self._broken:
            if broken <= sset and circuit[0] not in sset:
                offender = (broken, circuit)
                break
        if offender is None:
            assert subset in self._basis_index[len(subset)], \
                "independent no-broken-circuit monomial missing from basis"
            return {subset: Fraction(1)}
        broken, circuit = offender
        c0 = circuit[0]
        rest = tuple(sorted(sset - broken))
        # 0 = e_rest * de_C with de_C = sum_j (-1)^j e_{C minus c_j}
        out = {}
        base_sign = None
        contributions = []
        for j, cj in enumerate(circuit):
            part = tuple(sorted(set(circuit) - {cj}))
            if set(part) & set(rest):
                continue  # repeated generator: the term is zero
            merged = tuple(sorted(rest + part))
            sign = ((-1) ** j) * _merge_sign(rest, part)
            contributions.append((merged, sign, cj))
        for merged, sign, cj in contributions:
            if cj == c0:
                base_sign = sign
                assert merged == subset
        assert base_sign is not None
        for merged, sign, cj in contributions:
            if cj == c0:
                continue
            inner = self.straighten(merged)
            factor = Fraction(-sign, base_sign)
            for key, coeff in inner.items():
                val = out.get(key, Fraction(0)) + factor * coeff
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
        return out

    # -- multiplication ------------------------------------------------------

    def multiply_generator(self, i, p, vector):
        """Left-multiply a degree-p coefficient vector by e_i."""
        out = [Fraction(0)] * self.dim(p + 1)
        for idx, coeff in enumerate(vector):
            if not coeff:
                continue
            S = self.bases[p][idx]
            if i in S:
                continue
            sign = _merge_sign((i,), S)
            expanded = self.straighten(tuple(sorted((i,) + S)))
            for key, c in expanded.items():
                out[self._basis_index[p + 1][key]] += sign * coeff * c
        return out

    def multiply_element(self, a, p, vector):
        """Left-multiply by the degree-one element sum_i a[i] e_i."""
        out = [Fraction(0)] * self.dim(p + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            part = self.multiply_generator(i, p, vector)
            out = [x + Fraction(ai) * y for x, y in zip(out, part)]
        return out

    def aomoto_matrix(self, a, p):
        """Matrix of multiplication by a: columns indexed by the degree-p basis."""
        cols = []
        for idx in range(self.dim(p)):
            vec = [Fraction(0)] * self.dim(p)
            vec[idx] = Fraction(1)
            cols.append(self.multiply_element(a, p, vec))
        return [[cols[j][i] for j in range(len(cols))]
                for i in range(self.dim(p + 1))]

    def aomoto_rank(self, a, i):
        """dim H^i of the Aomoto complex (A, multiplication by a)."""
        assert len(a) == self.n
        if i < 0 or i > self.rank:
            return 0
        if i + 1 > self.max_degree and i + 1 <= self.rank:
            raise ValueError("build the algebra to degree %d first" % (i + 1))
        dim_i = self.dim(i)
        rank_out = matrix_rank(self.aomoto_matrix(a, i)) \
            if i + 1 <= self.rank else 0
        rank_in = matrix_rank(self.aomoto_matrix(a, i - 1)) if i >= 1 else 0
        return dim_i - rank_out - rank_in


class ProjectiveAomoto:
    """The subalgebra of an OSAlgebra generated by the sum-zero degree-one part.

    Models the cohomology of the projectivized complement; degree-p bases are
    row-reduced spanning sets expressed in the ambient NBC coordinates.
    """

    def __init__(self, algebra: OSAlgebra):
        self.algebra = algebra
        n = algebra.n
        firsts = []
        for i in range(n - 1):
            vec = [Fraction(0)] * n
            vec[i], vec[n - 1] = Fraction(1), Fraction(-1)
            firsts.append(vec)
        levels = [[[Fraction(1)]]]
        current = [([Fraction(1)], -1)]
        for p in range(1, algebra.max_degree + 1):
            nxt = []
            for vec, last in current:
                for i in range(last + 1, n - 1):
                    img = algebra.multiply_element(firsts[i], p - 1, vec)
                    if any(img):
                        nxt.append((img, i))
            current = nxt
            levels.append([v for v, _ in nxt])
        self.bases = [row_space_basis(level) if level else []
                      for level in levels]
        self.sumzero_generators = firsts

    def dim(self, p):
        if p < 0 or p >= len(self.bases):
            return 0
        return len(self.bases[p])

    def aomoto_rank(self, a, i):
        """dim H^i of the Aomoto complex on the projective subalgebra; a must
        have coordinate sum zero."""
        assert sum(Fraction(x) for x in a) == 0, "class not in the model"
        if i < 0 or self.dim(i) == 0:
            return 0

        def _map_rank(p):
            if self.dim(p) == 0 or self.dim(p + 1) == 0:
                return 0
            rows = []
            for vec in self.bases[p]:
                img = self.algebra.multiply_element(a, p, vec)
                coords = coords_in_basis(self.bases[p + 1], img)
                assert coords is not None, "subalgebra not closed under a"
                rows.append(coords)
            return matrix_rank(rows)

        return self.dim(i) - _map_rank(i) - _map_rank(i - 1)


@dataclass
class ResonancePoint:
    """Membership flags a in R^i for i = 0..k at a rational class a."""

    coordinates: tuple
    flags: tuple

    def in_any(self):
        return any(self.flags)


def resonance_membership(algebra: OSAlgebra, a, up_to) -> ResonancePoint:
    a = tuple(Fraction(x) for x in a)
    flags = tuple(algebra.aomoto_rank(a, i) > 0 for i in range(up_to + 1))
    return ResonancePoint(coordinates=a, flags=flags)


def local_resonance_pieces(arr: Arrangement, component, min_dim):
    """Thm-shaped local resonance pieces along a component, in C^r.

    For each stratum S along the component: the local resonance of the
    sub-arrangement (supported on I = closure(S)) intersected with the
    sum-zero condition on the complementary variables. Strata of rank <= 2
    are pencils, whose local resonance is the sum-zero hyperplane when the
    multiplicity is at least 3 and the origin otherwise.
    """
    r = arr.num_hyperplanes
    pieces = []
    for flat in arr.strata_along(component, min_dim):
        I = sorted(flat.closure)
        mult = len(I)
        rows = []
        # sum-zero over the complement of I
        outside = [0] * r
        for j in range(r):
            if j not in flat.closure:
                outside[j] = 1
        if any(outside):
            rows.append(outside)
        if flat.rank <= 2 and mult >= 3:
            inside = [0] * r
            for j in I:
                inside[j] = 1
            rows.append(inside)
        elif flat.rank <= 2:
            for j in I:
                row = [0] * r
                row[j] = 1
                rows.append(row)
        else:
            # non-pencil local arrangement: recurse into its rank-2 flats
            sub_forms, sub_labels = arr.local_subarrangement(flat)
            sub = Arrangement(len(sub_forms[0]) - 1, sub_forms)
            inner = []
            for f2 in sub.lattice():
                if f2.rank == 2 and len(f2.closure) >= 3:
                    sub_members = {sub_labels[pos] - 1 for pos in f2.closure}
                    sub_rows = []
                    row = [0] * r
                    for j in sub_members:
                        row[j] = 1
                    sub_rows.append(row)
                    for j in I:
                        if j not in sub_members:
                            zr = [0] * r
                            zr[j] = 1
                            sub_rows.append(zr)
                    inner.append(sub_rows)
            if not inner:
                for j in I:
                    row = [0] * r
                    row[j] = 1
                    rows.append(row)
                pieces.append((flat, LinearSubspace(r, rows)))
                continue
            for sub_rows in inner:
                pieces.append((flat, LinearSubspace(r, rows + sub_rows)))
            continue
        pieces.append((flat, LinearSubspace(r, rows)))
    return pieces


def known_global_resonance_components(arr: Arrangement, declared=()):
    """Local-type components of the degree-one resonance variety, plus any
    user-declared essential components (completeness is not claimed)."""
    r = arr.num_hyperplanes
    comps = []
    for flat in arr.lattice():
        if flat.rank == 2 and len(flat.closure) >= 3:
            rows = []
            inside = [0] * r
            for j in flat.closure:
                inside[j] = 1
            rows.append(inside)
            for j in range(r):
                if j not in flat.closure:
                    row = [0] * r
                    row[j] = 1
                    rows.append(row)
            comps.append(LinearSubspace(r, rows))
    for rows in declared:
        comps.append(LinearSubspace(r, rows))
    return comps
