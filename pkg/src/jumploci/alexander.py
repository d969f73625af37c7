"""Fox calculus on meridian presentations.

Builds wiring diagrams of real (rational) affine line arrangements, Randell
presentations, abelianized Fox matrices, the published degree <= 1 Alexander
support, twisted homology ranks at torsion characters, uniform local supports,
and the diagonal (linking-number) specialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangements import (Arrangement, InputError, decone, find_generic_chart,
                           find_generic_section, _primitive)
from .cyclotomic import Cyclotomic, mod1
from .exactlinalg import matrix_rank
from .fpmodules import minor_determinants
from .laurent import LaurentPoly, laurent_gcd_list
from .torus import (SupportLocus, TranslatedSubtorus, extract_components,
                    prune_to_maximal, solve_monomial_system)

Word = tuple  # sequence of nonzero signed 1-based generator indices


class PresentationError(ValueError):
    pass


def _invert_word(word):
    return tuple(-x for x in reversed(word))


class GroupPresentation:
    """Meridian-generated presentation with a generator -> component map.

    generator_component realizes the identification of meridians along
    branches of the same irreducible component; the abelianization sends
    generator j to the variable of component generator_component[j].
    """

    def __init__(self, num_generators, relators, generator_component=None,
                 num_components=None):
        self.num_generators = int(num_generators)
        if generator_component is None:
            generator_component = list(range(1, self.num_generators + 1))
        self.generator_component = tuple(int(c) for c in generator_component)
        assert len(self.generator_component) == self.num_generators
        if num_components is None:
            num_components = max(self.generator_component, default=0)
        self.num_components = int(num_components)
        if sorted(set(self.generator_component)) != list(
                range(1, self.num_components + 1)):
            raise PresentationError("components must cover 1..r")
        rels = []
        for w in relators:
            w = tuple(int(x) for x in w)
            for x in w:
                if x == 0 or abs(x) > self.num_generators:
                    raise PresentationError("bad generator index %d" % x)
            rels.append(w)
        self.relators = tuple(rels)
        self._check_abelianized()
        self._fox = None

    def _check_abelianized(self):
        for w in self.relators:
            sums = [0] * self.num_components
            for x in w:
                c = self.generator_component[abs(x) - 1] - 1
                sums[c] += 1 if x > 0 else -1
            if any(sums):
                raise PresentationError(
                    "relator abelianization is nonzero: H_1 would not be "
                    "free of rank %d (torsion/rank drop)" % self.num_components)

    # -- Fox calculus --------------------------------------------------------

    def _variable(self, gen_index):
        return LaurentPoly.variable(self.num_components,
                                    self.generator_component[gen_index] - 1)

    def fox_derivative(self, word, j):
        """Abelianized free derivative of the word by generator j (0-based)."""
        r = self.num_components
        acc = LaurentPoly.zero(r)
        prefix = LaurentPoly.one(r)
        for x in word:
            i = abs(x) - 1
            tvar = self._variable(i)
            if x > 0:
                if i == j:
                    acc = acc + prefix
                prefix = prefix * tvar
            else:
                prefix = prefix * tvar ** -1
                if i == j:
                    acc = acc - prefix
        return acc

    def fox_matrix(self):
        """Rows = relators, columns = generators, entries in r variables."""
        if self._fox is not None:
            return self._fox
        rows = []
        for w in self.relators:
            rows.append(tuple(self.fox_derivative(w, j)
                              for j in range(self.num_generators)))
        self._fox = tuple(rows)
        self._check_fox_identity()
        return self._fox

    def _check_fox_identity(self):
        r = self.num_components
        for row in self._fox:
            total = LaurentPoly.zero(r)
            for j, entry in enumerate(row):
                total = total + entry * (self._variable(j) - 1)
            assert total.is_zero(), "Fox fundamental identity violated"

    def word_abelianization(self, word):
        r = self.num_components
        m = LaurentPoly.one(r)
        for x in word:
            v = self._variable(abs(x) - 1)
            m = m * (v if x > 0 else v ** -1)
        return m

    def euler_characteristic(self):
        """chi of the presentation 2-complex."""
        return 1 - self.num_generators + len(self.relators)

    def __repr__(self):
        return "GroupPresentation(%d gens, %d relators, %d components)" % (
            self.num_generators, len(self.relators), self.num_components)


# -- wiring diagrams ----------------------------------------------------------


class WiringDiagram:
    """Left-to-right crossing list of a real affine line arrangement.

    Each crossing is the tuple of wires through it, ordered bottom to top just
    left of the crossing. Every non-parallel pair must cross exactly once.
    """

    def __init__(self, num_wires, crossings):
        self.num_wires = int(num_wires)
        self.crossings = []
        seen_pairs = set()
        for cr in crossings:
            cr = tuple(int(w) for w in cr)
            if len(cr) < 2 or len(set(cr)) != len(cr):
                raise InputError("bad crossing %r" % (cr,))
            for w in cr:
                if not 1 <= w <= self.num_wires:
                    raise InputError("unknown wire %d" % w)
            for a in cr:
                for b in cr:
                    if a < b:
                        if (a, b) in seen_pairs:
                            raise InputError(
                                "wires %d,%d cross twice" % (a, b))
                        seen_pairs.add((a, b))
            self.crossings.append(cr)
        self.crossings = tuple(self.crossings)

    def __repr__(self):
        return "WiringDiagram(%d wires, %d crossings)" % (
            self.num_wires, len(self.crossings))


def wiring_from_lines(lines):
    """Wiring diagram of rational affine lines (c0 + c1*x + c2*y = 0).

    A deterministic rational shear removes vertical lines and makes distinct
    crossing points have distinct sweep coordinates.
    """
    lines = [tuple(Fraction(c) for c in line) for line in lines]
    for line in lines:
        if len(line) != 3 or not (line[1] or line[2]):
            raise InputError("bad affine line %r" % (line,))
    # crossing points in original coordinates
    points = {}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            c0, c1, c2 = lines[i]
            d0, d1, d2 = lines[j]
            det = c1 * d2 - c2 * d1
            if det == 0:
                if c0 * d1 - c1 * d0 == 0 and c0 * d2 - c2 * d0 == 0:
                    raise InputError("lines %d and %d coincide" % (i + 1, j + 1))
                continue  # parallel
            x = (-c0 * d2 + c2 * d0) / det
            y = (-c1 * d0 + c0 * d1) / det
            points.setdefault((x, y), set()).update((i, j))
    # shear (x, y) = (u + lam*v, v): avoid verticals and equal sweep coords
    bad = set()
    for (c0, c1, c2) in lines:
        if c1:
            bad.add(Fraction(-c2, c1))
    pts = list(points)
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            (x1, y1), (x2, y2) = pts[a], pts[b]
            if y1 != y2:
                bad.add(Fraction(x1 - x2, y1 - y2))
            elif x1 == x2:
                raise AssertionError("distinct keys, equal points")
    lam = None
    k = 0
    while lam is None:
        for cand in (Fraction(k), Fraction(-k)):
            if cand not in bad:
                lam = cand
                break
        k += 1
    sheared = [(c0, c1, c1 * lam + c2) for (c0, c1, c2) in lines]
    events = []
    for (x, y), through in points.items():
        events.append((x - lam * y, y, tuple(sorted(through))))
    events.sort()
    for a in range(len(events) - 1):
        assert events[a][0] != events[a + 1][0], "shear failed to separate"
    # initial bottom-to-top order far left
    u0 = (min(e[0] for e in events) - 1) if events else Fraction(0)
    heights = []
    for idx, (c0, c1, c2) in enumerate(sheared):
        assert c2 != 0
        heights.append((Fraction(-(c0 + c1 * u0), c2), idx))
    heights.sort()
    order = [idx for _, idx in heights]
    crossings = []
    for u, _y, through in events:
        positions = sorted(order.index(w) for w in through)
        assert positions == list(range(positions[0], positions[0] + len(positions))), \
            "crossing wires not consecutive (sweep inconsistency)"
        lo, hi = positions[0], positions[-1]
        block = order[lo:hi + 1]
        crossings.append(tuple(w + 1 for w in block))
        order[lo:hi + 1] = block[::-1]
    return WiringDiagram(len(lines), crossings)


def randell_presentation(wiring: WiringDiagram,
                         generator_component=None) -> GroupPresentation:
    """Meridian presentation of the complexified complement of the diagram.

    At a crossing of wires w1..wk (bottom to top), the local product
    P = g(w1)...g(wk) commutes with every g(wi); the k-1 commutators with
    w1..w(k-1) are the relators (the last one is redundant).
    """
    relators = []
    for cr in wiring.crossings:
        P = tuple(cr)
        for w in cr[:-1]:
            relators.append(P + (w,) + _invert_word(P) + (-w,))
    return GroupPresentation(wiring.num_wires, relators,
                             generator_component=generator_component)


def presentation_for_affine_lines(lines, generator_component=None):
    return randell_presentation(wiring_from_lines(lines), generator_component)


# -- degree <= 1 support -------------------------------------------------------


def alexander_support_deg1(pres: GroupPresentation) -> SupportLocus:
    """The degree <= 1 Alexander support W0 u W1 in (C*)^r.

    Computed from the (g-1)-minor Fitting data of the Fox matrix, with the
    identity character adjoined (number-zero support); the published ideal
    generators are the minor * (t_i - 1) products, whose zero set is exactly
    the degree <= 1 union.
    """
    r = pres.num_components
    g = pres.num_generators
    fox = pres.fox_matrix()
    identity = TranslatedSubtorus.identity_point(r)
    m_ideal = [LaurentPoly.variable(r, i) - 1 for i in range(r)]
    if g - 1 == 0:
        return SupportLocus(r, m_ideal, components=[identity], status="exact")
    if len(fox) < g - 1:
        return SupportLocus(r, (), components=[TranslatedSubtorus.full_torus(r)],
                            status="exact")
    minors = minor_determinants(list(fox), g - 1)
    unique = []
    seen = set()
    for m in minors:
        m = m.normalized()
        if m.is_zero() or m in seen:
            continue
        seen.add(m)
        unique.append(m)
    if not unique:
        return SupportLocus(r, (), components=[TranslatedSubtorus.full_torus(r)],
                            status="exact")
    e1 = extract_components(SupportLocus(r, unique))
    published_gens = []
    gen_seen = set()
    for m in unique:
        for tm in m_ideal:
            p = (m * tm).normalized()
            if p not in gen_seen:
                gen_seen.add(p)
                published_gens.append(p)
    if e1.components is None:
        return SupportLocus(r, published_gens, components=None,
                            status="undecomposed")
    comps = prune_to_maximal(list(e1.components) + [identity])
    comps.sort(key=lambda t: t.sort_key())
    return SupportLocus(r, published_gens, components=comps, status=e1.status)


def twisted_rank(pres: GroupPresentation, rho) -> int:
    """dim H_1 of the presentation 2-complex with the rank-one system rho.

    rho is a vector of rational angles, one per component; the coefficient
    system sends generator j to exp(2*pi*i*rho[component(j)]).
    """
    r = pres.num_components
    assert len(rho) == r
    rho = [mod1(x) for x in rho]
    fox = pres.fox_matrix()
    g = pres.num_generators
    values = [Cyclotomic.root_of_unity(rho[pres.generator_component[j] - 1])
              for j in range(g)]
    boundary_nonzero = any(not (v - 1).is_zero() for v in values)
    dim_ker_d1 = g - (1 if boundary_nonzero else 0)
    if not fox:
        return dim_ker_d1
    evaluated = [[entry.eval_at_torsion(rho) for entry in row] for row in fox]
    return dim_ker_d1 - matrix_rank(evaluated)


# -- uniform local supports ----------------------------------------------------


def support_for_central_forms(forms, num_local_vars=None) -> SupportLocus:
    """Degree <= 1 support of the complement of a central arrangement.

    forms are rational vectors in C^rho for rho <= 3; the result lives in the
    torus with one variable per form (in the given order).
    """
    forms = [tuple(Fraction(x) for x in f) for f in forms]
    rho = len(forms[0])
    m = len(forms)
    if rho == 1 or m == 1:
        if m == 1:
            return alexander_support_deg1(GroupPresentation(1, []))
        # rho == 1 with several forms would be non-reduced
        raise InputError("non-reduced central arrangement")
    if rho == 2:
        lines = [(Fraction(0), f[0], f[1]) for f in forms]
        pres = presentation_for_affine_lines(lines)
        return alexander_support_deg1(pres)
    if rho == 3:
        arr = Arrangement(2, forms)
        chart = find_generic_chart(arr)
        lines, labels = decone(arr, chart)
        assert labels == list(range(1, m + 1))
        pres = presentation_for_affine_lines(lines)
        return alexander_support_deg1(pres)
    raise InputError("local rank %d not supported (ambient dimension > 3?)" % rho)


def embed_support(local: SupportLocus, positions, r) -> SupportLocus:
    """Extend a support in variables `positions` by full tori in the rest."""
    gens = [g.pad_variables(r, positions) for g in local.ideal_gens]
    comps = None
    if local.components is not None:
        comps = []
        for t in local.components:
            rows = []
            for row in t.rows:
                new = [0] * r
                for i, p in enumerate(positions):
                    new[p] = row[i]
                rows.append(new)
            comps.append(TranslatedSubtorus(r, rows, t.angles))
    return SupportLocus(r, gens, components=comps, status=local.status)


def local_uniform_support(arr: Arrangement, flat) -> SupportLocus:
    """W(local complement) x (full torus in the other variables), in (C*)^r."""
    forms, labels = arr.local_subarrangement(flat)
    local = support_for_central_forms(forms)
    positions = [lab - 1 for lab in labels]
    return embed_support(local, positions, arr.num_hyperplanes)


# -- diagonal specialization ---------------------------------------------------


@dataclass
class DiagonalSpecialization:
    """Restriction of a support locus to the diagonal one-parameter torus."""

    poly: LaurentPoly | None        # one-variable polynomial (radical form)
    root_angles: tuple | None       # angles of the roots when solved exactly
    non_torsion: bool               # diagonal contained in the locus
    via: str                        # 'components' or 'substitution'

    def root_orders(self):
        assert self.root_angles is not None
        return sorted({a.denominator for a in self.root_angles})


def linking_specialization(locus: SupportLocus) -> DiagonalSpecialization:
    """Intersect the locus with the diagonal {(a, ..., a)} exactly.

    With components available the diagonal intersection is solved exactly and
    returned as the product of the cyclotomic polynomials of the appearing
    root orders. Without components, the gcd of the ideal generators is
    restricted to the diagonal (a divisor-level upper bound).
    """
    if locus.components is not None:
        angles = set()
        for comp in locus.components:
            rows = [[sum(row)] for row in comp.rows]
            if all(row[0] == 0 for row in rows):
                if all(a == 0 for a in comp.angles):
                    return DiagonalSpecialization(None, None, True, "components")
                continue
            sols = solve_monomial_system(1, rows, comp.angles)
            for s in sols:
                angles.add(s.angles[0] if s.rows else None)
        if None in angles:
            return DiagonalSpecialization(None, None, True, "components")
        orders = sorted({a.denominator for a in angles})
        for d in orders:
            present = {a.numerator for a in angles if a.denominator == d}
            from math import gcd as _gcd
            expected = {k for k in range(d) if _gcd(k, d) == 1} or {0}
            assert present == expected, "diagonal root set not Galois closed"
        poly = LaurentPoly.one(1)
        from .cyclotomic import cyclotomic_polynomial
        for d in orders:
            cyc = LaurentPoly(1, {(k,): c for k, c in
                                  enumerate(cyclotomic_polynomial(d)) if c})
            poly = poly * cyc
        return DiagonalSpecialization(poly.normalized(),
                                      tuple(sorted(angles)), False, "components")
    if locus.is_full():
        return DiagonalSpecialization(None, None, True, "substitution")
    g = laurent_gcd_list(list(locus.ideal_gens))
    sub = g.diagonal_restriction()
    if sub.is_zero():
        return DiagonalSpecialization(None, None, True, "substitution")
    return DiagonalSpecialization(sub.normalized(), None, False, "substitution")
