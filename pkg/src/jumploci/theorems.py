"""Executable checkers for the containment, divisibility, Euler-characteristic
and tangent-cone statements on concrete inputs.

Every checker returns a Verdict with one of the statuses

    holds          proved at lattice level (exact integer/rational arithmetic)
    sampled_holds  verified on a deterministic sample, not certified as sets
    fails          a concrete recomputable counterexample is attached
    not_applicable a hypothesis of the statement is not met

The torus of reference is always the character torus of the deconed model U
(one variable per kept component); statements posed on the full component
torus are pulled back exactly along the monomial deconing map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import DEFAULT_SEED
from .alexander import (GroupPresentation, alexander_support_deg1,
                        linking_specialization, presentation_for_affine_lines,
                        twisted_rank)
from .arrangements import (Arrangement, InputError, chart_is_transversal,
                           decone, find_generic_chart, find_generic_section)
from .resonance import (OSAlgebra, known_global_resonance_components,
                        local_resonance_pieces)
from .torus import (LinearSubspace, SupportLocus, TranslatedSubtorus,
                    seeded_torsion_points, solve_monomial_system, torsion_grid)

THEOREM_IDS = (
    "support_oracle",
    "cone_containment",
    "local_divisibility",
    "euler_positivity",
    "root_orders",
    "tangent_cone",
    "resonance_divisibility",
)


@dataclass
class Verdict:
    theorem: str
    status: str
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {"theorem": self.theorem, "status": self.status,
                "witnesses": list(self.witnesses), "notes": list(self.notes)}


def _aggregate(statuses):
    statuses = list(statuses)
    if not statuses:
        return "not_applicable"
    if "fails" in statuses:
        return "fails"
    real = [s for s in statuses if s != "not_applicable"]
    if not real:
        return "not_applicable"
    if "sampled_holds" in real or "undecomposed" in real:
        return "sampled_holds"
    return "holds"


class ArrangementModel:
    """An arrangement together with its deconed complement model.

    The model fixes a chart hyperplane at infinity (either a designated
    component or an auxiliary transversal hyperplane), builds the meridian
    presentation of the affine complement through a real wiring diagram
    (after a generic plane section when the ambient dimension is 3), and
    computes the degree <= 1 Alexander support.
    """

    def __init__(self, arr: Arrangement, chart=None, infinity_drop=None,
                 declared_resonance=(), seed=DEFAULT_SEED):
        self.arrangement = arr
        self.seed = seed
        self.declared_resonance = tuple(declared_resonance)
        n = arr.ambient_dim
        if infinity_drop is not None:
            chart = arr.forms[infinity_drop - 1]
        if chart is None:
            raise InputError("a chart hyperplane is required")
        self.chart = chart
        self.infinity_drop = infinity_drop
        if n == 2:
            lines, labels = decone(arr, chart, drop=infinity_drop)
        elif n == 3:
            if infinity_drop is not None:
                combined, drop = arr, infinity_drop
            else:
                combined = Arrangement(
                    3, list(arr.forms) + [chart],
                    labels=list(arr.labels) + ["(chart)"])
                drop = combined.num_hyperplanes
            section, _E = find_generic_section(combined)
            lines, labels = decone(section, section.forms[drop - 1], drop=drop)
            labels = [l for l in labels]  # indices into `combined` == into arr
        else:
            raise InputError("ambient dimension %d not supported" % n)
        self.kept = [lab for lab in labels]  # 1-based component indices
        self.num_vars = len(self.kept)
        self.presentation = presentation_for_affine_lines(lines)
        self.locus = alexander_support_deg1(self.presentation)
        self._os = None

    # -- coordinate transport ------------------------------------------------

    def pull_exponent_row(self, row):
        """Exponent row on the full component torus -> row on the model torus."""
        base = row[self.infinity_drop - 1] if self.infinity_drop else 0
        return [row[k - 1] - base for k in self.kept]

    def pull_subtorus_system(self, rows, angles):
        """Solve the pulled-back monomial system on the model torus."""
        return solve_monomial_system(
            self.num_vars, [self.pull_exponent_row(r) for r in rows],
            list(angles))

    def pull_linear_rows(self, rows):
        return [self.pull_exponent_row(r) for r in rows]

    def embed_class(self, a):
        """Model-torus cohomology class -> class on the full component torus."""
        r = self.arrangement.num_hyperplanes
        z = [Fraction(0)] * r
        for i, k in enumerate(self.kept):
            z[k - 1] = Fraction(a[i])
        if self.infinity_drop:
            z[self.infinity_drop - 1] = -sum(
                (Fraction(x) for x in a), Fraction(0))
        return tuple(z)

    def os_algebra(self):
        if self._os is None:
            self._os = OSAlgebra(self.arrangement.forms, max_degree=2)
        return self._os

    def chart_transversal(self):
        if self.infinity_drop is not None:
            return True  # the chart is a component; no extra hypothesis
        return chart_is_transversal(self.arrangement, self.chart)


# -- individual checkers -------------------------------------------------------


def check_support_oracle(locus: SupportLocus, pres: GroupPresentation,
                         num_points=40, seed=DEFAULT_SEED) -> Verdict:
    """Twisted-rank positivity must agree with sampled support membership."""
    r = locus.num_vars
    points = []
    if locus.components is not None:
        for comp in locus.components:
            points.extend(comp.sample_torsion_points(
                max(4, num_points // (2 * max(1, len(locus.components)))),
                seed=seed))
    points.extend(seeded_torsion_points(r, num_points, seed))
    seen, battery = set(), []
    for p in points:
        if any(x != 0 for x in p) and p not in seen:
            seen.add(p)
            battery.append(p)
        if len(battery) >= num_points:
            break
    mismatches = []
    for p in battery:
        member = locus.membership(p)
        rank = twisted_rank(pres, p)
        if member != (rank > 0):
            mismatches.append({"point": [str(x) for x in p],
                               "membership": member, "twisted_rank": rank})
    if mismatches:
        return Verdict("support_oracle", "fails", witnesses=mismatches)
    return Verdict("support_oracle", "sampled_holds",
                   witnesses=[{"points_checked": len(battery)}])


def check_cone_containment(model: ArrangementModel) -> Verdict:
    """Degree <= 1 loci land in the subtorus cut by the total product."""
    notes = []
    if model.infinity_drop is None:
        if not model.chart_transversal():
            return Verdict("cone_containment", "not_applicable",
                           notes=["chart hyperplane is not transversal to the "
                                  "arrangement (required hypothesis)"])
        locus = model.locus
        m = model.num_vars
        target = solve_monomial_system(m, [[1] * m], [Fraction(0)])[0]
        structural = False
    else:
        # deconed at a component: the model torus is the identity component
        # of the character group, so the containment is structural
        locus = model.locus
        m = model.num_vars
        target = TranslatedSubtorus.full_torus(m)
        structural = True
    if locus.components is None:
        bad = []
        for p in torsion_grid(m):
            if locus.membership(p) and not target.membership(p):
                bad.append([str(x) for x in p])
        if bad:
            return Verdict("cone_containment", "fails", witnesses=bad)
        return Verdict("cone_containment", "sampled_holds",
                       notes=["locus undecomposed; sampled membership check"])
    bad = [c for c in locus.components if not target.contains(c)]
    if bad:
        return Verdict("cone_containment", "fails",
                       witnesses=[c.equations_str() for c in bad])
    wit = [c.equations_str() for c in locus.components]
    if structural:
        notes.append("containment structural for the component-at-infinity "
                     "model (the torus is the identity component of the "
                     "character group)")
    return Verdict("cone_containment", "holds", witnesses=wit, notes=notes)


def _local_divisibility_pieces(model: ArrangementModel, component, k=1):
    """Thm-shaped local pieces along one component, on the model torus."""
    arr = model.arrangement
    n = arr.ambient_dim
    r = arr.num_hyperplanes
    min_dim = n - k - 1
    pieces = []
    for flat in arr.strata_along(component, min_dim):
        assert flat.rank <= 2, \
            "degree <= 1 checks only reach pencil-type local strata"
        I = sorted(flat.closure)
        rows, angles = [], []
        outside = [0 if j in flat.closure else 1 for j in range(r)]
        if any(outside):
            rows.append(outside)
            angles.append(Fraction(0))
        if len(I) >= 3:
            rows.append([1 if j in flat.closure else 0 for j in range(r)])
            angles.append(Fraction(0))
        else:
            for j in I:
                row = [0] * r
                row[j] = 1
                rows.append(row)
                angles.append(Fraction(0))
        for torus in model.pull_subtorus_system(rows, angles):
            pieces.append((flat, torus))
    return pieces


def check_local_divisibility(model: ArrangementModel, component, k=1) -> Verdict:
    """Global degree <= 1 locus inside the union of local pieces along one
    component (essential arrangements)."""
    arr = model.arrangement
    if not arr.is_essential():
        return Verdict("local_divisibility", "not_applicable",
                       notes=["arrangement is not essential"])
    if k > arr.ambient_dim - 1:
        return Verdict("local_divisibility", "not_applicable",
                       notes=["degree bound %d exceeds n-1" % k])
    pieces = _local_divisibility_pieces(model, component, k)
    tori = [t for _, t in pieces]
    locus = model.locus
    label = arr.labels[component - 1]
    if locus.components is None:
        # sampled fallback: membership of grid points must imply membership
        # in the union of pieces
        bad = []
        for p in torsion_grid(model.num_vars):
            if locus.membership(p) and not any(t.membership(p) for t in tori):
                bad.append([str(x) for x in p])
        if bad:
            return Verdict("local_divisibility", "fails",
                           witnesses=bad, notes=["along %s" % label])
        return Verdict("local_divisibility", "sampled_holds",
                       notes=["locus undecomposed; sampled containment",
                              "along %s" % label])
    bad = []
    for comp in locus.components:
        if not any(t.contains(comp) for t in tori):
            bad.append(comp.equations_str())
    if bad:
        return Verdict("local_divisibility", "fails", witnesses=bad,
                       notes=["along %s" % label])
    return Verdict(
        "local_divisibility", "holds",
        witnesses=["%s inside local piece at stratum %s" % (
            comp.equations_str(),
            "{" + ",".join(arr.labels[i] for i in sorted(f.closure)) + "}")
            for comp in locus.components
            for f, t in pieces if t.contains(comp)][:8],
        notes=["along %s" % label, "%d local pieces" % len(tori)])


def check_euler_positivity(arr: Arrangement) -> Verdict:
    """Sign of the Euler characteristic of the projective complement, plus the
    emitted top characteristic polynomial (formula output, not verified)."""
    if arr.num_hyperplanes < 2:
        return Verdict("euler_positivity", "not_applicable",
                       notes=["needs at least two components"])
    if not arr.is_essential():
        return Verdict("euler_positivity", "not_applicable",
                       notes=["arrangement is not essential"])
    n = arr.ambient_dim
    chi = arr.euler_projective_complement()
    signed = ((-1) ** n) * chi
    product = "*".join("t%d" % (i + 1) for i in range(arr.num_hyperplanes))
    emission = "(%s - 1)^%d" % (product, signed)
    zeta = "(%s - 1)^%d" % (product, -chi)
    status = "holds" if signed >= 0 else "fails"
    return Verdict("euler_positivity", status,
                   witnesses=[{"chi_projective_complement": chi,
                               "signed": signed,
                               "chi_milnor_fiber": arr.milnor_fiber_euler()}],
                   notes=["top characteristic polynomial (formula output): "
                          + emission,
                          "monodromy zeta function (formula output): " + zeta])


def check_root_orders(model: ArrangementModel, component=None, k=1) -> Verdict:
    """Diagonal specialization roots are torsion of order dividing (r-1)!."""
    arr = model.arrangement
    if not arr.is_essential():
        return Verdict("root_orders", "not_applicable",
                       notes=["arrangement is not essential"])
    spec = linking_specialization(model.locus)
    if spec.non_torsion:
        return Verdict("root_orders", "fails",
                       witnesses=["diagonal contained in the locus"],
                       notes=["non-torsion diagonal"])
    r = arr.num_hyperplanes
    bound = factorial(r - 1)
    notes = ["order bound (r-1)! = %d with r = %d components" % (bound, r)]
    if spec.root_angles is None:
        return Verdict("root_orders", "sampled_holds",
                       witnesses=[{"specialization": str(spec.poly)}],
                       notes=notes + ["locus undecomposed: substitution hull "
                                      "only, roots not solved"])
    bad = [a for a in spec.root_angles if bound % a.denominator != 0]
    if bad:
        return Verdict("root_orders", "fails",
                       witnesses=[str(a) for a in bad], notes=notes)
    witness = {"specialization": str(spec.poly),
               "root_angles": [str(a) for a in spec.root_angles],
               "root_orders": spec.root_orders()}
    status = "holds"
    if component is not None:
        pieces = _local_divisibility_pieces(model, component, k)
        allowed = set()
        for _, torus in pieces:
            dspec = linking_specialization(
                SupportLocus(model.num_vars, (), components=[torus],
                             status="exact"))
            if dspec.non_torsion:
                allowed = None
                break
            allowed.update(dspec.root_angles)
        if allowed is not None:
            missing = [a for a in spec.root_angles if a not in allowed]
            if missing:
                status = "fails"
                witness["roots_outside_local_pieces"] = [str(a)
                                                         for a in missing]
            else:
                notes.append("all roots explained by local strata along %s"
                             % arr.labels[component - 1])
    return Verdict("root_orders", status, witnesses=[witness], notes=notes)


def check_tangent_cone(model: ArrangementModel, k=1, sample=25) -> Verdict:
    """Tangent cones of identity components are resonant; known resonance
    components are tangent (straightness), both on deterministic samples."""
    locus = model.locus
    arr = model.arrangement
    if locus.components is None:
        return Verdict("tangent_cone", "not_applicable",
                       notes=["locus undecomposed"])
    algebra = model.os_algebra()
    cones = []
    for comp in locus.components:
        tc = comp.tangent_cone()
        if tc is not None:
            cones.append((comp, tc))
    witnesses, bad = [], []
    for comp, tc in cones:
        if tc.is_zero_space():
            witnesses.append({"component": comp.equations_str(),
                              "tangent_cone": "0", "checked": "trivial"})
            continue
        pts = tc.sample_points(sample, seed=model.seed)
        for a in pts:
            z = model.embed_class(a)
            resonant = any(algebra.aomoto_rank(z, i) > 0 for i in range(k + 1))
            if not resonant:
                bad.append({"component": comp.equations_str(),
                            "class": [str(x) for x in a]})
        witnesses.append({"component": comp.equations_str(),
                          "tangent_cone": tc.equations_str(),
                          "points_checked": len(pts)})
    if bad:
        return Verdict("tangent_cone", "fails", witnesses=bad)
    # reverse inclusion on known resonance components (straightness, sampled)
    notes = []
    known = known_global_resonance_components(arr, model.declared_resonance)
    pulled_cones = [tc for _, tc in cones]
    for piece in known:
        pulled = LinearSubspace(model.num_vars,
                                model.pull_linear_rows(piece.rows))
        for a in pulled.sample_points(sample, seed=model.seed):
            if not any(tc.membership(a) for tc in pulled_cones):
                bad.append({"resonance_component": piece.equations_str(),
                            "class": [str(x) for x in a]})
    if bad:
        return Verdict("tangent_cone", "fails", witnesses=bad,
                       notes=["straightness direction failed"])
    notes.append("straightness sampled on %d known resonance components"
                 % len(known))
    return Verdict("tangent_cone", "sampled_holds" if cones else "holds",
                   witnesses=witnesses, notes=notes)


def check_resonance_divisibility(model: ArrangementModel, component,
                                 k=1, sample=25) -> Verdict:
    """Known degree <= k resonance components inside the union of local
    resonance pieces along one component (essential arrangements)."""
    arr = model.arrangement
    if not arr.is_essential():
        return Verdict("resonance_divisibility", "not_applicable",
                       notes=["arrangement is not essential"])
    if k > arr.ambient_dim - 1:
        return Verdict("resonance_divisibility", "not_applicable",
                       notes=["degree bound %d exceeds n-1" % k])
    label = arr.labels[component - 1]
    pieces = local_resonance_pieces(arr, component, arr.ambient_dim - k - 1)
    subspaces = [p for _, p in pieces]
    known = known_global_resonance_components(arr, model.declared_resonance)
    notes = ["along %s" % label,
             "checked components: %d local-type + %d declared"
             % (len(known) - len(model.declared_resonance),
                len(model.declared_resonance))]
    if not model.declared_resonance:
        notes.append("completeness caveat: essential resonance components "
                     "beyond the local ones are checked only if declared")
    exact, sampled, bad = True, False, []
    for comp in known:
        if any(piece.contains(comp) for piece in subspaces):
            continue
        exact = False
        for a in comp.sample_points(sample, seed=DEFAULT_SEED):
            if not any(piece.membership(a) for piece in subspaces):
                bad.append({"component": comp.equations_str(),
                            "class": [str(x) for x in a]})
        sampled = True
    if bad:
        return Verdict("resonance_divisibility", "fails", witnesses=bad,
                       notes=notes)
    witnesses = [{"component": c.equations_str()} for c in known]
    if not known:
        notes.append("no nontrivial degree-1 resonance components: "
                     "containment holds vacuously")
        return Verdict("resonance_divisibility", "holds",
                       witnesses=witnesses, notes=notes)
    status = "holds" if exact else ("sampled_holds" if sampled else "holds")
    return Verdict("resonance_divisibility", status,
                   witnesses=witnesses, notes=notes)


# -- the suite -------------------------------------------------------------


def run_arrangement_suite(model: ArrangementModel, theorems=None,
                          k=1) -> list:
    arr = model.arrangement
    wanted = THEOREM_IDS if theorems is None else tuple(theorems)
    verdicts = []
    for tid in wanted:
        if tid == "support_oracle":
            verdicts.append(check_support_oracle(model.locus,
                                                 model.presentation,
                                                 seed=model.seed))
        elif tid == "cone_containment":
            verdicts.append(check_cone_containment(model))
        elif tid == "euler_positivity":
            verdicts.append(check_euler_positivity(arr))
        elif tid == "local_divisibility":
            subs = [check_local_divisibility(model, c + 1, k)
                    for c in range(arr.num_hyperplanes)]
            verdicts.append(_merge_component_verdicts("local_divisibility",
                                                      subs, arr))
        elif tid == "root_orders":
            verdicts.append(check_root_orders(model, component=1, k=k))
        elif tid == "tangent_cone":
            verdicts.append(check_tangent_cone(model, k))
        elif tid == "resonance_divisibility":
            subs = [check_resonance_divisibility(model, c + 1, k)
                    for c in range(arr.num_hyperplanes)]
            verdicts.append(_merge_component_verdicts("resonance_divisibility",
                                                      subs, arr))
        else:
            raise InputError("unknown theorem id %r" % tid)
    return verdicts


def _merge_component_verdicts(theorem, subs, arr):
    status = _aggregate(v.status for v in subs)
    witnesses, notes = [], []
    for comp, v in zip(arr.labels, subs):
        notes.append("along %s: %s" % (comp, v.status))
        if v.status == "fails":
            witnesses.extend(v.witnesses)
    if status != "fails":
        for v in subs:
            if v.witnesses:
                witnesses = v.witnesses
                break
    return Verdict(theorem, status, witnesses=witnesses, notes=notes)


def run_presentation_suite(pres: GroupPresentation, locus=None,
                           theorems=None, seed=DEFAULT_SEED) -> list:
    wanted = THEOREM_IDS if theorems is None else tuple(theorems)
    if locus is None:
        locus = alexander_support_deg1(pres)
    verdicts = []
    for tid in wanted:
        if tid == "support_oracle":
            verdicts.append(check_support_oracle(locus, pres, seed=seed))
        else:
            verdicts.append(Verdict(tid, "not_applicable",
                                    notes=["presentation-only input"]))
    return verdicts
