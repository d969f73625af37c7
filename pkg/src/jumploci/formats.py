"""Input documents and reports: one JSON-compatible structured format.

Rationals travel as strings ("p/q" or an integer literal) to stay exact;
reports serialize deterministically (sorted keys, canonical rationals).
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import DEFAULT_SEED, __version__
from .alexander import (GroupPresentation, WiringDiagram,
                        alexander_support_deg1, linking_specialization,
                        randell_presentation)
from .arrangements import Arrangement, InputError, chart_is_transversal
from .resonance import known_global_resonance_components
from .theorems import ArrangementModel


def parse_rational(value, path):
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise InputError("%s: expected a rational 'p/q' or integer, got %r"
                     % (path, value))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


class InputDocument:
    """A validated input: an arrangement, a wiring diagram, or a presentation."""

    def __init__(self, kind, payload, name=None, declarations=None, echo=None):
        self.kind = kind
        self.payload = payload
        self.name = name
        self.declarations = declarations or {}
        self.echo = echo

    @property
    def arrangement(self):
        assert self.kind == "arrangement"
        return self.payload


def _require(doc, key, path, types=None):
    if key not in doc:
        raise InputError("%s/%s: missing required field" % (path, key))
    value = doc[key]
    if types is not None and not isinstance(value, types):
        raise InputError("%s/%s: wrong type %s" % (path, key,
                                                   type(value).__name__))
    return value


def parse_input_dict(doc, path=""):
    if not isinstance(doc, dict):
        raise InputError("%s: document must be an object" % (path or "/"))
    kind = _require(doc, "kind", path, str)
    name = doc.get("name")
    if kind == "arrangement":
        return _parse_arrangement(doc, path)
    if kind == "wiring":
        return _parse_wiring(doc, path)
    if kind == "presentation":
        return _parse_presentation(doc, path)
    raise InputError("%s/kind: unknown kind %r" % (path, kind))


def _parse_arrangement(doc, path):
    coords = doc.get("coordinates", "projective")
    if coords not in ("affine", "projective"):
        raise InputError("%s/coordinates: must be 'affine' or 'projective'"
                         % path)
    rows = _require(doc, "hyperplanes", path, list)
    if not rows:
        raise InputError("%s/hyperplanes: empty arrangement" % path)
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError("%s/hyperplanes/%d: expected a list" % (path, i))
        parsed.append([parse_rational(x, "%s/hyperplanes/%d/%d" % (path, i, j))
                       for j, x in enumerate(row)])
    lengths = {len(r) for r in parsed}
    if len(lengths) != 1:
        raise InputError("%s/hyperplanes: inconsistent coefficient counts"
                         % path)
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != len(parsed):
            raise InputError("%s/labels: need one label per hyperplane" % path)
    ambient = doc.get("ambient_dim")
    try:
        if coords == "affine":
            arr = Arrangement.from_affine(parsed, labels=labels)
        else:
            n = len(parsed[0]) - 1
            arr = Arrangement(n, parsed, labels=labels)
    except InputError as exc:
        raise InputError("%s/hyperplanes: %s" % (path, exc)) from None
    if ambient is not None and int(ambient) != arr.ambient_dim:
        raise InputError("%s/ambient_dim: %r does not match %d coefficients"
                         % (path, ambient, arr.ambient_dim + 1))
    infinity = doc.get("infinity")
    infinity_drop = None
    if coords == "projective":
        if infinity is not None:
            if isinstance(infinity, int):
                if not 1 <= infinity <= arr.num_hyperplanes:
                    raise InputError("%s/infinity: index out of range" % path)
                infinity_drop = infinity
            elif isinstance(infinity, str) and infinity in arr.labels:
                infinity_drop = arr.labels.index(infinity) + 1
            else:
                raise InputError("%s/infinity: unknown component %r"
                                 % (path, infinity))
        else:
            infinity_drop = arr.num_hyperplanes
    elif infinity is not None:
        raise InputError("%s/infinity: only for projective coordinates" % path)
    declared = []
    for i, comp in enumerate(doc.get("declared_resonance_components", [])):
        if not isinstance(comp, list):
            raise InputError("%s/declared_resonance_components/%d: "
                             "expected a list of equations" % (path, i))
        rows_i = []
        for j, row in enumerate(comp):
            if not isinstance(row, list) or len(row) != arr.num_hyperplanes:
                raise InputError(
                    "%s/declared_resonance_components/%d/%d: expected %d "
                    "coefficients" % (path, i, j, arr.num_hyperplanes))
            rows_i.append([int(parse_rational(
                x, "%s/declared_resonance_components/%d/%d" % (path, i, j)))
                for x in row])
        declared.append(rows_i)
    return InputDocument(
        "arrangement", arr, name=doc.get("name"),
        declarations={"coordinates": coords,
                      "infinity_drop": infinity_drop,
                      "declared_resonance": declared},
        echo=doc)


def _parse_wiring(doc, path):
    num = _require(doc, "num_wires", path, int)
    crossings = _require(doc, "crossings", path, list)
    try:
        wiring = WiringDiagram(num, crossings)
    except InputError as exc:
        raise InputError("%s/crossings: %s" % (path, exc)) from None
    comp = doc.get("generator_component")
    return InputDocument("wiring", wiring, name=doc.get("name"),
                         declarations={"generator_component": comp}, echo=doc)


def _parse_presentation(doc, path):
    num = _require(doc, "num_generators", path, int)
    relators = _require(doc, "relators", path, list)
    comp = doc.get("generator_component")
    from .alexander import PresentationError
    try:
        pres = GroupPresentation(num, relators, generator_component=comp)
    except PresentationError as exc:
        raise InputError("%s/relators: %s" % (path, exc)) from None
    return InputDocument("presentation", pres, name=doc.get("name"), echo=doc)


def parse_input(path_or_file):
    if hasattr(path_or_file, "read"):
        text = path_or_file.read()
        src = getattr(path_or_file, "name", "<stream>")
    else:
        with open(path_or_file, "r", encoding="utf-8") as fh:
            text = fh.read()
        src = str(path_or_file)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s: invalid JSON: %s" % (src, exc)) from None
    return parse_input_dict(doc)


# -- model construction --------------------------------------------------------


def build_model(document: InputDocument, seed=DEFAULT_SEED):
    """ArrangementModel for arrangement inputs, else the presentation."""
    if document.kind == "arrangement":
        arr = document.arrangement
        dec = document.declarations
        if dec["coordinates"] == "affine":
            return ArrangementModel(
                arr, chart=(1,) + (0,) * arr.ambient_dim,
                declared_resonance=dec["declared_resonance"], seed=seed)
        return ArrangementModel(
            arr, infinity_drop=dec["infinity_drop"],
            declared_resonance=dec["declared_resonance"], seed=seed)
    if document.kind == "wiring":
        return randell_presentation(
            document.payload,
            generator_component=document.declarations.get(
                "generator_component"))
    return document.payload


# -- report assembly -------------------------------------------------------------


def _locus_section(locus):
    section = {
        "status": locus.status,
        "num_ideal_generators": len(locus.ideal_gens),
    }
    if locus.components is None:
        section["components"] = None
    else:
        section["components"] = [
            {"equations": t.equations_str(), "dim": t.dim}
            for t in locus.components]
    return section


def _specialization_section(locus):
    spec = linking_specialization(locus)
    out = {"non_torsion_diagonal": spec.non_torsion, "method": spec.via}
    out["polynomial"] = str(spec.poly) if spec.poly is not None else None
    if spec.root_angles is not None:
        out["root_angles"] = [format_rational(a) for a in spec.root_angles]
        out["root_orders"] = spec.root_orders()
    return out


def presentation_invariants(pres: GroupPresentation, locus=None):
    if locus is None:
        locus = alexander_support_deg1(pres)
    return {
        "kind": "presentation",
        "num_generators": pres.num_generators,
        "num_relators": len(pres.relators),
        "num_components": pres.num_components,
        "complex_euler_characteristic": pres.euler_characteristic(),
        "degree1_locus": _locus_section(locus),
        "linking_specialization": _specialization_section(locus),
    }


def arrangement_invariants(model: ArrangementModel):
    arr = model.arrangement
    n = arr.ambient_dim
    lattice = [{"closure": sorted(arr.labels[i] for i in f.closure),
                "rank": f.rank, "mobius": f.mobius}
               for f in arr.lattice() if f.rank > 0]
    chi = arr.euler_projective_complement()
    inv = {
        "kind": "arrangement",
        "ambient_dim": n,
        "num_components": arr.num_hyperplanes,
        "essential": arr.is_essential(),
        "lattice": lattice,
        "poincare_polynomial": arr.poincare_polynomial(),
        "deconed_poincare_polynomial": arr.deconed_poincare(),
        "chi_projective_complement": chi,
        "chi_milnor_fiber": arr.milnor_fiber_euler(),
        "torus_variables": [arr.labels[k - 1] for k in model.kept],
        "degree1_locus": _locus_section(model.locus),
        "linking_specialization": _specialization_section(model.locus),
        "resonance_components_known": [
            c.equations_str()
            for c in known_global_resonance_components(
                arr, model.declared_resonance)],
    }
    if model.infinity_drop is None:
        combined = Arrangement(
            n, list(arr.forms) + [model.chart],
            labels=list(arr.labels) + ["(infinity)"])
        chi_affine = combined.euler_projective_complement()
        inv["chart_transversal"] = chart_is_transversal(arr, model.chart)
        inv["chi_affine_complement"] = chi_affine
        inv["mu_spheres"] = ((-1) ** n) * chi_affine
    else:
        inv["infinity_component"] = arr.labels[model.infinity_drop - 1]
    return inv


def assemble_report(document, invariants, verdicts=None, seed=DEFAULT_SEED,
                    options=None):
    report = {
        "tool": {"name": "jumploci", "version": __version__},
        "seed": seed,
        "input": document.echo,
        "invariants": invariants,
    }
    if options:
        report["options"] = options
    if verdicts is not None:
        report["verdicts"] = [v.as_dict() for v in verdicts]
    return report


def serialize_report(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
