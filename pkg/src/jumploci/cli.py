"""Command line interface: invariants, theorem checks, corpus runs.

Exit codes: 0 success, 1 at least one verdict failed, 2 usage or parse error.
The sampling seed defaults to 0x5EED and can be overridden with --seed or the
JUMPLOCI_SEED environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources

from . import DEFAULT_SEED, __version__
from .alexander import GroupPresentation, alexander_support_deg1
from .arrangements import InputError
from .formats import (arrangement_invariants, assemble_report, build_model,
                      parse_input, presentation_invariants, serialize_report)
from .theorems import (THEOREM_IDS, ArrangementModel, run_arrangement_suite,
                       run_presentation_suite)

EXIT_OK = 0
EXIT_VERDICT_FAILED = 1
EXIT_USAGE = 2


def _seed_from(args):
    env = os.environ.get("JUMPLOCI_SEED")
    if args.seed is not None:
        return args.seed
    if env is not None:
        try:
            return int(env, 0)
        except ValueError:
            raise InputError("JUMPLOCI_SEED=%r is not an integer" % env)
    return DEFAULT_SEED


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _analyze(path, seed):
    document = parse_input(path)
    model = build_model(document, seed=seed)
    if document.kind == "arrangement":
        invariants = arrangement_invariants(model)
    else:
        locus = alexander_support_deg1(model)
        invariants = presentation_invariants(model, locus)
    return document, model, invariants


def cmd_invariants(args):
    seed = _seed_from(args)
    document, model, invariants = _analyze(args.input, seed)
    report = assemble_report(document, invariants, seed=seed,
                             options={"max_torsion_order":
                                      args.max_torsion_order,
                                      "degree": args.degree})
    _emit(serialize_report(report), args.output)
    return EXIT_OK


def cmd_check(args):
    seed = _seed_from(args)
    theorems = args.theorem or None
    if theorems:
        for tid in theorems:
            if tid not in THEOREM_IDS:
                raise InputError("unknown theorem id %r (choose from %s)"
                                 % (tid, ", ".join(THEOREM_IDS)))
    document, model, invariants = _analyze(args.input, seed)
    if isinstance(model, ArrangementModel):
        verdicts = run_arrangement_suite(model, theorems=theorems,
                                         k=args.degree)
    else:
        verdicts = run_presentation_suite(model, theorems=theorems, seed=seed)
    report = assemble_report(document, invariants, verdicts=verdicts,
                             seed=seed,
                             options={"max_torsion_order":
                                      args.max_torsion_order,
                                      "degree": args.degree})
    _emit(serialize_report(report), args.output)
    failed = any(v.status == "fails" for v in verdicts)
    return EXIT_VERDICT_FAILED if failed else EXIT_OK


def corpus_paths(directory=None):
    if directory:
        names = sorted(os.listdir(directory))
        return [os.path.join(directory, n) for n in names
                if n.endswith(".json")]
    pkg = resources.files("jumploci") / "corpus"
    return sorted(str(p) for p in pkg.iterdir() if p.name.endswith(".json"))


def cmd_corpus(args):
    seed = _seed_from(args)
    paths = corpus_paths(args.dir)
    if not paths:
        raise InputError("no corpus inputs found")
    any_failed = False
    for path in paths:
        document, model, _ = _analyze(path, seed)
        if isinstance(model, ArrangementModel):
            verdicts = run_arrangement_suite(model, k=args.degree)
        else:
            verdicts = run_presentation_suite(model, seed=seed)
        worst = "holds"
        for v in verdicts:
            if v.status == "fails":
                worst = "fails"
                break
            if v.status == "sampled_holds" and worst == "holds":
                worst = "sampled_holds"
        name = document.name or os.path.basename(path)
        print("%-28s %s" % (name, worst))
        for v in verdicts:
            print("    %-26s %s" % (v.theorem, v.status))
        if worst == "fails":
            any_failed = True
    return EXIT_VERDICT_FAILED if any_failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jumploci",
        description="Exact degree-one jump loci of arrangement and curve "
                    "complements, with theorem checking.")
    parser.add_argument("--version", action="version",
                        version="jumploci " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help="sampling seed (default 0x5EED or JUMPLOCI_SEED)")
    common.add_argument("--max-torsion-order", type=int, default=12,
                        help="torsion sampling order bound (default 12)")
    common.add_argument("--degree", type=int, default=1,
                        help="homological degree bound k (default 1)")
    common.add_argument("--output", default=None, help="write the report here")

    p_inv = sub.add_parser("invariants", parents=[common],
                           help="compute lattice, Euler, loci and resonance "
                                "invariants")
    p_inv.add_argument("input")
    p_inv.set_defaults(func=cmd_invariants)

    p_chk = sub.add_parser("check", parents=[common],
                           help="run the theorem checkers")
    p_chk.add_argument("input")
    p_chk.add_argument("--theorem", action="append", default=None,
                       metavar="ID",
                       help="restrict to one checker (repeatable); one of: "
                            + ", ".join(THEOREM_IDS))
    p_chk.set_defaults(func=cmd_check)

    p_cor = sub.add_parser("corpus", help="operate on the bundled corpus")
    cor_sub = p_cor.add_subparsers(dest="corpus_command", required=True)
    p_run = cor_sub.add_parser("run", parents=[common],
                               help="run the checkers on every corpus input")
    p_run.add_argument("--dir", default=None,
                       help="corpus directory (default: bundled)")
    p_run.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
