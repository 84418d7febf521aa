"""Command-line front end.

Every command except ``example`` reads a diagram file (``-`` for stdin),
runs one pipeline and prints a report.  With ``--json`` the report is a
single JSON object; its keys are documented in README.md.

Exit codes: 0 success, 1 refutation, 2 usage or schema error,
3 inconclusive or out of fuel.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import comparison, diagram, examples
from .colimit import colimit_presentation
from .diagram import check_strictness, validate_diagram
from .errors import FuelExhausted, FunctorError, GpdError, UnverifiedDiagram
from .finite import FiniteGroup, finite_groupoid_from_json, one_object
from .group import abelianization, tietze_simplify, vertex_group
from .groupoid import connected_components
from .setcolim import check_maincor, check_theorem_main
from .twocolim import two_colimit_presentation

OK, REFUTED, USAGE, INCONCLUSIVE = 0, 1, 2, 3

VERDICT_EXIT = {
    comparison.GUARANTEED: OK,
    comparison.AGREE: OK,
    comparison.DISTINGUISHED: REFUTED,
    comparison.INCONCLUSIVE: INCONCLUSIVE,
}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_target(path: str | None):
    if path is None:
        return one_object(FiniteGroup.cyclic(2))
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return finite_groupoid_from_json(data, name=path)


def _groupoid_summary(g) -> dict:
    comps = []
    for comp in connected_components(g):
        vg = tietze_simplify(vertex_group(g, comp[0]))
        ab = abelianization(vg)
        comps.append({
            "base": comp[0],
            "objects": len(comp),
            "vertex_group": str(vg),
            "vertex_group_generators": len(vg.generators),
            "vertex_group_relators": len(vg.relators),
            "abelianization": ab.as_tuple(),
            "description": _describe_group(vg, ab),
        })
    return {
        "objects": len(g.objects),
        "generators": len(g.generators),
        "relations": len(g.relations),
        "components": comps,
    }


def _describe_group(vg, ab) -> str:
    if not vg.relators:
        return "trivial" if not vg.generators else f"free rank {len(vg.generators)}"
    return f"abelianization {ab}"


def _strictness_fields(d) -> dict:
    rep = d._strictness
    if rep is None:
        return {"fuel_spent": 0, "unknowns": []}
    return {"fuel_spent": rep.fuel_spent,
            "unknowns": [f"{'/'.join(map(str, u.diamond))}: {u.detail}" for u in rep.unknowns]}


# -- commands -----------------------------------------------------------------------

def cmd_validate(d, args):
    warnings = validate_diagram(d, args.fuel, args.strict_validation)
    rep = check_strictness(d, args.fuel)
    failures = [f"{'/'.join(map(str, f.diamond))}: {f.kind}: {f.detail}" for f in rep.failures]
    report = {"command": "validate", "n": d.n, "view": d.view.describe(), "elements": len(d.view),
              "warnings": warnings, "strict": rep.verified, "failures": failures, **_strictness_fields(d)}
    if failures:
        code = REFUTED
    elif rep.unknowns or (warnings and args.strict_validation):
        code = INCONCLUSIVE
    else:
        code = OK
    lines = [f"diagram over {d.view.describe()}: {len(d.view)} elements"]
    lines += [f"warning: {w}" for w in warnings]
    lines += [f"strictness failure: {f}" for f in failures]
    lines += [f"undecided: {u}" for u in report["unknowns"]]
    lines.append("strict: yes" if rep.verified else "strict: no")
    return code, report, lines


def _presentation_report(name, g, d):
    summary = _groupoid_summary(g)
    report = {"command": name, **summary, **_strictness_fields(d)}
    lines = [f"{name}: {summary['objects']} objects, {summary['generators']} generators, "
             f"{summary['relations']} relations, {len(summary['components'])} component(s)"]
    for c in summary["components"]:
        lines.append(f"  component of {c['base']} ({c['objects']} objects): vertex group {c['vertex_group']}"
                     f" [{c['description']}]")
    return OK, report, lines


def cmd_colim(d, args):
    return _presentation_report("colim", colimit_presentation(d, force=args.force).groupoid, d)


def cmd_twocolim(d, args):
    return _presentation_report("twocolim", two_colimit_presentation(d, force=args.force).groupoid, d)


def _condition_json(c):
    return {"name": c.name(), "labels": c.labels, "holds": c.holds,
            "witness": list(c.witness) if c.witness else None,
            "image": c.image}


def cmd_conditions(d, args):
    reports = (check_theorem_main if args.full else check_maincor)(d, force=args.force)
    battery = "theorem" if args.full else "corollary"
    report = {"command": "conditions", "battery": battery, "size": len(reports),
              "all_hold": all(c.holds for c in reports),
              "conditions": [_condition_json(c) for c in reports], **_strictness_fields(d)}
    lines = [f"{battery} battery: {len(reports)} condition(s)"]
    for c in reports:
        status = "holds" if c.holds else f"fails: {c.witness[0]} and {c.witness[1]} both map to {c.image}"
        lines.append(f"  {c.name()} ({', '.join(c.labels)}): {status}")
    return (OK if report["all_hold"] else REFUTED), report, lines


def cmd_compare(d, args):
    rep = comparison.equivalence_report(d, args.fuel, args.full, args.force)
    report = {"command": "compare", **rep.as_dict()}
    lines = [f"verdict: {rep.verdict}", f"  {rep.detail}"]
    if rep.verdict != comparison.INCONCLUSIVE or rep.colim_invariants is not None:
        colim = _groupoid_summary(colimit_presentation(d, force=True).groupoid)
        two = _groupoid_summary(two_colimit_presentation(d, force=True).groupoid)
        report["colim_vertex_groups"] = [c["description"] for c in colim["components"]]
        report["twocolim_vertex_groups"] = [c["description"] for c in two["components"]]
        for label, s in (("colim", colim), ("2colim", two)):
            groups = "; ".join(f"{c['vertex_group']} [{c['description']}]" for c in s["components"])
            lines.append(f"  {label}: {s['objects']} objects, {len(s['components'])} component(s), "
                         f"vertex groups {groups}")
    for u in rep.unknowns:
        lines.append(f"  undecided: {u}")
    lines.append(f"  fuel spent: {rep.fuel_spent}")
    return VERDICT_EXIT[rep.verdict], report, lines


def cmd_truncate(d, args):
    targets = [_load_target(args.target)] if args.target else []
    rep = comparison.truncation_check(d, targets, args.fuel, args.force)
    report = {"command": "truncate-check", "agree": rep.agree, "full": rep.full.as_dict(),
              "truncated": rep.truncated.as_dict(),
              "differences": [comparison.difference_to_json(x) for x in rep.differences],
              "descent_classes": [list(x) for x in rep.descent_classes], **_strictness_fields(d)}
    lines = [f"truncation to subsets of size >= {d.n - 3}: {'agree' if rep.agree else 'DIFFER'}",
             f"  full:      {rep.full.as_dict()}", f"  truncated: {rep.truncated.as_dict()}"]
    lines += [f"  descent classes into {name}: {a} vs {b}" for name, a, b in rep.descent_classes]
    return (OK if rep.agree else REFUTED), report, lines


def cmd_gamma_k(d, args):
    h = _load_target(args.target)
    rep = comparison.gamma_k_properties(d, h, args.k, args.fuel, args.force)
    report = {"command": "gamma-k", "n": rep.n, "k": rep.k, "target": h.name, "faithful": rep.faithful,
              "full": rep.full, "essentially_surjective": rep.essentially_surjective,
              "expected": rep.expected, "consistent": rep.consistent, "classes": rep.classes,
              "truncated_classes": rep.truncated_classes, "counterexamples": rep.counterexamples,
              **_strictness_fields(d)}
    lines = [f"gamma_{rep.k} into {h.name}: faithful={rep.faithful} full={rep.full} "
             f"essentially surjective={rep.essentially_surjective}",
             f"  classes {rep.classes} -> {rep.truncated_classes}; expected {rep.expected}"]
    lines += [f"  note: {c}" for c in rep.counterexamples]
    lines.append("consistent with the trichotomy" if rep.consistent else "TRICHOTOMY VIOLATED")
    return (OK if rep.consistent else REFUTED), report, lines


def cmd_oracle(d, args):
    h = _load_target(args.target)
    rep = comparison.universal_property_report(d, h, args.fuel, args.force)
    report = {"command": "oracle", **rep.as_dict(), **_strictness_fields(d)}
    lines = [f"target {h.name}",
             f"  functors colim -> H: {rep.colim_functors}; strict cones: {rep.strict_cones}",
             f"  Hom(2colim, H): {rep.twocolim_classes} classes, {rep.twocolim_morphisms} morphisms",
             f"  descent data:   {rep.descent_classes} classes, {rep.descent_morphisms} morphisms",
             f"  K/J round-trip failures: {rep.round_trip_failures}",
             "oracle: ok" if rep.ok else "oracle: MISMATCH"]
    return (OK if rep.ok else REFUTED), report, lines


def cmd_injectivize(d, args):
    out = comparison.injectivize_diagram_b2(d)
    return OK, diagram.to_json(out), None


COMMANDS = {
    "validate": cmd_validate,
    "colim": cmd_colim,
    "twocolim": cmd_twocolim,
    "conditions": cmd_conditions,
    "compare": cmd_compare,
    "truncate-check": cmd_truncate,
    "gamma-k": cmd_gamma_k,
    "oracle": cmd_oracle,
    "injectivize": cmd_injectivize,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=10000, help="step budget for bounded searches")
    common.add_argument("--json", action="store_true", help="print a machine-readable report")
    common.add_argument("--strict-validation", action="store_true",
                        help="treat undecided relation checks as errors")
    common.add_argument("--force", action="store_true",
                        help="proceed even if strictness could not be verified")

    parser = argparse.ArgumentParser(prog="gpdcolim",
                                     description="Colimits and 2-colimits of diagrams of presented groupoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="diagram JSON file, or - for stdin")
        return p

    with_file("validate", "check schema, functors and strictness")
    with_file("colim", "colimit presentation and vertex groups")
    with_file("twocolim", "2-colimit presentation and vertex groups")
    p = with_file("conditions", "run the injectivity condition battery")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--maincor", action="store_true", help="the reduced battery (default)")
    g.add_argument("--full", action="store_true", help="the full battery")
    p = with_file("compare", "certify or refute colim ~ 2colim")
    p.add_argument("--full", action="store_true", help="use the full condition battery")
    p = with_file("truncate-check", "compare the 2-colimit with its truncation to large subsets")
    p.add_argument("--target", help="finite target JSON; also compares descent class counts")
    p = with_file("gamma-k", "check faithful/full/essentially surjective for gamma_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--target", help="finite target JSON (default: Z/2 on one object)")
    p = with_file("oracle", "universal-property counts into a finite target")
    p.add_argument("--target", required=True, help="finite target JSON")
    with_file("injectivize", "replace the sides of a diagram over b(2) by mapping cylinders")
    p = sub.add_parser("example", parents=[common], help="print a built-in diagram")
    p.add_argument("name", choices=sorted(examples.BUILTIN))
    return parser


def _emit(report, lines, as_json: bool, out) -> None:
    if as_json or lines is None:
        out.write(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.fuel <= 0:
        err.write("gpdcolim: --fuel must be positive\n")
        return USAGE
    if getattr(args, "k", None) is not None and args.k < 0:
        err.write("gpdcolim: --k must be non-negative\n")
        return USAGE

    if args.command == "example":
        out.write(diagram.save(examples.BUILTIN[args.name]()) + "\n")
        return OK

    d = None
    try:
        d = diagram.load(_read(args.file))
        code, report, lines = COMMANDS[args.command](d, args)
    except UsageError as exc:
        err.write(f"gpdcolim: {exc}\n")
        return USAGE
    except UnverifiedDiagram as exc:
        err.write(f"gpdcolim: {exc}\n")
        rep = d._strictness if d is not None else None
        return INCONCLUSIVE if rep is not None and not rep.failures else USAGE
    except FuelExhausted as exc:
        report = {"command": args.command, "verdict": comparison.INCONCLUSIVE, "reason": str(exc),
                  "fuel_spent": exc.spent, "unknowns": []}
        _emit(report, [f"inconclusive: {exc}"], args.json, out)
        return INCONCLUSIVE
    except FunctorError as exc:
        err.write(f"gpdcolim: {exc}\n")
        return REFUTED if args.command == "validate" else USAGE
    except GpdError as exc:
        err.write(f"gpdcolim: {exc}\n")
        return USAGE
    _emit(report, lines, args.json, out)
    return code


def main() -> None:
    sys.exit(run())
