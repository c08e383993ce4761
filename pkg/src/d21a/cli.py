"""Command-line front end.

Usage examples::

    d21a construct --eval a=2
    d21a grading --diagram I --crosses 2,3
    d21a classify
    d21a prolong --diagram IV --crosses 1,2,3 --mode m
    d21a spencer --diagram IV --crosses 1,2,3 --json
    d21a realize --case p1I
    d21a reductions --check-all
    d21a verify --all

Exit codes: 0 when everything checked passes, 1 on a mathematical mismatch
(the first witness is printed), 2 on invalid options.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import acceptance
from .liesuper import AlgebraError, check_jacobi, d21a, structure_parameters
from .prolong import prolong
from .realizations import (
    diamond_generating_functions,
    flag_fields,
    p1_span,
    p12_span,
)
from .reductions import check_all as reductions_check_all
from .roots import (
    ParabolicSpec,
    classify_parabolics,
    graded_algebra,
    grading,
    render_diagram,
)
from .spencer import cohomology, h1_prolongation_consistency
from .superfields import M14, M24, M34_DIAMOND, span_closure, verify_correspondence

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

REALIZATIONS = ("p1I", "p12I", "p123IV", "p123I")


class UsageError(Exception):
    pass


class Mismatch(Exception):
    """A computed result disagrees with what was asserted; carries a witness."""


@dataclass
class Report:
    verb: str
    payload: dict
    locus: list[str] = field(default_factory=list)
    seconds: float = 0.0
    ok: bool = True

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))


# ---------------------------------------------------------------------------
# option parsing helpers
# ---------------------------------------------------------------------------


def parse_crosses(text: str) -> tuple[int, ...]:
    try:
        crosses = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"bad cross list {text!r}") from exc
    if not crosses or any(c not in (1, 2, 3) for c in crosses) or len(set(crosses)) != len(crosses):
        raise UsageError(f"crosses must be distinct nodes from 1..3, got {text!r}")
    return crosses


def parse_eval(text: str | None) -> dict[str, Fraction] | None:
    if text is None:
        return None
    name, sep, value = text.partition("=")
    if not sep or name.strip() != "a":
        raise UsageError(f"--eval expects a=p/q, got {text!r}")
    try:
        a = Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {value!r} as a rational number") from exc
    if a in (0, -1):
        raise UsageError("a = 0 and a = -1 are degenerate; choose another value")
    return {"a": a}


def _spec(args) -> ParabolicSpec:
    if args.diagram is None or args.crosses is None:
        raise UsageError("--diagram and --crosses are required")
    return ParabolicSpec(args.diagram, parse_crosses(args.crosses))


def _galg(args):
    spec = _spec(args)
    point = parse_eval(args.eval)
    alg = d21a(point["a"]) if point else None
    return spec, graded_algebra(spec, alg)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_construct(args) -> Report:
    point = parse_eval(args.eval)
    alg = d21a(point["a"]) if point else d21a()
    bad = check_jacobi(alg)
    payload = {
        "sdim": list(alg.sdim()),
        "basis": alg.names(),
        "s": [str(x) for x in structure_parameters(alg)],
        "jacobi_violations": len(bad),
    }
    if bad:
        raise Mismatch(f"super-Jacobi fails on {bad[0]}")
    return Report("construct", payload)


def cmd_grading(args) -> Report:
    spec = _spec(args)
    rep = grading(spec)
    payload = rep.to_dict()
    payload["diagram"] = render_diagram(spec.diagram, spec.crosses)
    return Report("grading", payload)


def cmd_classify(args) -> Report:
    cl = classify_parabolics()
    classes = []
    for members in cl.by_signature:
        rep = cl.reports[members[0]]
        classes.append({"members": [str(s) for s in members], "depth": rep.depth,
                        "dims": [list(d) for d in rep.dims()], "g0": rep.g0.label})
    if not cl.agree():
        raise Mismatch("signature and orbit partitions differ")
    return Report("classify", {"classes": classes, "count": len(classes)})


def cmd_prolong(args) -> Report:
    spec, galg = _galg(args)
    if args.mode == "gk" and args.k is None:
        raise UsageError("--mode gk needs --k")
    rep = prolong(galg, args.mode, cutoff=args.cutoff, k=args.k, spec_label=spec.label)
    return Report("prolong", rep.to_dict(), rep.locus.names())


def cmd_spencer(args) -> Report:
    spec = _spec(args)
    point = parse_eval(args.eval)
    table = cohomology(spec, j_max=args.max_j, symbolic=point is None, point=point, seed=args.seed)
    payload = table.to_dict()
    payload["table"] = table.render()
    cons = h1_prolongation_consistency(table)
    payload["h1_prediction"] = cons.predicted
    if not table.d_squared_zero:
        raise Mismatch(f"{spec}: d o d != 0")
    return Report("spencer", payload, table.locus.names())


def cmd_realize(args) -> Report:
    case = args.case or "p1I"
    if case not in REALIZATIONS:
        raise UsageError(f"realize --case must be one of {', '.join(REALIZATIONS)}")
    if case == "p1I":
        r = p1_span()
        cl = span_closure(r.elements, M14, r.names)
    elif case == "p12I":
        r = p12_span()
        cl = span_closure(r.elements, M24, r.names)
    elif case == "p123IV":
        r = diamond_generating_functions()
        cl = span_closure(r.elements, M34_DIAMOND, r.names)
    else:
        r = flag_fields(flip_signs=True)
        cl = span_closure(r.elements, None, r.names, degrees=r.levels)
    corr = verify_correspondence(cl, d21a())
    payload = {"case": case, "generators": len(r.elements), "sdim": list(cl.sdim),
               "trace_free": corr.trace_free, "parameter_orbit": [str(x) for x in corr.orbit]}
    if cl.sdim != (9, 8):
        raise Mismatch(f"{case}: closure has sdim {cl.sdim}, expected (9, 8)")
    return Report("realize", payload)


def cmd_reductions(args) -> Report:
    cases = ("p2I", "p23I") if args.check_all or args.case is None else (args.case,)
    for case in cases:
        if case not in ("p2I", "p23I"):
            raise UsageError("reductions --case must be p2I or p23I")
    results = {case: reductions_check_all(case) for case in cases}
    report = Report("reductions", {"checks": results})
    for case, checks in results.items():
        failed = [k for k, v in checks.items() if not v]
        if failed:
            report.ok = False
            report.payload["witness"] = f"{case}: {failed[0]}"
    return report


def cmd_verify(args) -> Report:
    if args.all:
        numbers = list(acceptance.CRITERIA)
    elif args.criterion:
        numbers = args.criterion
        bad = [n for n in numbers if n not in acceptance.CRITERIA]
        if bad:
            raise UsageError(f"unknown criterion {bad[0]}; choose from 1..12")
    else:
        raise UsageError("verify needs --all or --criterion N")
    results = acceptance.run_all(numbers, workers=args.workers)
    payload = {"results": [r.to_dict() for r in results],
               "lines": [r.line() for r in results]}
    report = Report("verify", payload, ok=all(r.ok for r in results))
    if not report.ok:
        first = next(r for r in results if not r.ok)
        payload["witness"] = f"criterion {first.number}: {first.details[0] if first.details else ''}"
    return report


VERBS = {
    "construct": cmd_construct,
    "grading": cmd_grading,
    "classify": cmd_classify,
    "prolong": cmd_prolong,
    "spencer": cmd_spencer,
    "realize": cmd_realize,
    "reductions": cmd_reductions,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for random evaluation points")
    common.add_argument("--eval", metavar="a=p/q", help="specialize the parameter a")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--diagram", choices=("I", "II", "III", "IV"))
    spec.add_argument("--crosses", metavar="i[,j[,k]]")

    parser = argparse.ArgumentParser(prog="d21a", description="Computations with D(2,1;a) and its parabolics.")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("construct", parents=[common], help="build the algebra and check Jacobi")
    sub.add_parser("grading", parents=[common, spec], help="graded decomposition of a parabolic")
    sub.add_parser("classify", parents=[common], help="classify the 28 parabolics")
    p = sub.add_parser("prolong", parents=[common, spec], help="Tanaka-Weisfeiler prolongation")
    p.add_argument("--mode", choices=("m", "m-g0", "gk"), default="m")
    p.add_argument("--k", type=int)
    p.add_argument("--cutoff", type=int, default=6)
    p = sub.add_parser("spencer", parents=[common, spec], help="Spencer cohomology H^{i,j}, j <= max-j")
    p.add_argument("--max-j", type=int, default=2, choices=(0, 1, 2))
    p = sub.add_parser("realize", parents=[common], help="close a realization and identify it")
    p.add_argument("--case", choices=REALIZATIONS)
    p = sub.add_parser("reductions", parents=[common], help="reduction checks for p2I and p23I")
    p.add_argument("--case", choices=("p2I", "p23I"))
    p.add_argument("--check-all", action="store_true")
    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--all", action="store_true")
    p.add_argument("--criterion", type=int, action="append")
    p.add_argument("--workers", type=int, default=1)
    return parser


def dispatch(args: argparse.Namespace) -> Report:
    t0 = time.time()
    report = VERBS[args.verb](args)
    report.seconds = round(time.time() - t0, 4)
    return report


def _print_human(report: Report) -> None:
    p = report.payload
    if report.verb == "verify":
        for line, res in zip(p["lines"], p["results"]):
            print(line)
            if not res["ok"]:
                for d in res["details"]:
                    print(f"    {d}")
    elif report.verb == "spencer":
        print(p["table"])
        print(f"H^1 implies: {p['h1_prediction']}")
    elif report.verb == "classify":
        for c in p["classes"]:
            dims = ", ".join(f"{a}|{b}" for a, b in c["dims"])
            print(f"nu={c['depth']}  ({dims})  g0={c['g0']}  {' '.join(c['members'])}")
    elif report.verb == "grading":
        print(p["diagram"])
        for k, lvl in p["levels"].items():
            print(f"g_{k}: {lvl['sdim'][0]}|{lvl['sdim'][1]}  {' '.join(lvl['basis'])}")
        print(f"g0 = {p['g0']['label']}")
    elif report.verb == "prolong":
        for j, (e, o) in p["levels"].items():
            print(f"pr_{j}: {e}|{o}")
        print(p["termination"])
    elif report.verb == "reductions":
        for case, checks in p["checks"].items():
            for name, ok in checks.items():
                print(f"{'PASS' if ok else 'FAIL'} {case}: {name}")
    else:
        print(json.dumps(p, indent=2, sort_keys=True))
    if report.locus:
        print(f"valid for a outside {{0, -1}} and the zeros of: {', '.join(report.locus)}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report = dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Mismatch, AlgebraError) as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.json:
        print(report.to_json())
    else:
        _print_human(report)
    if not report.ok:
        print(f"mismatch: {report.payload.get('witness', '')}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
