"""Command line entry point: ``tropnet <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 internal error.
Set ``TROPNET_STEP_BUDGET`` to change the basis completion budget.
"""

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra.groebner import DEFAULT_STEP_BUDGET, BudgetExceeded
from .algebra.mat3 import degeneration_32, degeneration_T
from .algebra.rational import format_rational, parse_rational
from .algebra.serialize import mat3_from_json
from .latin import LatinSquare, UnsupportedOrderError, enumerate_ols
from .nets import (
    AbstractNet,
    RealizedNet,
    net_from_ols,
    verify_abstract_net,
    verify_realized_net,
)
from .projective import ProjLine, ProjPoint, coords_from_json
from .tropical import (
    DomainError,
    VanishingCoordinateError,
    amoeba_boundary_samples,
    boundary_point,
    point_line_table,
    render_svg,
    samples_to_csv,
    trop_line_center,
    trop_point_location,
)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    """Bad arguments or input files (exit code 2)."""


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    outcome: str  # pass, fail, proper, trivial, error
    artifacts: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self):
        out = {"schema_version": SCHEMA_VERSION}
        out.update(asdict(self))
        return out


class Context:
    """What a command returns besides its exit code."""

    def __init__(self, args):
        self.args = args
        self.outcome = "pass"
        self.artifacts = []
        self.inputs = []

    def read_json(self, path):
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
        self.inputs.append(data)
        try:
            return json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}") from exc

    def write(self, path, text):
        Path(path).write_text(text)
        self.artifacts.append(str(path))


def step_budget():
    raw = os.environ.get("TROPNET_STEP_BUDGET")
    if not raw:
        return DEFAULT_STEP_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"TROPNET_STEP_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError("TROPNET_STEP_BUDGET must be positive")
    return value


def emit(args, payload, text):
    if args.json:
        out = {"schema_version": SCHEMA_VERSION}
        out.update(payload)
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_matrix(ctx, spec):
    if spec in (None, "T"):
        return degeneration_T()
    if spec == "32":
        return degeneration_32()
    try:
        return mat3_from_json(ctx.read_json(spec))
    except InputError:
        raise
    except (ValueError, TypeError, KeyError, IndexError, AttributeError) as exc:
        raise InputError(f"bad matrix file {spec}: {exc}") from exc


def _coords(obj):
    if isinstance(obj, list):
        return tuple(parse_rational(x) if isinstance(x, str) else x for x in obj)
    return coords_from_json(obj)


def _load_items(obj):
    """``(lines, points)`` as label -> coordinates from a realized net or a plain listing."""
    if not isinstance(obj, dict):
        raise InputError("net file must be a JSON object")
    lines = {str(k): ProjLine(_coords(v)) for k, v in obj.get("lines", {}).items()}
    points = {str(k): ProjPoint(_coords(v)) for k, v in obj.get("points", {}).items()}
    return lines, points


# commands

def cmd_ols(ctx):
    args = ctx.args
    try:
        classes = enumerate_ols(args.order)
    except UnsupportedOrderError as exc:
        msg = str(exc)
        if args.order == 6:
            msg += "; there are no 6x6 orthogonal pairs at all"
        raise InputError(msg) from exc
    lines = [f"order {args.order}: {len(classes)} class(es)"]
    for i, p in enumerate(classes, 1):
        lines.append(f"class {i}")
        for a, b in zip(p.first.rows, p.second.rows):
            lines.append("  " + " ".join(map(str, a)) + "   " + " ".join(map(str, b)))
    emit(args, {"order": args.order, "count": len(classes), "classes": [p.to_json() for p in classes]},
         "\n".join(lines))
    return EXIT_OK


def _net_from_args(ctx):
    args = ctx.args
    if args.squares:
        obj = ctx.read_json(args.squares)
        squares = obj["squares"] if isinstance(obj, dict) and "squares" in obj else obj
        if isinstance(obj, dict) and "first" in obj:
            squares = [obj["first"], obj["second"]]
        try:
            return net_from_ols([LatinSquare(s) for s in squares], args.order)
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from exc
    if args.order is None:
        raise InputError("give --squares FILE or --order D (grid net)")
    return net_from_ols([], args.order)


def cmd_net_build(ctx):
    net = _net_from_args(ctx)
    payload = {"net": net.to_json()}
    text = [f"({net.k},{net.d})-net"]
    for p in net.points():
        text.append(f"p{p[0]}{p[1]}: " + " ".join(f"l{c}{i}" for c, i in net.incidence[p]))
    if ctx.args.out:
        ctx.write(ctx.args.out, json.dumps({"schema_version": SCHEMA_VERSION, **net.to_json()}, indent=2) + "\n")
    emit(ctx.args, payload, "\n".join(text))
    return EXIT_OK


def _report_json(report):
    return [{"condition": c, "ids": json.loads(json.dumps(ids, default=str))} for c, ids in report]


def cmd_net_verify(ctx):
    obj = ctx.read_json(ctx.args.file)
    try:
        if "lines" in obj:
            rn = RealizedNet.from_json(obj)
            report = verify_realized_net(rn)
            what = "realized"
        else:
            report = verify_abstract_net(AbstractNet.from_json(obj))
            what = "abstract"
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed net file: {exc}") from exc
    ok = not report
    ctx.outcome = "pass" if ok else "fail"
    text = [f"{what} net: {'valid' if ok else 'INVALID'}"]
    text += [f"  {c}: {ids}" for c, ids in report]
    emit(ctx.args, {"kind": what, "valid": ok, "report": _report_json(report)}, "\n".join(text))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_tropicalize(ctx):
    args = ctx.args
    m = _load_matrix(ctx, args.matrix)
    lines, points = _load_items(ctx.read_json(args.net))
    centers, locations = {}, {}
    try:
        for k, l in lines.items():
            try:
                centers[k] = trop_line_center(l.coords, m)
            except VanishingCoordinateError as exc:
                raise InputError(f"line {k}: {exc}") from exc
        for k, p in points.items():
            try:
                locations[k] = trop_point_location(p.coords, m)
            except VanishingCoordinateError as exc:
                raise InputError(f"point {k}: {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from exc
    text = ["line centers:"] + [f"  {k}: {v}" for k, v in centers.items()]
    text += ["point locations:"] + [f"  {k}: {v}" for k, v in locations.items()]
    if args.svg:
        ctx.write(args.svg, render_svg(list(centers.items()), list(locations.items())))
    emit(args, {
        "centers": {k: [v.x, v.y] for k, v in centers.items()},
        "locations": {k: [v.x, v.y] for k, v in locations.items()},
    }, "\n".join(text))
    return EXIT_OK


def cmd_table(ctx):
    m = _load_matrix(ctx, ctx.args.matrix)
    table = point_line_table(m)
    rows = []
    text = [f"{'coordinate':<12}{'points':<34}lines"]
    for r in table.rows:
        pts, lns = r.describe()
        rows.append({"coordinate": [r.coordinate.x, r.coordinate.y], "points": pts, "lines": lns})
        text.append(f"{str(r.coordinate):<12}{pts:<34}{lns}")
    emit(ctx.args, {"rows": rows}, "\n".join(text))
    return EXIT_OK


def _system_for(kind):
    from .prover import build_43_skeleton, build_44_skeleton, generate_constraints

    skel = build_44_skeleton() if kind == "nonexistence" else build_43_skeleton()
    return generate_constraints(skel)


def cmd_prove(ctx):
    from .prover import (
        InconclusiveError,
        format_scalar,
        landmark_members,
        prove_nonexistence_44,
        prove_uniqueness_43,
        verify_certificate,
    )

    args = ctx.args
    budget = step_budget()
    try:
        if args.target == "44-nonexistence":
            cert, system = prove_nonexistence_44(budget)
        else:
            cert, _, system = prove_uniqueness_43(budget)
    except (InconclusiveError, BudgetExceeded) as exc:
        ctx.outcome = "error"
        sys.stderr.write(f"inconclusive: {exc}\n")
        return EXIT_INTERNAL
    check = verify_certificate(cert, system)
    if not check:
        ctx.outcome = "error"
        sys.stderr.write(f"fresh certificate failed verification: {check.reason}\n")
        return EXIT_INTERNAL
    if args.out:
        ctx.write(args.out, cert.dumps())
    members = landmark_members(cert)
    text = [f"{args.target}: certificate verified ({len(cert.steps)} steps)"]
    payload = {"target": args.target, "steps": len(cert.steps),
               "landmarks": {k: str(v) for k, v in members.items()}}
    if cert.kind == "nonexistence":
        ctx.outcome = "trivial"
        der = cert.derivation()
        value = der.member(cert.witness).constant_value()
        step = der.steps[cert.witness - len(der.generators)]
        combo = " + ".join(f"({q})*({der.member(i)})" for i, q in step.cofactors)
        text.append("landmarks:")
        text += [f"  {v}" for v in members.values()]
        text.append(f"witness constant {format_scalar(value)} = {combo}")
        hyps = cert.direct.hypotheses if cert.direct is not None else cert.hypotheses
        text.append(f"hypotheses needed for the unit ideal: {[str(p) for p, _ in hyps] or 'none'}")
        for b in cert.branches:
            text.append(f"degenerate branch {b['item']} refuted: {b['refuted_by']}")
        payload["witness"] = format_rational(value)
    else:
        ctx.outcome = "proper"
        w = cert.witness
        text.append(f"minimal polynomial {w['minimal_polynomial']}")
        text += [f"  {v} = {e}" for v, e in w["solved"].items()]
        text.append(f"the two roots are exchanged by {cert.info['automorphism']}")
        payload["minimal_polynomial"] = w["minimal_polynomial"]
        payload["solved"] = w["solved"]
    emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_verify(ctx):
    from .prover import Certificate, verify_certificate

    obj = ctx.read_json(ctx.args.cert)
    try:
        cert = Certificate.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    result = verify_certificate(cert, _system_for(cert.kind))
    ctx.outcome = "pass" if result else "fail"
    text = f"certificate {'accepted' if result else 'REJECTED'}: {result.reason}"
    if result.failed_step is not None:
        text += f" (step {result.failed_step})"
    if result.items_checked:
        text += f"; {result.items_checked} items checked"
    emit(ctx.args, {"accepted": result.accepted, "failed_step": result.failed_step,
                    "reason": result.reason, "items_checked": result.items_checked}, text)
    return EXIT_OK if result else EXIT_FAIL


def cmd_amoeba(ctx):
    args = ctx.args
    if args.base == "t" and args.t is None:
        raise InputError("--base t needs --t")
    if args.t is not None and args.t <= 1:
        raise InputError("t must exceed 1")
    try:
        samples = amoeba_boundary_samples(
            "line-through-minus-one", args.base, args.t, (args.xmin, args.xmax), args.count
        )
    except (DomainError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    if args.out:
        if str(args.out).endswith(".svg"):
            ctx.write(args.out, render_svg(samples=samples, extent=max(int(abs(args.xmin)), int(abs(args.xmax)), 1)))
        else:
            ctx.write(args.out, samples_to_csv(samples))
    at_zero = boundary_point("upper", 0.0, args.base, args.t)
    text = [f"amoeba boundary, base {args.base}" + (f", t={float(args.t):g}" if args.t else "")]
    text += [f"  {b}: {len(pts)} samples" for b, pts in samples.items()]
    text.append(f"  upper branch at x=0: y={at_zero:.12g}")
    emit(args, {"base": args.base, "t": None if args.t is None else format_rational(args.t),
                "counts": {b: len(p) for b, p in samples.items()}, "upper_at_zero": at_zero}, "\n".join(text))
    return EXIT_OK


# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--report", help="write a run report JSON here")

    p = argparse.ArgumentParser(prog="tropnet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ols", parents=[common], help="orthogonal Latin square pairs up to equivalence")
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_ols)

    net = sub.add_parser("net", help="build or verify nets")
    nsub = net.add_subparsers(dest="net_command", required=True)
    b = nsub.add_parser("build", parents=[common])
    b.add_argument("--squares", help="JSON list of Latin squares (or an OLS pair object)")
    b.add_argument("--order", type=int, help="order of the grid net when no squares are given")
    b.add_argument("--out")
    b.set_defaults(func=cmd_net_build)
    v = nsub.add_parser("verify", parents=[common])
    v.add_argument("file")
    v.set_defaults(func=cmd_net_verify)

    t = sub.add_parser("tropicalize", parents=[common], help="centers and locations under a degeneration")
    t.add_argument("net", help="JSON with 'lines' and 'points' maps")
    t.add_argument("--matrix", help="matrix JSON file, or the presets T / 32 (default T)")
    t.add_argument("--svg")
    t.set_defaults(func=cmd_tropicalize)

    tb = sub.add_parser("table", parents=[common], help="point-line table of a degeneration matrix")
    tb.add_argument("--matrix", help="matrix JSON file, or the presets T / 32 (default T)")
    tb.set_defaults(func=cmd_table)

    pr = sub.add_parser("prove", parents=[common], help="produce a certificate")
    pr.add_argument("target", choices=["44-nonexistence", "43-uniqueness"])
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_prove)

    ve = sub.add_parser("verify", parents=[common], help="replay a certificate")
    ve.add_argument("--cert", required=True)
    ve.set_defaults(func=cmd_verify)

    am = sub.add_parser("amoeba", parents=[common], help="amoeba boundary of x + y + 1 = 0")
    am.add_argument("--t", type=Fraction, help="degeneration parameter, must exceed 1")
    am.add_argument("--base", choices=["natural", "t"], default="natural")
    am.add_argument("--xmin", type=float, default=-4.0)
    am.add_argument("--xmax", type=float, default=4.0)
    am.add_argument("--count", type=int, default=201)
    am.add_argument("--out", help="CSV path, or an .svg path for a drawing")
    am.set_defaults(func=cmd_amoeba)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    ctx = Context(args)
    start = time.perf_counter()
    try:
        code = args.func(ctx)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        ctx.outcome, code = "error", EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        ctx.outcome, code = "error", EXIT_INTERNAL
    if args.report:
        digest = hashlib.sha256(json.dumps(argv).encode())
        for data in ctx.inputs:
            digest.update(data)
        report = RunReport(args.command, digest.hexdigest(), ctx.outcome, ctx.artifacts,
                           round(time.perf_counter() - start, 6))
        Path(args.report).write_text(json.dumps(report.to_json(), indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
