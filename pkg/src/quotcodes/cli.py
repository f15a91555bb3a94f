"""Command-line entry point: ``quotcodes <subcommand> [flags]``.

Exit status: 0 when every verdict matches (or nothing was verified), 2 on any
mismatch, 1 on usage or computation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codes import BudgetExceeded, dual_min_distance, enumerate_circuits
from .config import load_config, thread_count
from .construct import build_complete, build_one_point, build_two_point, build_uncomplete
from .curve import CurveError, build_curve, format_point
from .gf import FieldError
from .planegeom import PlaneScheme, support_geometry
from .report import FORMATTERS, exit_status
from .suites import REPROS, SUITES, Context, default_cases, distance, resolve_divisor, resolve_point, run_repro, run_suite

FAMILIES = ("complete", "uncomplete", "one-point", "two-point")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--E", default=None, help="point:mult list separated by ';' (points as '(g^i, g^j)', 'origin', 'Pinf', ...)")
    p.add_argument("--P", default=None, help="affine point for two-point codes")


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=sorted(FORMATTERS), default="json")
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--timings", action="store_true", help="include runtimes (reports are then not byte-stable)")
    p.add_argument("--config", type=Path)


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="quotcodes", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("params", help="curve parameters")
    _instance_flags(p)
    _output_flags(p)

    p = sub.add_parser("points", help="list rational points")
    _instance_flags(p)
    _output_flags(p)

    for name, helptext in (("build", "write a generator matrix"), ("dual-distance", "minimum distance of the dual"), ("circuits", "minimum-weight supports of the dual")):
        p = sub.add_parser(name, help=helptext)
        _instance_flags(p)
        _output_flags(p)
        p.add_argument("--family", choices=FAMILIES, default="complete")
        if name != "build":
            p.add_argument("--wmax", type=int, default=6)

    p = sub.add_parser("verify", help="run a verification suite (or 'all')")
    p.add_argument("suite")
    _instance_flags(p)
    _output_flags(p)

    p = sub.add_parser("repro", help="reproduce a worked example")
    p.add_argument("example")
    _output_flags(p)
    return ap


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command} needs " + ", ".join(f"--{n}" for n in missing))


def _curve(args):
    _need(args, "q", "m")
    return build_curve(args.q, args.m)


def build_code(args):
    curve = _curve(args)
    fam = args.family
    if fam == "complete":
        _need(args, "d")
        E = resolve_divisor(curve, args.E) if args.E else None
        return curve, build_complete(curve, args.d, E)
    if fam == "uncomplete":
        _need(args, "d")
        E = PlaneScheme.from_divisor(resolve_divisor(curve, args.E)) if args.E else None
        return curve, build_uncomplete(curve, args.d, E)
    if fam == "one-point":
        _need(args, "r")
        return curve, build_one_point(curve, args.r)
    _need(args, "a", "b", "P")
    code, _ = build_two_point(curve, args.a, args.b, resolve_point(curve, args.P))
    return curve, code


def _write(args, text: str) -> None:
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _context(args, cfg) -> Context:
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    return Context(seed=seed, budget=cfg.get("budget", 2e10))


def _resolve(name: str, table: dict, aliases: dict, kind: str) -> str:
    name = aliases.get(name, name)
    if name not in table:
        raise UsageError(f"unknown {kind} {name!r}; choose from {', '.join(sorted(table))}")
    return name


def _select_cases(name: str, args, cfg) -> list[dict]:
    """Configured cases filtered by any instance flags; a fresh case when none match."""
    flags = {k: getattr(args, k) for k in ("q", "m", "d", "r", "a", "b", "E", "P") if getattr(args, k) is not None}
    cases = default_cases(name, cfg)
    if not flags:
        return cases
    chosen = [c for c in cases if all(c.get(k) == v for k, v in flags.items() if k in c)]
    if chosen:
        return chosen
    if "q" not in flags or "m" not in flags:
        raise UsageError("an instance outside the configured list needs --q and --m")
    return [flags]


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    aliases = cfg.get("aliases", {}).get("suites", {})
    names = list(SUITES) if args.suite == "all" else [_resolve(args.suite, SUITES, aliases, "suite")]
    ctx = _context(args, cfg)
    threads = thread_count(args.threads)
    reports = []
    for name in names:
        cases = _select_cases(name, args, cfg) if args.suite != "all" else None
        reports += run_suite(name, cases, ctx=ctx, threads=threads, config=cfg)
    _write(args, FORMATTERS[args.format](reports, timings=args.timings))
    return exit_status(reports)


def cmd_repro(args) -> int:
    cfg = load_config(args.config)
    name = _resolve(args.example, REPROS, cfg.get("aliases", {}).get("examples", {}), "example")
    reports = run_repro(name, _context(args, cfg))
    _write(args, FORMATTERS[args.format](reports, timings=args.timings))
    return exit_status(reports)


def cmd_params(args) -> int:
    curve = _curve(args)
    F = curve.field
    info = {
        "q": curve.q,
        "m": curve.m,
        "field": F.name,
        "c": curve.c,
        "genus": curve.genus,
        "rational_points": len(curve.points),
        "affine_points": len(curve.affine_points),
    }
    _write(args, json.dumps(info, indent=2) + "\n")
    return 0


def cmd_points(args) -> int:
    curve = _curve(args)
    F = curve.field
    _write(args, "".join(format_point(F, P) + "\n" for P in curve.points))
    return 0


def cmd_build(args) -> int:
    _, code = build_code(args)
    _write(args, code.export())
    return 0


def cmd_dual_distance(args) -> int:
    cfg = load_config(args.config)
    curve, code = build_code(args)
    dd = distance(curve, code, args.wmax, _context(args, cfg))
    if isinstance(dd, BudgetExceeded):
        raise UsageError(str(dd))
    out = {"n": code.n, "k": code.k, "dual_distance": dd.d_min, "bound": dd.describe(), "levels_cleared": dd.levels_checked}
    if dd.witness is not None:
        out["witness"] = [format_point(curve.field, code.labels[i]) for i in dd.witness.indices]
    _write(args, json.dumps(out, indent=2) + "\n")
    return 0


def cmd_circuits(args) -> int:
    curve, code = build_code(args)
    F = curve.field
    dd = dual_min_distance(code, args.wmax)
    if dd.d_min is None:
        _write(args, json.dumps({"n": code.n, "k": code.k, "dual_distance": dd.describe(), "circuits": []}, indent=2) + "\n")
        return 0
    circuits = enumerate_circuits(code, dd.d_min, dd.d_min)
    rows = []
    for c in circuits:
        pts = [code.labels[i] for i in c.indices]
        rows.append({"support": [format_point(F, P) for P in pts], "coeffs": [F.format(int(v)) for v in c.coeffs], "geometry": support_geometry(F, pts)})
    out = {"n": code.n, "k": code.k, "dual_distance": dd.d_min, "circuit_count": len(circuits), "codeword_count": (F.order - 1) * len(circuits), "circuits": rows}
    _write(args, json.dumps(out, indent=2) + "\n")
    return 0


COMMANDS = {
    "params": cmd_params,
    "points": cmd_points,
    "build": cmd_build,
    "dual-distance": cmd_dual_distance,
    "circuits": cmd_circuits,
    "verify": cmd_verify,
    "repro": cmd_repro,
}


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, CurveError, FieldError, ValueError, KeyError) as exc:
        print(f"quotcodes: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
