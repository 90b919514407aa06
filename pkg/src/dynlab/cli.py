"""Command line entry point: ``dynlab orbit|classify|diffs|verify|density``.

Exit codes: 0 success, 1 property failure (or ``diffs`` refused on an orbit
without a wandering certificate), 2 bad input, 3 a budget censored the result.
Settings come from ``--config`` (JSON), then ``DYNLAB_FACTOR_BUDGET_MS``, then
explicit flags.  Output is deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .config import RunConfig
from .errors import DigitCapExceeded, DynlabError, MapSyntaxError, ParamViolation
from .orbit import Wandering, classify_orbit, orbit, orbit_csv
from .primeledger.ledger import (
    build_diff_ledger,
    build_sequence_ledger,
    density_count,
    fermat_order_oracle,
    observed_primes,
    primitive_report,
    super_primitive_factors,
)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

# flag name -> RunConfig attribute
_FLAGS = {
    "map": "map_text",
    "field": "field",
    "x0": "x0",
    "steps": "steps",
    "Nmax": "N_max",
    "M": "M",
    "mode": "mode",
    "factor_budget_ms": "factor_budget_ms",
    "digit_cap": "digit_cap",
    "tower_budget": "tower_budget",
    "format": "format",
    "allow_unknown": "allow_unknown",
}


class InputError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--map", help='rational map in t, e.g. "t^2/(2*t+1)"')
    common.add_argument("--field", action="append", help='extension declaration, e.g. "w: w^2+w+1" (repeatable)')
    common.add_argument("--x0", help="starting point (rational or inf)")
    common.add_argument("--steps", type=int, help="number of iterations")
    common.add_argument("--Nmax", type=int, help="largest base index n in the ledger")
    common.add_argument("--M", type=int, help="largest gap D in the ledger")
    common.add_argument("--mode", choices=["numerator", "projective"], help="numerator of x_{n+D}-x_n, or u_{n+D}v_n - u_n v_{n+D}")
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--factor-budget-ms", type=float, help="time budget per factorization")
    common.add_argument("--digit-cap", type=int, help="give up (exit 3) once a term has this many digits")
    common.add_argument("--tower-budget", type=int, help="largest absolute degree of an extension tower the classifier may build")
    common.add_argument("--allow-unknown", action="store_true", default=None, help="build ledgers for orbits without a wandering certificate")

    p = argparse.ArgumentParser(prog="dynlab", description="exact arithmetic dynamics over Q")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("orbit", parents=[common], help="print x_0 .. x_steps")
    sub.add_parser("classify", parents=[common], help="exceptional family tags")
    sub.add_parser("diffs", parents=[common], help="prime ledger of x_{n+D} - x_n")
    v = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    v.add_argument("--suite", default="all", help=f"one of: all, {', '.join(SUITES)}")
    d = sub.add_parser("density", parents=[common], help="count primes dividing some orbit numerator")
    d.add_argument("--checkpoints", default="100,1000,10000,100000", help="comma-separated bounds x")
    d.add_argument("--oracle", choices=["none", "fermat"], default="none", help="compare with the order-of-2 count for Fermat numbers")
    return p


def resolve_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    cfg.with_env()
    for flag, attr in _FLAGS.items():
        val = getattr(args, flag, None)
        if val is not None:
            setattr(cfg, attr, val)
    return cfg


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=1)


def _map(cfg):
    from .ratmap.parse import parse_map

    if not cfg.map_text:
        raise InputError("--map is required")
    return parse_map(cfg.map_text, cfg.context())


def _x0(cfg, ctx):
    from .ratmap.parse import parse_scalar

    text = str(cfg.x0).strip()
    if text in ("inf", "oo", "infinity"):
        return "inf"
    return parse_scalar(text, ctx)


# -- commands ---------------------------------------------------------------------


def cmd_orbit(cfg, out):
    phi = _map(cfg)
    x0 = _x0(cfg, phi.ctx)
    try:
        pts = orbit(phi, x0, cfg.steps, cfg.digit_cap)
        code = EXIT_OK
    except DigitCapExceeded as e:
        print(f"dynlab: {e}", file=sys.stderr)
        return EXIT_BUDGET
    if cfg.format == "csv":
        out.write(orbit_csv(pts) + "\n")
    elif cfg.format == "text":
        for p in pts:
            out.write(f"x_{p.n} = {p.render()}\n")
    else:
        status = classify_orbit(phi, x0, digit_cap=cfg.digit_cap)
        out.write(
            _dump({"map": phi.render(), "x0": pts[0].render(), "points": [p.to_dict() for p in pts], "status": status.to_dict()})
            + "\n"
        )
    return code


def classify_report(phi, tower_budget=24):
    from .classify import in_E, in_F1, in_F2, in_F3, in_T
    from .ratmap.fixed import has_exact_period_point

    # matching the E family may adjoin a (d-1)-th root
    grow = phi.ctx.absolute_degree * (phi.d - 1) <= tower_budget
    tags = {}
    tests = (("T", in_T), ("E", lambda m: in_E(m, grow)), ("F1", in_F1), ("F2", in_F2), ("F3", in_F3))
    for name, fn in tests:
        try:
            tags[name] = fn(phi).to_dict()
        except DynlabError as e:
            tags[name] = {"kind": None, "error": f"{type(e).__name__}: {e}"}
    periods = {}
    for delta in (2, 3):
        w = has_exact_period_point(phi, delta)
        periods[str(delta)] = bool(w)
    return {"map": phi.render(), "degree": phi.d, "tags": tags, "exact_period": periods}


def cmd_classify(cfg, out):
    phi = _map(cfg)
    rep = classify_report(phi, cfg.tower_budget)
    if cfg.format == "text":
        out.write(f"map {rep['map']} (degree {rep['degree']})\n")
        for k, v in rep["tags"].items():
            out.write(f"  {k}: {v['kind']}\n")
        for k, v in rep["exact_period"].items():
            out.write(f"  exact period {k}: {'yes' if v else 'no'}\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "kind"])
        for k, v in rep["tags"].items():
            w.writerow([k, v["kind"] or ""])
    else:
        out.write(_dump(rep) + "\n")
    return EXIT_OK


def cmd_diffs(cfg, out):
    phi = _map(cfg)
    x0 = _x0(cfg, phi.ctx)
    status = classify_orbit(phi, x0, digit_cap=cfg.digit_cap)
    if not isinstance(status, Wandering) and not cfg.allow_unknown:
        print(f"dynlab: orbit is {status.kind}, no wandering certificate; use --allow-unknown to tabulate anyway", file=sys.stderr)
        out.write(_dump({"refused": True, "status": status.to_dict()}) + "\n")
        return EXIT_FAIL
    try:
        pts = orbit(phi, x0, cfg.N_max, cfg.digit_cap)
    except DigitCapExceeded as e:
        print(f"dynlab: {e}", file=sys.stderr)
        return EXIT_BUDGET
    L = build_diff_ledger(phi, x0, cfg.N_max, cfg.M, cfg.mode, cfg.factor_budget_ms, cfg.digit_cap, points=pts)
    L.status = status
    rep = primitive_report(L)
    S = build_sequence_ledger([p.u for p in pts], cfg.factor_budget_ms)
    sup = {str(n): [str(p) for p in super_primitive_factors(S, n)] for n in range(S.N + 1)}
    censored = bool(rep.censored) or any(S.censored(n) for n in range(S.N + 1) if S.values[n])
    if cfg.format == "csv":
        out.write(L.to_csv())
    elif cfg.format == "text":
        out.write(f"map {phi.render()}, x0 = {pts[0].render()}, status {status.kind} ({rep.note})\n")
        for k in L.window():
            c = L.cells[k]
            mark = " (censored)" if c.censored else ""
            out.write(
                f"n={k[0]:<3} D={k[1]:<2} primes={list(c.primes)} primitive={rep.primitive[k]}"
                f" doubly={rep.doubly_primitive[k]}{mark}\n"
            )
        for n, ps in sup.items():
            out.write(f"u_{n}: super-primitive {ps}\n")
    else:
        out.write(_dump({"ledger": L.to_dict(), "report": rep.to_dict(), "super_primitive": sup}) + "\n")
    return EXIT_BUDGET if censored else EXIT_OK


def cmd_verify(cfg, out, suite):
    ids = list(SUITES) if suite == "all" else [suite]
    for s in ids:
        if s not in SUITES:
            raise InputError(f"unknown suite {s!r}; known: {', '.join(SUITES)}")
    results = [run_suite(s, cfg) for s in ids]
    if cfg.format == "text":
        out.write("\n".join(r.render_text() for r in results) + "\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["suite", "check", "status", "anchor"])
        for r in results:
            for c in sorted(r.checks, key=lambda c: c.name):
                w.writerow([r.suite, c.name, c.status, c.anchor])
    else:
        body = [r.to_dict() for r in results]
        out.write(_dump(body[0] if len(body) == 1 else body) + "\n")
    codes = {r.exit_status for r in results}
    return EXIT_FAIL if 1 in codes else EXIT_BUDGET if 3 in codes else EXIT_OK


def cmd_density(cfg, out, checkpoints, oracle):
    try:
        xs = sorted({int(x) for x in checkpoints.split(",") if x.strip()})
    except ValueError:
        raise InputError(f"bad checkpoints {checkpoints!r}") from None
    if not xs or xs[0] < 2:
        raise InputError("checkpoints must be integers >= 2")
    if oracle == "fermat" and cfg.map_text is None:
        cfg.map_text, cfg.x0 = "t^2-2*t+2", "3"
    phi = _map(cfg)
    x0 = _x0(cfg, phi.ctx)
    try:
        pts = orbit(phi, x0, cfg.steps, cfg.digit_cap)
    except DigitCapExceeded as e:
        print(f"dynlab: {e}", file=sys.stderr)
        return EXIT_BUDGET
    # trial division up to the largest checkpoint is complete, so no budget applies
    primes = observed_primes([p.u for p in pts], xs[-1])
    rows = [{"x": str(x), "count": density_count(primes, x)} for x in xs]
    code = EXIT_OK
    if oracle == "fermat":
        ref = fermat_order_oracle(xs[-1])
        for r in rows:
            r["oracle"] = density_count(ref, int(r["x"]))
            r["match"] = r["oracle"] == r["count"]
        if not all(r["match"] for r in rows):
            code = EXIT_FAIL
    counts = [r["count"] for r in rows]
    if counts != sorted(counts):
        code = EXIT_FAIL
    if cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        keys = list(rows[0])
        w.writerow(keys)
        for r in rows:
            w.writerow([r[k] for k in keys])
    elif cfg.format == "text":
        for r in rows:
            extra = f" oracle {r['oracle']}" if "oracle" in r else ""
            out.write(f"P({r['x']}) = {r['count']}{extra}\n")
    else:
        out.write(_dump({"map": phi.render(), "x0": pts[0].render(), "terms": len(pts), "counts": rows}) + "\n")
    return code


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        cfg = resolve_config(args)
        if args.command == "orbit":
            return cmd_orbit(cfg, out)
        if args.command == "classify":
            return cmd_classify(cfg, out)
        if args.command == "diffs":
            return cmd_diffs(cfg, out)
        if args.command == "verify":
            return cmd_verify(cfg, out, args.suite)
        return cmd_density(cfg, out, args.checkpoints, args.oracle)
    except (InputError, MapSyntaxError, ParamViolation, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"dynlab: input error: {e}", file=sys.stderr)
        return EXIT_INPUT


def run(argv) -> tuple:
    """``(exit_code, stdout_text)`` without touching the real stdout (handy in tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
