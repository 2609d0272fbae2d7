"""Command-line interface: point evaluation, error sweeps, tables, timings.

Exit codes: 0 success, 2 parameter/usage error, 3 threshold violation when
``--check`` is passed.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench, bounds, core
from .errors import FaddeevaError, ParameterError

_CHECK_FLOOR_B64 = 4e-15
_CHECK_FLOOR_DD = 1e-26

# accuracy-table pass thresholds used by `table --check`
_TABLE_THRESHOLDS = {
    "trap(11)": ("max_abs", 2.4e-15),
    "weideman(40)": ("max_rel", 3e-15),
    "zaghloul(0.5,38)": ("max_rel", 5e-13),
}


def _grid_from_args(args) -> bench.GridSpec:
    kw = {"kind": getattr(args, "grid", "polar")}
    for name in ("p_min", "p_max", "p_step", "theta_count", "x_min", "x_max", "step"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    return bench.GridSpec(**kw)


def _add_grid_options(p):
    p.add_argument("--grid", choices=["polar", "cartesian"], default="polar")
    g = p.add_argument_group("grid refinement (defaults reproduce the standard grids)")
    g.add_argument("--p-min", type=float, dest="p_min")
    g.add_argument("--p-max", type=float, dest="p_max")
    g.add_argument("--p-step", type=float, dest="p_step")
    g.add_argument("--theta-count", type=int, dest="theta_count")
    g.add_argument("--x-min", type=float, dest="x_min")
    g.add_argument("--x-max", type=float, dest="x_max")
    g.add_argument("--step", type=float, dest="step")


def _fmt_for(path: str) -> str:
    return "json" if str(path).endswith(".json") else "csv"


def cmd_eval(args) -> int:
    z = complex(args.re, args.im)
    n = args.n
    if args.method == "trap":
        params = core.EvalParams.for_order(n)
        value = core.w_plane(z, params)
        if z.real >= 0 and z.imag >= 0:
            tag = core.select_branch(z, params).name
        else:
            tag = "symmetry"
        print(f"w({z.real:g}{z.imag:+g}i) = {value.real:.17g} {value.imag:+.17g}i")
        print(f"branch = {tag}")
        print(f"abs_bound = {bounds.abs_bound(n):.6g}")
        print(f"rel_bound = {bounds.rel_bound(n):.6g} (upper half-plane)")
    else:
        default_arg = {"weideman": 40, "cf": 9}.get(args.method)
        if args.method == "zaghloul":
            spec = "zaghloul(0.5,38)"
        else:
            arg = default_arg if n == core.DEFAULT_N else n
            spec = f"{args.method}({arg})"
        label, fn, mask = bench.parse_method(spec)
        if not mask(np.atleast_1d(np.complex128(z)))[0]:
            raise ParameterError(f"{label} is not rated at z = {z}")
        value = fn(np.atleast_1d(np.complex128(z)))[0]
        print(f"w({z.real:g}{z.imag:+g}i) = {value.real:.17g} {value.imag:+.17g}i  [{label}]")
    return 0


def cmd_sweep(args) -> int:
    if args.n_min < 0 or args.n_max < args.n_min:
        raise ParameterError("need 0 <= n-min <= n-max")
    precision = {"d": "binary64", "x": "xprec"}[args.precision]
    grid = _grid_from_args(args)
    records = bench.error_sweep(
        range(args.n_min, args.n_max + 1), grid, precision=precision, workers=args.workers
    )
    bench.emit(records, _fmt_for(args.out), args.out)
    print(f"wrote {len(records)} sweep records to {args.out}")
    if args.check:
        floor = _CHECK_FLOOR_B64 if precision == "binary64" else _CHECK_FLOOR_DD
        bad = [
            r
            for r in records
            if r.max_abs_err > r.bound_abs + floor or r.max_rel_err > r.bound_rel + floor
        ]
        if bad:
            for r in bad:
                print(f"FAIL n={r.n}: abs {r.max_abs_err:.3e} vs {r.bound_abs:.3e}, "
                      f"rel {r.max_rel_err:.3e} vs {r.bound_rel:.3e}", file=sys.stderr)
            return 3
    return 0


def cmd_table(args) -> int:
    grid = _grid_from_args(args)
    methods = [m.strip() for m in args.methods.split(";") if m.strip()]
    if not methods:
        raise ParameterError("no methods given")
    rows = bench.accuracy_table(methods, grid)
    bench.emit(rows, _fmt_for(args.out), args.out)
    print(f"wrote {len(rows)} table rows to {args.out}")
    if args.check:
        rc = 0
        for row in rows:
            spec = _TABLE_THRESHOLDS.get(row.method)
            if spec is None:
                continue
            fld, thr = spec
            val = getattr(row, fld)
            if val > thr:
                print(f"FAIL {row.method}: {fld} {val:.3e} > {thr:.3e}", file=sys.stderr)
                rc = 3
        return rc
    return 0


def cmd_bench(args) -> int:
    grid = _grid_from_args(args)
    methods = [m.strip() for m in args.methods.split(";") if m.strip()]
    records = [bench.timing_run(m, grid, reps=args.reps) for m in methods]
    bench.emit(records, _fmt_for(args.out), args.out)
    print(f"wrote {len(records)} timing records to {args.out}")
    return 0


def cmd_bounds(args) -> int:
    c = bounds.constants()
    print(f"c_a    = {c.c_a:.10g}")
    print(f"c_r    = {c.c_r:.10g}")
    print(f"c_star = {c.c_star:.10g}")
    print(f"C1     = {c.big_c1:.10g}")
    print(f"C2     = {c.big_c2:.10g}")
    n = args.n
    trap, trunc = bounds.component_bounds(n)
    print(f"n = {n}: h = {core.step_size(n):.10g}")
    print(f"  abs_bound = {bounds.abs_bound(n):.6e}")
    print(f"  rel_bound = {bounds.rel_bound(n):.6e}")
    print(f"  components: rule = {trap:.6e}, truncation = {trunc:.6e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="faddeeva", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate w(z) at one point")
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im", type=float, required=True)
    p.add_argument("--n", type=int, default=core.DEFAULT_N)
    p.add_argument("--method", choices=["trap", "weideman", "cf", "zaghloul"], default="trap")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="max-error sweep over a grid for a range of orders")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    _add_grid_options(p)
    p.add_argument("--precision", choices=["d", "x"], default="d")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--check", action="store_true",
                   help="exit 3 if any record exceeds its theoretical bound plus floor")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table", help="accuracy table for several methods")
    p.add_argument("--methods", required=True,
                   help="semicolon-separated, e.g. 'trap(11);weideman(40);cf(9);zaghloul(0.5,38)'")
    _add_grid_options(p)
    p.add_argument("--out", required=True)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bench", help="timing comparison over the full grid")
    p.add_argument("--reps", type=int, default=25)
    p.add_argument("--methods", default="trap(11);weideman(40);cf(9);zaghloul(0.5,38)")
    _add_grid_options(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("bounds", help="print bound constants and curves")
    p.add_argument("--n", type=int, default=core.DEFAULT_N)
    p.set_defaults(func=cmd_bounds)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FaddeevaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
