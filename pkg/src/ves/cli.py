"""Command-line front end: construction, verification, and data export.

Subcommands
-----------
critical-points   print the five phase-plane critical points and local data
solve             assemble the global solution; export profile CSV + summary
verify            run the verification battery; export the report JSON
evolve            finite-volume cross-check; export trajectory and snapshot

Exit codes: 0 success, 1 check failure, 2 usage error, 3 numerical failure.
Defaults reproduce the illustrated parameter pair gamma=1.816, mu=0.716
with K = 1, T = 1.  Option precedence: flags > config file > defaults; the
config file is plain ``key=value`` text.  The default output directory is
$VES_OUT_DIR, else the current directory.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import fv, profile, verifier
from .core import critical_points, derived_constants
from .errors import ComputationError, DomainError, SolverError
from .sonic import linearize_at_d, saddle_data_at_b
from .verifier import CHECK_NAMES

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

DEFAULTS = {"gamma": 1.816, "mu": 0.716, "K": 1.0, "T": 1.0}


def _read_config(path):
    values = {}
    with open(path) as f:
        for raw in f:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"config line is not key=value: {raw!r}")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    return values


def _resolve(args, key, cast=float):
    """flags > config file > defaults."""
    flag_val = getattr(args, key, None)
    if flag_val is not None:
        return flag_val
    if args.config:
        cfg = _read_config(args.config)
        if key in cfg:
            return cast(cfg[key])
    return DEFAULTS[key]


def _out_dir(args):
    out = args.out_dir or os.environ.get("VES_OUT_DIR") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _params(args):
    return derived_constants(_resolve(args, "gamma"), _resolve(args, "mu"))


def _add_common(sub):
    sub.add_argument("--gamma", type=float, default=None,
                     help="adiabatic exponent in (1, 3)")
    sub.add_argument("--mu", type=float, default=None,
                     help="inverse similarity exponent in (0, 1)")
    sub.add_argument("--K", type=float, default=None,
                     help="integral constant of the special solution (> 0)")
    sub.add_argument("--T", type=float, default=None,
                     help="initial-data time (profile taken at t = -T)")
    sub.add_argument("--config", default=None,
                     help="key=value config file (flags take precedence)")
    sub.add_argument("--out-dir", default=None,
                     help="output directory (default: $VES_OUT_DIR or .)")


def cmd_critical_points(args):
    params = _params(args)
    pts = critical_points(params)
    lin = linearize_at_d(params)
    sad = saddle_data_at_b(params)
    payload = {
        "gamma": params.gamma,
        "mu": params.mu,
        "points": [],
        "eigen_D": {"lambda1": lin.lambda1, "lambda2": lin.lambda2,
                    "beta": lin.beta, "resonant": lin.resonant},
        "eigen_B": {"lambda1": sad[0], "lambda2": sad[1]},
    }
    for cp in pts:
        entry = {"label": cp.label, "kind": cp.kind,
                 "at_infinity": cp.at_infinity}
        if cp.location is not None:
            entry["U"] = cp.location.U
            entry["H"] = cp.location.H
        if cp.slopes is not None:
            entry["c1"] = cp.slopes.c1
            entry["c2"] = cp.slopes.c2
        payload["points"].append(entry)
    if args.json:
        text = json.dumps(payload, indent=2)
        print(text)
        if args.out_dir or os.environ.get("VES_OUT_DIR"):
            with open(os.path.join(_out_dir(args), "critical_points.json"), "w") as f:
                f.write(text)
        return EXIT_OK
    print(f"critical points for gamma={params.gamma}, mu={params.mu}")
    for e in payload["points"]:
        loc = "at infinity" if e["at_infinity"] else \
            f"U={e['U']:.6f} H={e['H']:.6f}"
        slopes = f"  c1={e['c1']:.6f} c2={e['c2']:.6f}" if "c1" in e else ""
        print(f"  {e['label']}  ({e['kind']:6s})  {loc}{slopes}")
    print(f"  D eigen: lambda1={lin.lambda1:.6f} lambda2={lin.lambda2:.6f} "
          f"beta={lin.beta:.6f}")
    print(f"  B saddle: lambda1={sad[0]:.6f} lambda2={sad[1]:.6f}")
    return EXIT_OK


def _parse_grid(spec):
    lo, hi, num = spec.split(":")
    return float(lo), float(hi), int(num)


def cmd_solve(args):
    params = _params(args)
    K = _resolve(args, "K")
    sol = profile.assemble(params, K=K)
    out = _out_dir(args)
    profile.export_profile_csv(sol, os.path.join(out, "profile.csv"),
                               n_samples=args.samples)
    summary = profile.summary_dict(sol)
    with open(os.path.join(out, "solve_summary.json"), "w") as f:
        json.dump(summary, f, indent=2)
    if args.fields:
        tspec, xspec = args.fields.split(",")
        t0, t1, nt = _parse_grid(tspec)
        x0, x1, nx = _parse_grid(xspec)
        profile.export_fields_csv(sol, np.linspace(t0, t1, nt),
                                  np.linspace(x0, x1, nx),
                                  os.path.join(out, "fields.csv"))
    print(f"y_B = {sol.y_B:.12g}, y_D = {sol.y_D:.12g} (y_B < y_D < 0: "
          f"{sol.y_B < sol.y_D < 0.0})")
    print(f"beta = {sol.linearization.beta:.12g}, U_beta = {sol.U_beta:.6g} "
          f"({sol.U_beta_status})")
    print(f"wrote profile.csv, solve_summary.json to {out}")
    return EXIT_OK


def cmd_verify(args):
    params = _params(args)
    K = _resolve(args, "K")
    sol = profile.assemble(params, K=K)
    checks = args.checks.split(",") if args.checks else None
    reports = verifier.run_all_checks(sol, checks=checks,
                                      perturb_h=args.perturb_H)
    out = _out_dir(args)
    verifier.reports_to_json(reports, os.path.join(out, "verify_report.json"))
    failed = [r.check_name for r in reports if r.status == verifier.STATUS_FAIL]
    for r in reports:
        print(f"[{r.status.upper():4s}] {r.check_name}: measured={r.measured:.6g}"
              + (f" expected={r.expected:.6g}" if r.expected is not None else ""))
    if args.perturb_H:
        print(f"expected-fail mode: perturbation {args.perturb_H} applied; "
              f"the weak_form_perturbed check passes iff the defect is detected")
    if failed:
        print(f"FAILED checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK_FAILURE
    print(f"all {len(reports)} checks passed; report in {out}/verify_report.json")
    return EXIT_OK


def cmd_evolve(args):
    params = _params(args)
    K = _resolve(args, "K")
    T = _resolve(args, "T")
    if args.n < 64:
        raise DomainError(f"need n >= 64 cells, got {args.n}")
    sol = profile.assemble(params, K=K)
    state = fv.init_grid(sol, T, args.x_lo, args.x_hi, args.n)
    state, traj = fv.evolve(state, args.t_end, args.cfl, sol=sol)
    out = _out_dir(args)
    fv.export_trajectory_csv(traj, os.path.join(out, "fv_trajectory.csv"))
    fv.export_snapshot_csv(state, os.path.join(out, "fv_snapshot.csv"))
    dx = state.dx
    waiting = [abs(b) / dx for t, b, _ in traj if t < 0.0]
    moving = [abs(b - ba) / dx for t, b, ba in traj if t > 0.0]
    summary = {
        "n": args.n, "cfl": args.cfl, "t_end": args.t_end, "dx": dx,
        "x_lo": args.x_lo, "x_hi": args.x_hi,
        "floor_activations": state.floor_activations,
        "floor_mass": state.floor_mass,
        "max_waiting_drift_cells": max(waiting) if waiting else 0.0,
        "max_moving_deviation_cells": max(moving) if moving else 0.0,
        "final_mass": state.mass(),
    }
    with open(os.path.join(out, "evolve_summary.json"), "w") as f:
        json.dump(summary, f, indent=2)
    print(f"evolved to t={state.t:.6f} with {args.n} cells (dx={dx:.3e})")
    if waiting:
        print(f"waiting phase: max |b_num| = {max(waiting):.2f} cells")
    if moving:
        print(f"moving phase: max |b_num - y_B t^delta| = {max(moving):.2f} cells")
    print(f"wrote fv_trajectory.csv, fv_snapshot.csv, evolve_summary.json to {out}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ves",
        description="Self-similar waiting-time vacuum solutions of the "
                    "compressible Euler equations: construction and "
                    "numerical verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cp = sub.add_parser("critical-points",
                          help="phase-plane critical points and local data")
    _add_common(p_cp)
    p_cp.add_argument("--json", action="store_true",
                      help="machine-readable output")
    p_cp.set_defaults(func=cmd_critical_points)

    p_solve = sub.add_parser("solve", help="assemble and export the solution")
    _add_common(p_solve)
    p_solve.add_argument("--samples", type=int, default=2000,
                         help="total rows of the profile CSV")
    p_solve.add_argument("--fields", default=None, metavar="T0:T1:NT,X0:X1:NX",
                         help="also export physical fields on this grid")
    p_solve.set_defaults(func=cmd_solve)

    p_ver = sub.add_parser("verify", help="run the verification battery")
    _add_common(p_ver)
    p_ver.add_argument("--checks", default=None,
                       help=f"comma list from {', '.join(CHECK_NAMES)}")
    p_ver.add_argument("--perturb-H", type=float, default=0.0,
                       help="also run the weak-form check with H scaled by "
                            "(1+p) for t > 0 (detection demo)")
    p_ver.set_defaults(func=cmd_verify)

    p_ev = sub.add_parser("evolve", help="finite-volume cross-check")
    _add_common(p_ev)
    p_ev.add_argument("--n", type=int, default=1024, help="number of cells")
    p_ev.add_argument("--t-end", type=float, default=0.5, dest="t_end")
    p_ev.add_argument("--cfl", type=float, default=0.4)
    p_ev.add_argument("--x-lo", type=float, default=-1.0, dest="x_lo")
    p_ev.add_argument("--x-hi", type=float, default=7.0, dest="x_hi")
    p_ev.set_defaults(func=cmd_evolve)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ComputationError, SolverError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
