"""Command-line front end: evaluate formulas, run simulations, emit data.

Subcommands
-----------
exact       expected k-cycle counts over a time grid (closed form)
verify      cross-route agreement checks; nonzero exit on tolerance breach
figure1     scaled transition curve with the giant-component fraction
simulate    Monte Carlo estimates of cycle observables
transition  window measurement and envelope-constant fit near the jump
slowdown    normalized-distance curve: series, closed form, Monte Carlo

Output is CSV (leading '#' metadata block: command, config, version) or a
JSON array of row objects.  Floats are printed with 17 significant digits;
stochastic rows carry the base seed and replica count, so any run is
byte-reproducible from its config.  The environment variable
INTERCHANGE_THREADS sets the default Monte Carlo worker count.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import __version__, closed_form, exact_chain, simulate, spectral, transition


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _grid_from_args(args, what: str = "t") -> list[float]:
    t_min = getattr(args, "t_min", None)
    t_max = getattr(args, "t_max", None)
    points = getattr(args, "t_points", None)
    if t_min is None and t_max is None:
        single = getattr(args, "t", None)
        if single is None:
            raise SystemExit(f"either --{what} or --t-min/--t-max/--t-points is required")
        return [float(single)]
    if t_min is None or t_max is None or points is None:
        raise SystemExit("--t-min, --t-max and --t-points must be given together")
    if not t_min < t_max:
        raise SystemExit("--t-min must be smaller than --t-max")
    if points < 2:
        raise SystemExit("--t-points must be at least 2")
    if args.t_log:
        if t_min <= 0:
            raise SystemExit("--t-log needs a positive --t-min")
        return list(np.geomspace(t_min, t_max, points))
    return list(np.linspace(t_min, t_max, points))


def _write_output(args, command: str, columns: list[str], rows: list[dict]) -> None:
    config = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in ("func", "out", "format") and value is not None
    }
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        lines = [
            f"# command: {command}",
            f"# version: {__version__}",
            f"# config: {json.dumps(config, sort_keys=True)}",
            ",".join(columns),
        ]
        for row in rows:
            lines.append(",".join(_fmt(row[c]) for c in columns))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _k_values(args) -> list[int]:
    if args.k_list:
        return [int(k) for k in args.k_list.split(",")]
    if args.k is None:
        raise SystemExit("either --k or --k-list is required")
    return [args.k]


# -- exact ---------------------------------------------------------------


def cmd_exact(args) -> int:
    ks = _k_values(args)
    ts = _grid_from_args(args)
    rows = []
    for k in ks:
        for t in ts:
            params = closed_form.ModelParams(args.n, k, t)
            rows.append({
                "n": params.n,
                "k": params.k,
                "t": params.t,
                "x": params.x,
                "E_sk": closed_form.expected_cycles(args.n, k, t),
            })
    _write_output(args, "exact", ["n", "k", "t", "x", "E_sk"], rows)
    return 0


# -- verify --------------------------------------------------------------


def _spectral_value(n: int, k: int, t: float, precision_bits, corrupt: bool) -> float:
    basis = spectral.cycle_basis(n, k)
    terms = basis.terms
    if corrupt:
        bad = dataclasses.replace(terms[1], a=terms[1].a + 1)
        terms = (terms[0], bad) + terms[2:]
    bits = precision_bits or spectral.default_precision_bits(basis)
    return float(spectral.spectral_sum(terms, t, bits))


def cmd_verify(args) -> int:
    n = args.n
    ts = [0.05, 0.2, 1.0] if args.t is None else [args.t]
    rows = []
    all_ok = True
    if n <= exact_chain.MAX_EXACT_N:
        checks = [
            ("closed_vs_brute", 1e-8, "abs"),
            ("spectral_vs_brute", 1e-8, "abs"),
            ("spectral_vs_closed", 1e-10, "rel"),
        ]
    else:
        checks = [("spectral_vs_closed", 1e-10, "rel")]
    worst = {name: 0.0 for name, _, _ in checks}
    for k in range(1, n + 1):
        for t in ts:
            closed = closed_form.expected_cycles(n, k, t)
            spectral_value = _spectral_value(n, k, t, args.precision_bits, args.self_test_corrupt)
            brute = exact_chain.brute_force_expected_cycles(n, k, t) \
                if n <= exact_chain.MAX_EXACT_N else None
            for name, _, kind in checks:
                if name == "closed_vs_brute":
                    err = abs(closed - brute)
                elif name == "spectral_vs_brute":
                    err = abs(spectral_value - brute)
                else:
                    scale = max(abs(closed), abs(spectral_value), 1e-300)
                    err = abs(spectral_value - closed) / scale
                worst[name] = max(worst[name], err)
    for name, tol, kind in checks:
        ok = worst[name] <= tol
        all_ok = all_ok and ok
        rows.append({
            "check": name,
            "n": n,
            "metric": kind,
            "max_err": worst[name],
            "tol": tol,
            "ok": int(ok),
        })
    _write_output(args, "verify", ["check", "n", "metric", "max_err", "tol", "ok"], rows)
    return 0 if all_ok else 1


# -- figure1 -------------------------------------------------------------


def cmd_figure1(args) -> int:
    n, k = args.n, args.k
    if args.t_min is None:
        ts = list(np.linspace(0.0, 3.0, args.t_points or 301))
    else:
        ts = _grid_from_args(args)
    rows = []
    for c in ts:
        value = closed_form.expected_cycles(n, k, c / n)
        giant = closed_form.giant_component_theta(c) if c > 1.0 else 0.0
        rows.append({
            "t": c,
            "E_sk": value,
            "scaled_E": (n * n / k) * value,
            "giant": giant,
        })
    _write_output(args, "figure1", ["t", "E_sk", "scaled_E", "giant"], rows)
    return 0


# -- simulate ------------------------------------------------------------


def cmd_simulate(args) -> int:
    ks = _k_values(args)
    result = simulate.monte_carlo(
        n=args.n,
        t=args.t,
        k_list=ks,
        epsilon=args.eps,
        replicas=args.reps,
        base_seed=args.seed,
        couple_graph=args.couple,
    )
    rows = []
    for name, est in result.estimates.items():
        rows.append({
            "n": args.n,
            "t": args.t,
            "quantity": name,
            "mean": est.mean,
            "stderr": est.stderr,
            "replicas": est.replicas,
            "base_seed": est.base_seed,
        })
    _write_output(
        args, "simulate",
        ["n", "t", "quantity", "mean", "stderr", "replicas", "base_seed"], rows,
    )
    return 0


# -- transition ----------------------------------------------------------


def cmd_transition(args) -> int:
    n, k = args.n, args.k
    profile = transition.measure_window(
        n, k, f_lo=args.f_lo, f_hi=args.f_hi, resolution=args.resolution
    )
    params = transition.TransitionParams.for_model(n, k)
    big_c = transition.fit_envelope_constant(n, k, small_c=args.small_c)
    row = {
        "n": n,
        "k": k,
        "t_crit": params.t_crit,
        "q": params.q,
        "cross_lo": profile.crossings[args.f_lo],
        "cross_hi": profile.crossings[args.f_hi],
        "width": profile.width,
        "width_scaled": profile.width * n**1.5,
        "big_c_fit": big_c,
        "small_c": args.small_c,
    }
    ok = True
    if args.big_c is not None:
        ok = big_c <= args.big_c
        row["ok"] = int(ok)
    columns = list(row.keys())
    _write_output(args, "transition", columns, [row])
    return 0 if ok else 1


# -- slowdown ------------------------------------------------------------


def cmd_slowdown(args) -> int:
    if args.t_min is None:
        cs = [0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    else:
        cs = _grid_from_args(args, what="t")
    n = args.n
    rows = []
    for c in cs:
        u = closed_form.slowdown_u(c)
        d_closed = closed_form.expected_distance(n, c / n) / n
        row = {
            "c": c,
            "u_c": u,
            "d_over_n_closed": d_closed,
        }
        if args.reps >= 2:
            result = simulate.monte_carlo(
                n=n, t=c / n, k_list=(1,), epsilon=args.eps,
                replicas=args.reps, base_seed=args.seed,
            )
            est = result.estimates["d"]
            row["d_over_n_mc"] = est.mean / n
            row["mc_stderr"] = est.stderr / n
            row["replicas"] = est.replicas
            row["base_seed"] = est.base_seed
        rows.append(row)
    columns = list(rows[0].keys())
    _write_output(args, "slowdown", columns, rows)
    return 0


# -- parser --------------------------------------------------------------


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t", type=float, default=None, help="single time point")
    parser.add_argument("--t-min", type=float, default=None)
    parser.add_argument("--t-max", type=float, default=None)
    parser.add_argument("--t-points", type=int, default=None)
    parser.add_argument("--t-log", action="store_true", help="geometric time grid")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interchange",
        description="Cycle statistics of the random-transposition process on K_n.",
        epilog=f"Set {simulate.THREADS_ENV_VAR} to control Monte Carlo workers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="closed-form expected cycle counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--k-list", default=None, help="comma-separated k values")
    _add_grid_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="cross-route agreement; exit 1 on breach")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--self-test-corrupt", action="store_true", help=argparse.SUPPRESS)
    _add_output_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure1", help="scaled transition curve and giant fraction")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--k", type=int, default=100)
    _add_grid_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("simulate", help="Monte Carlo cycle observables")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--k-list", default=None)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--couple", action="store_true", help="track the coupled graph")
    _add_output_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("transition", help="window width and envelope fit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--f-lo", type=float, default=0.25)
    p.add_argument("--f-hi", type=float, default=0.75)
    p.add_argument("--resolution", type=float, default=1e-3)
    p.add_argument("--big-c", type=float, default=None,
                   help="fail (exit 1) if the fitted constant exceeds this")
    p.add_argument("--small-c", type=float, default=0.125)
    _add_output_flags(p)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("slowdown", help="normalized distance curve")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.05)
    _add_grid_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_slowdown)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
