"""Command-line front end.

Every subcommand accepts ``--config FILE`` (a JSON object whose keys are option
names, optionally nested under the subcommand name) and ``--out DIR``.  Values
given on the command line override the file, which overrides the defaults.
All energies are absolute (``1/length^2``); summaries also print them in units
of the threshold ``(pi/4a)^2``.

Exit codes: 0 success, 1 failed check (Lemma violations), 2 invalid
configuration, 3 solver failure, 4 inconclusive verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .errors import ConvergenceError, DomainError, InconclusiveError, NoRootError
from .geometry import StripGeometry, derive_frame, threshold

EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_INCONCLUSIVE = 4

#: JSON schema of the ``roots --json`` report.
ROOT_SCHEMA = {
    "type": "object",
    "required": ["command", "config", "s1", "t1", "fraction", "lambda_v0"],
    "properties": {
        "command": {"const": "roots"},
        "config": {"type": "object"},
        "s1": {"$ref": "#/$defs/root"},
        "t1": {"$ref": "#/$defs/root"},
        "fraction": {
            "type": "object",
            "required": ["ratio", "closed_form"],
            "properties": {"ratio": {"type": "number"}, "closed_form": {"type": "number"}},
        },
        "lambda_v0": {
            "type": "object",
            "required": ["absolute", "in_threshold_units"],
            "properties": {"absolute": {"type": "number"}, "in_threshold_units": {"type": "number"}},
        },
    },
    "$defs": {
        "root": {
            "type": "object",
            "required": ["value", "bracket", "residual", "iterations"],
            "properties": {
                "value": {"type": "number"},
                "bracket": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
                "residual": {"type": "number", "minimum": 0},
                "iterations": {"type": "integer", "minimum": 0},
            },
        }
    },
}

DEFAULTS = {
    "roots": {"tol": 1e-12, "a": 1.0},
    "lambda-profile": {"a": 1.0, "eps": 0.0, "theta": float(np.pi / 4), "n_v": 101, "n_mesh": 1000},
    "optimize-theta": {"a": 1.0, "tol": 1e-4, "n_coarse": 128},
    "spectrum-2d": {"a": 1.0, "eps": 0.0, "L": 12.0, "ladder": [32, 64, 128]},
    "critical-eps": {"a": 1.0, "lo": 0.3, "hi": 0.7, "resolution": 0.02, "L": 12.0, "ladder": [32, 64, 128]},
    "hardy-check": {"a": 1.0, "weight": "all", "eps": None, "c": None, "L": 12.0, "ladder": [32, 64, 128]},
    "hc-lemma": {"h": 1.0, "l": 1.0, "delta": 0.25, "n_c": 64, "n_mesh": 1000},
    "hardy-failure": {"a": 1.0, "eps": 0.0, "layout": "non_switched", "n_sequence": 8, "c": 1.0},
}


def _dimless(value, a):
    return value / threshold(a)


def _ladder(s):
    return [int(v) for v in s.split(",")]


def _emit(args, report, summary):
    out = Path(args.out)
    io.write_json(out / f"{args.command}.json", report)
    if args.json:
        print(json.dumps(io.to_jsonable(report), indent=2, sort_keys=True))
    else:
        print(summary)


def cmd_roots(cfg, args):
    from .transcendental import (ImplicitEqParams, fraction_closed_form, fraction_ratio, lambda_v0,
                                 solve_s1, solve_t1)

    s1, t1 = solve_s1(cfg["tol"]), solve_t1(cfg["tol"])
    a = cfg["a"]
    lam = lambda_v0(ImplicitEqParams.at(0.0, np.pi / 4, a), cfg["tol"]).value
    report = {
        "command": "roots", "config": cfg, "s1": s1, "t1": t1,
        "fraction": {"ratio": fraction_ratio(), "closed_form": fraction_closed_form()},
        "lambda_v0": {"absolute": lam, "in_threshold_units": _dimless(lam, a)},
    }
    summary = (f"s1 = {s1.value:.6f} (Hardy constant >= {s1.value * threshold(a):.6g} = s1 (pi/4a)^2, "
               f"residual {s1.residual:.1e}); t1 = {t1.value:.6f} (eps_c >= {t1.value * a:.6g}, "
               f"residual {t1.residual:.1e})")
    _emit(args, report, summary)
    return 0


def cmd_lambda_profile(cfg, args):
    from .schrodinger1d import lambda_profile

    geom = StripGeometry(cfg["a"], cfg["eps"] * cfg["a"])
    frame = derive_frame(geom, cfg["theta"])
    prof = lambda_profile(frame, geom, cfg["n_v"], cfg["n_mesh"], args.threads)
    out = Path(args.out)
    rows = [(v, r.raw[-1], cfg["n_mesh"] * 2 ** (len(r.raw) - 1), r.value) for v, r in prof]
    io.write_csv(out / "lambda_profile.csv", ["parameter", "eigenvalue", "mesh", "extrapolated"], rows)
    io.write_curve(out / "lambda_profile.dat", [r[0] for r in rows], [r[3] for r in rows], ("v", "lambda"))
    vals = np.array([r.value for _, r in prof])
    even = float(np.max(np.abs(vals - vals[::-1])))
    report = {"command": "lambda-profile", "config": cfg, "v0": frame.v0,
              "lambda_v0": vals[-1], "lambda_center": vals[len(vals) // 2],
              "min": float(vals.min()), "evenness_error": even}
    summary = (f"lambda(v0) = {vals[-1]:.8g} ({_dimless(vals[-1], cfg['a']):.6f} thr), "
               f"lambda(0) = {vals[len(vals) // 2]:.8g}, min over profile = {vals.min():.8g}, "
               f"evenness error {even:.1e}")
    _emit(args, report, summary)
    return 0


def cmd_optimize_theta(cfg, args):
    from .optimize import optimal_theta_eps, optimal_theta_hardy

    hardy = optimal_theta_hardy(cfg["a"], cfg["tol"], cfg["n_coarse"], args.threads)
    eps = optimal_theta_eps(cfg["a"], cfg["tol"], cfg["n_coarse"], args.threads)
    out = Path(args.out)
    for name, res in (("hardy", hardy), ("eps", eps)):
        io.write_csv(out / f"theta_scan_{name}.csv", ["theta", "objective"], res.curve)
        io.write_curve(out / f"theta_scan_{name}.dat", *zip(*res.curve), labels=("theta", "objective"))
    report = {"command": "optimize-theta", "config": cfg, "hardy": hardy, "eps": eps}
    summary = (f"Hardy: theta* = {hardy.theta_star:.4f}, max lambda(v0) = {hardy.objective_star:.5f} thr "
               f"({hardy.objective_star * threshold(cfg['a']):.6g}); "
               f"eps_c: theta* = {eps.theta_star:.4f}, bound = {eps.objective_star:.5f} a")
    _emit(args, report, summary)
    return 0


def _solver_cfg(cfg):
    from .laplacian2d import SolverConfig

    return SolverConfig(L=cfg["L"], ladder=tuple(cfg["ladder"]))


def cmd_spectrum2d(cfg, args):
    from .laplacian2d import threshold_gap

    geom = StripGeometry(cfg["a"], cfg["eps"] * cfg["a"])
    rep = threshold_gap(geom, _solver_cfg(cfg))
    report = {"command": "spectrum-2d", "config": cfg, "report": rep}
    summary = (f"eps = {geom.eps:g}: lam_N = {rep.neumann.value:.8g} ({_dimless(rep.neumann.value, geom.a):.5f} thr), "
               f"lam_D = {rep.dirichlet.value:.8g} ({_dimless(rep.dirichlet.value, geom.a):.5f} thr), "
               f"gap = {rep.gap:.3g}, verdict {rep.verdict}")
    _emit(args, report, summary)
    return EXIT_INCONCLUSIVE if rep.verdict == "inconclusive" else 0


def cmd_critical_eps(cfg, args):
    from .laplacian2d import critical_eps

    res = critical_eps(cfg["a"], _solver_cfg(cfg), (cfg["lo"], cfg["hi"]), cfg["resolution"])
    io.write_csv(Path(args.out) / "critical_eps_history.csv",
                 ["eps", "truncation", "extrapolated", "error_bar", "certified"], res.history)
    report = {"command": "critical-eps", "config": cfg, "result": res}
    summary = f"eps_c in [{res.lower:.4f}, {res.upper:.4f}] (a = {cfg['a']:g})"
    _emit(args, report, summary)
    return 0


def cmd_hardy_check(cfg, args):
    from .laplacian2d import HardyWeight, hardy_form_check

    a = cfg["a"]
    cases = {"square": ("indicator_square", 0.0), "rho": ("corollary_rho", 0.0),
             "negative": ("negative_eps_indicator", -0.3)}
    names = list(cases) if cfg["weight"] == "all" else [cfg["weight"]]
    results = {}
    for name in names:
        if name not in cases:
            raise DomainError(f"unknown weight {name!r}")
        kind, eps = cases[name]
        eps = eps if cfg["eps"] is None else cfg["eps"]
        c = cfg["c"] if name != "negative" else None
        results[name] = hardy_form_check(StripGeometry(a, eps * a), HardyWeight(kind, c), _solver_cfg(cfg))
    report = {"command": "hardy-check", "config": cfg, "results": results}
    summary = "; ".join(f"{k} (eps={r.eps:g}): min eig {r.estimate.value:.4g} "
                        f"({_dimless(r.estimate.value, a):.4f} thr) -> {r.verdict}" for k, r in results.items())
    _emit(args, report, summary)
    return EXIT_INCONCLUSIVE if any(r.verdict == "inconclusive" for r in results.values()) else 0


def cmd_hc_lemma(cfg, args):
    from .schrodinger1d import verify_lemma

    rep = verify_lemma(cfg["h"], cfg["l"], cfg["delta"], cfg["n_c"], cfg["n_mesh"], args.threads)
    rows = [(c, v, cfg["n_mesh"] * 4, v) for c, v in zip(rep.c, rep.eigenvalues)]
    io.write_csv(Path(args.out) / "hc_lemma.csv", ["parameter", "eigenvalue", "mesh", "extrapolated"], rows)
    io.write_curve(Path(args.out) / "hc_lemma.dat", rep.c, rep.eigenvalues, ("c", "inf_spec_Hc"))
    report = {"command": "hc-lemma", "config": cfg, "report": rep, "violating_c": [rep.c[i] for i in rep.violations]}
    summary = (f"inf spec(H_0) = {rep.baseline:.10g}; min over c = {min(rep.eigenvalues):.10g}; "
               f"{len(rep.violations)} violations")
    _emit(args, report, summary)
    return 0 if rep.ok else EXIT_FAILED


def cmd_hardy_failure(cfg, args):
    from .laplacian2d import HardyWeight
    from .quadrature_checks import hardy_failure_demo

    geom = StripGeometry(cfg["a"], cfg["eps"] * cfg["a"])
    demo = hardy_failure_demo(geom, HardyWeight("indicator_square", cfg["c"]), cfg["n_sequence"], cfg["layout"])
    rows = [(k + 1, R, q) for k, (R, q) in enumerate(zip(demo.radii, demo.quotients))]
    io.write_csv(Path(args.out) / "hardy_failure.csv", ["k", "radius", "quotient"], rows)
    io.write_curve(Path(args.out) / "hardy_failure.dat", demo.radii, demo.quotients, ("radius", "quotient"))
    report = {"command": "hardy-failure", "config": cfg, "demo": demo,
              "decreasing": demo.decreasing, "final_over_initial": demo.ratio}
    summary = (f"{cfg['layout']}: quotients {demo.quotients[0]:.4g} -> {demo.quotients[-1]:.4g} "
               f"(ratio {demo.ratio:.4f}, decreasing={demo.decreasing})")
    _emit(args, report, summary)
    return 0


COMMANDS = {
    "roots": cmd_roots,
    "lambda-profile": cmd_lambda_profile,
    "optimize-theta": cmd_optimize_theta,
    "spectrum-2d": cmd_spectrum2d,
    "critical-eps": cmd_critical_eps,
    "hardy-check": cmd_hardy_check,
    "hc-lemma": cmd_hc_lemma,
    "hardy-failure": cmd_hardy_failure,
}

HELP = {
    "roots": "s1 and t1 with residuals and brackets (dimensionless; s1 is in units of (pi/4a)^2, t1 in units of a)",
    "lambda-profile": "lowest eigenvalue lambda(v) of the reduced problem for v in [-v0, v0] (energies in 1/length^2)",
    "optimize-theta": "best rotation angle (radians) for the Hardy constant and for the eps_c bound",
    "spectrum-2d": "lowest 2D eigenvalue (1/length^2) with both truncations and the verdict against (pi/4a)^2",
    "critical-eps": "interval containing the critical switch parameter (lengths in units of a on input, absolute on output)",
    "hardy-check": "positivity of -Delta - (pi/4a)^2 - weight on the truncated strip (energies in 1/length^2)",
    "hc-lemma": "sweep of inf spec(H_c) over the bump position c (energies in 1/length^2)",
    "hardy-failure": "Rayleigh quotients of cutoff test functions against an indicator weight (dimensionless)",
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values")
    common.add_argument("--out", default="results", help="output directory (default: results)")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of the summary")
    common.add_argument("--threads", type=int, default=None, help="worker threads for sweeps (default: all cores)")

    parser = argparse.ArgumentParser(prog="dnwaveguide", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name):
        return sub.add_parser(name, parents=[common], help=HELP[name], description=HELP[name])

    p = add("roots")
    p.add_argument("--tol", type=float, help="absolute root tolerance (dimensionless)")
    p.add_argument("--a", type=float, help="strip half-width (length)")

    p = add("lambda-profile")
    p.add_argument("--a", type=float, help="strip half-width (length)")
    p.add_argument("--eps", type=float, help="switch offset in units of a")
    p.add_argument("--theta", type=float, help="rotation angle in (0, pi/3), radians")
    p.add_argument("--n-v", dest="n_v", type=int, help="number of v samples (odd)")
    p.add_argument("--n-mesh", dest="n_mesh", type=int, help="cells of the coarse 1D mesh")

    p = add("optimize-theta")
    p.add_argument("--a", type=float, help="strip half-width (length)")
    p.add_argument("--tol", type=float, help="angle tolerance (radians)")
    p.add_argument("--n-coarse", dest="n_coarse", type=int, help="coarse scan points")

    for name in ("spectrum-2d", "critical-eps", "hardy-check"):
        p = add(name)
        p.add_argument("--a", type=float, help="strip half-width (length)")
        p.add_argument("--L", type=float, help="truncation half-length in units of a")
        p.add_argument("--ladder", type=_ladder, help="comma-separated ny values, doubling (e.g. 32,64,128)")
        if name == "spectrum-2d":
            p.add_argument("--eps", type=float, help="switch offset in units of a")
        if name == "critical-eps":
            p.add_argument("--lo", type=float, help="lower bracket end, units of a")
            p.add_argument("--hi", type=float, help="upper bracket end, units of a")
            p.add_argument("--resolution", type=float, help="bisection resolution, units of a")
        if name == "hardy-check":
            p.add_argument("--weight", choices=["all", "square", "rho", "negative"], help="Hardy weight")
            p.add_argument("--eps", type=float, help="switch offset in units of a (default per weight)")
            p.add_argument("--c", type=float, help="constant c in 1/length^2 (default s1 (pi/4a)^2)")

    p = add("hc-lemma")
    p.add_argument("--h", type=float, help="bump height (1/length^2)")
    p.add_argument("--l", type=float, help="interval length")
    p.add_argument("--delta", type=float, help="bump width as a fraction of l")
    p.add_argument("--n-c", dest="n_c", type=int, help="number of bump positions")
    p.add_argument("--n-mesh", dest="n_mesh", type=int, help="cells of the coarse 1D mesh")

    p = add("hardy-failure")
    p.add_argument("--a", type=float, help="strip half-width (length)")
    p.add_argument("--eps", type=float, help="switch offset in units of a")
    p.add_argument("--layout", choices=["non_switched", "switched"])
    p.add_argument("--n-sequence", dest="n_sequence", type=int, help="number of dyadic cutoffs")
    p.add_argument("--c", type=float, help="height of the indicator weight on (-a, a)^2")
    return parser


def resolve_config(args) -> dict:
    cfg = dict(DEFAULTS[args.command])
    if args.config:
        data = json.loads(Path(args.config).read_text())
        if not isinstance(data, dict):
            raise DomainError("config file must hold a JSON object")
        data = data.get(args.command, data)
        unknown = set(data) - set(cfg)
        if unknown:
            raise DomainError(f"unknown config keys for {args.command}: {sorted(unknown)}")
        cfg.update(data)
    for key in cfg:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    for key in ("tol", "resolution", "a", "h", "l", "L"):
        if key in cfg and not (isinstance(cfg[key], (int, float)) and cfg[key] > 0):
            raise DomainError(f"{key} must be a positive number, got {cfg[key]!r}")
    for key in ("n_v", "n_mesh", "n_coarse", "n_c", "n_sequence"):
        if key in cfg and not (isinstance(cfg[key], int) and cfg[key] > 0):
            raise DomainError(f"{key} must be a positive integer, got {cfg[key]!r}")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg, args)
    except (DomainError, json.JSONDecodeError, OSError, KeyError, TypeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, NoRootError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
