"""Command-line front end: every computation and verification as a
subcommand with machine-readable output.

Output contract (see docs/schemas.md): CSV starts with '#'-prefixed
metadata lines, then a header row; JSON is {"meta": ..., "data": ...};
"table" is aligned text for humans.  Exit codes: 0 success, 1 failed
verification, 2 flag or domain errors.  All configuration is by flags,
never environment, so recorded invocations replay bit-identically.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from . import coherent as ch
from . import limits as lm
from . import verify as vf
from .numerics import QuadratureError, SeriesError
from .spectrum import (ConfigurationError, PhysicalConfig, Sector,
                       continuum_label, critical_index, energy_curved,
                       energy_flat_bound, energy_flat_continuum,
                       gen_factorial_flat, gen_number_curved, gen_number_flat,
                       spectral_index)
from .wavefunctions import (curved_norm_diagnostic, radial_curved,
                            radial_flat_bound, radial_flat_continuum)

_FORMATS = ("json", "csv", "table")


def _parse_range(text: str) -> list[int]:
    """'0..5' -> [0, 1, ..., 5]; '4' -> [4]."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo_i, hi_i + 1))
    return [int(text)]


def _parse_floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _parse_grid(text: str) -> np.ndarray:
    """'start:stop:count' -> linspace."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec {text!r} is not start:stop:count")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("grid count must be >= 1")
    return np.linspace(start, stop, count)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j".replace("+", "+", 1)
    return str(value)


def _emit(rows: list[dict], meta: dict, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump({"meta": meta, "data": rows}, stream, default=_fmt)
        stream.write("\n")
        return
    header = list(rows[0].keys()) if rows else []
    if fmt == "csv":
        for key, val in meta.items():
            stream.write(f"# {key}: {val}\n")
        stream.write(",".join(header) + "\n")
        for row in rows:
            stream.write(",".join(_fmt(row[h]) for h in header) + "\n")
        return
    widths = {h: max(len(h), *(len(_fmt(r[h])) for r in rows)) if rows else len(h)
              for h in header}
    stream.write("  ".join(h.ljust(widths[h]) for h in header) + "\n")
    for row in rows:
        stream.write("  ".join(_fmt(row[h]).ljust(widths[h]) for h in header) + "\n")


def _meta(args, command: str) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items())
             if k not in ("func", "output") and v is not None}
    return {"version": __version__, "command": command,
            "flags": json.dumps(flags, default=str, sort_keys=True)}


def _cfg_from(args, need_R: bool = False) -> PhysicalConfig:
    R = getattr(args, "R", None)
    if need_R and R is None:
        raise ConfigurationError("this command requires --R")
    return PhysicalConfig(omega=args.omega, Z=args.Z, R=R)


# ----------------------------------------------------------------------
# subcommand handlers

def _cmd_spectrum(args) -> int:
    sec = Sector(args.ell)
    rows = []
    if args.space == "curved":
        cfg = _cfg_from(args, need_R=True)
        for n in _parse_range(args.n):
            idx = spectral_index(n, sec)
            g = gen_number_curved(n, sec, cfg)
            rows.append({"n": n, "N": idx.N,
                         "energy": energy_curved(idx, sec, cfg),
                         "gen_value": g.value, "gen_factorial": g.factorial})
        meta = _meta(args, "spectrum")
        meta["critical_index"] = repr(critical_index(sec, cfg))
    else:
        cfg = _cfg_from(args)
        for n in _parse_range(args.n):
            idx = spectral_index(n, sec)
            g = gen_number_flat(n, sec)
            rows.append({"n": n, "N": idx.N,
                         "energy": energy_flat_bound(idx, sec, cfg),
                         "gen_value": g.value, "gen_factorial": g.factorial})
        meta = _meta(args, "spectrum")
    if args.k:
        for k in _parse_floats(args.k):
            lbl = continuum_label(k, cfg)
            rows.append({"n": "", "N": "",
                         "energy": energy_flat_continuum(lbl),
                         "gen_value": lbl.eps, "gen_factorial": ""})
    _emit(rows, meta, args.output, sys.stdout)
    return 0


def _cmd_states(args) -> int:
    sec = Sector(args.ell)
    rows = []
    if args.space == "curved":
        cfg = _cfg_from(args, need_R=True)
        idx = spectral_index(args.n, sec)
        grid = _parse_grid(args.chi_grid if args.chi_grid else "0:3.14159:101")
        for chi in grid:
            w = radial_curved(idx, sec, cfg, float(chi),
                              normalized=not args.raw)
            rows.append({"chi": float(chi), "re": w.real, "im": w.imag,
                         "abs": abs(w)})
        meta = _meta(args, "states")
        if not args.raw:
            meta["norm_diagnostic"] = repr(curved_norm_diagnostic(args.n, sec, cfg))
    elif args.space == "bound":
        cfg = _cfg_from(args)
        idx = spectral_index(args.n, sec)
        grid = _parse_grid(args.r_grid if args.r_grid else f"0:{20 * cfg.a}:101")
        for r in grid:
            u = radial_flat_bound(idx, sec, cfg, float(r))
            rows.append({"r": float(r), "re": u, "im": 0.0, "abs": abs(u)})
        meta = _meta(args, "states")
    else:
        cfg = _cfg_from(args)
        if args.k_value is None:
            raise ValueError("continuum states require --k-value")
        lbl = continuum_label(args.k_value, cfg)
        grid = _parse_grid(args.r_grid if args.r_grid else f"0:{20 * cfg.a}:101")
        for r in grid:
            v = radial_flat_continuum(lbl, sec, cfg, float(r))
            rows.append({"r": float(r), "re": v.real, "im": v.imag,
                         "abs": abs(v)})
        meta = _meta(args, "states")
    _emit(rows, meta, args.output, sys.stdout)
    return 0


def _build_from_args(args, sec: Sector):
    lbl = ch.CoherentLabel(args.s, args.gamma)
    if args.space == "curved":
        cfg = _cfg_from(args, need_R=True)
        return ch.build_curved_state(lbl, sec, cfg, args.tol), cfg
    cfg = _cfg_from(args)
    return ch.build_flat_state(lbl, sec, cfg, args.tol, portion=args.portion), cfg


def _cmd_coherent_build(args) -> int:
    sec = Sector(args.ell)
    state, cfg = _build_from_args(args, sec)
    rows = []
    if isinstance(state, ch.FlatCoherentState):
        coeffs = state.discrete.coeffs
        meta_extra = {"norm_const": repr(state.norm_const),
                      "discrete_weight": repr(float(np.sum(np.abs(coeffs) ** 2))),
                      "continuum_weight": repr(state.continuum.norm_sq()),
                      "eps_cut": repr(state.continuum.eps_cut)}
    else:
        coeffs = state.coeffs
        meta_extra = {"n_max": str(state.n_max),
                      "tail_bound": repr(state.tail_bound)}
    for n, c in enumerate(coeffs):
        rows.append({"n": n, "re": c.real, "im": c.imag, "weight": abs(c) ** 2})
    meta = _meta(args, "coherent build")
    meta.update(meta_extra)
    _emit(rows, meta, args.output, sys.stdout)
    return 0


def _cmd_coherent_overlap(args) -> int:
    sec = Sector(args.ell)
    l1 = ch.CoherentLabel(args.s1, args.gamma1)
    l2 = ch.CoherentLabel(args.s2, args.gamma2)
    if args.space == "curved":
        cfg = _cfg_from(args, need_R=True)
        a = ch.build_curved_state(l1, sec, cfg, args.tol)
        b = ch.build_curved_state(l2, sec, cfg, args.tol)
    else:
        cfg = _cfg_from(args)
        a = ch.build_flat_state(l1, sec, cfg, args.tol, portion=args.portion)
        b = ch.build_flat_state(l2, sec, cfg, args.tol, portion=args.portion)
    ov = ch.overlap(a, b)
    rows = [{"re": ov.real, "im": ov.imag, "abs": abs(ov)}]
    _emit(rows, _meta(args, "coherent overlap"), args.output, sys.stdout)
    return 0


def _cmd_coherent_evolve(args) -> int:
    sec = Sector(args.ell)
    state, cfg = _build_from_args(args, sec)
    evolved = ch.evolve(state, args.t, args.offset)
    norm = abs(ch.overlap(evolved, evolved))
    space = args.space if args.space == "curved" else f"flat_{args.portion}"
    resid = ch.temporal_stability_residual(
        ch.CoherentLabel(args.s, args.gamma), sec, space, args.t,
        args.offset, cfg, args.tol)
    rows = [{"t": args.t, "offset": args.offset, "norm": norm,
             "stability_residual": resid}]
    _emit(rows, _meta(args, "coherent evolve"), args.output, sys.stdout)
    return 0


def _cmd_coherent_verify(args) -> int:
    sec = Sector(args.ell)
    lbl = ch.CoherentLabel(args.s, args.gamma)
    rows = []
    worst = 0.0
    if args.check == "normalization":
        state, cfg = _build_from_args(args, sec)
        measured = abs(abs(ch.overlap(state, state)) - 1.0)
        rows.append({"check": "normalization", "measured": measured,
                     "tolerance": args.tol_check})
        worst = measured
    elif args.check == "stability":
        space = args.space if args.space == "curved" else f"flat_{args.portion}"
        cfg = _cfg_from(args, need_R=args.space == "curved")
        measured = ch.temporal_stability_residual(lbl, sec, space, args.t,
                                                  args.offset, cfg, args.tol)
        rows.append({"check": "stability", "measured": measured,
                     "tolerance": args.tol_check})
        worst = measured
    elif args.check == "action":
        space = args.space if args.space == "curved" else f"flat_{args.portion}"
        cfg = _cfg_from(args, need_R=args.space == "curved")
        res = ch.action_identity_residual(lbl, sec, space, cfg, args.tol)
        rows.append({"check": "action_lhs", "measured": res["lhs"],
                     "tolerance": ""})
        rows.append({"check": "action_rhs", "measured": res["rhs"],
                     "tolerance": ""})
        measured = abs(res["residual"])
        if space == "flat_combined":
            predicted = ch.predicted_combined_action_residual(lbl.J, sec, cfg)
            rows.append({"check": "action_residual_predicted",
                         "measured": predicted, "tolerance": ""})
            measured = abs(res["residual"] - predicted) / predicted
        rows.append({"check": "action_residual", "measured": measured,
                     "tolerance": args.tol_check})
        worst = measured
    else:
        residuals = ch.moment_residuals(ch.swave_weight(), sec, args.n_max)
        for n, r in enumerate(residuals):
            rows.append({"check": f"moment_{n}", "measured": r,
                         "tolerance": args.tol_check})
        worst = max(abs(r) for r in residuals)
    _emit(rows, _meta(args, "coherent verify"), args.output, sys.stdout)
    return 0 if worst <= args.tol_check else 1


def _report_rows(rep: lm.ConvergenceReport) -> list[dict]:
    return [{"R": R, "residual": r} for R, r in zip(rep.R_values, rep.residuals)]


def _cmd_limits(args) -> int:
    sec = Sector(args.ell)
    cfg = PhysicalConfig(omega=args.omega, Z=args.Z)
    R_list = _parse_floats(args.R_list)
    if args.study == "energy":
        rep = lm.bound_energy_convergence(args.n, sec, cfg, R_list)
    elif args.study == "factorial":
        rep = lm.factorial_convergence(args.n, sec, cfg, R_list)
    elif args.study == "continuum-energy":
        rep = lm.continuum_energy_convergence(args.k_value, sec, cfg, R_list)
    elif args.study == "wavefunction":
        grid = _parse_grid(args.r_grid if args.r_grid
                           else f"{0.1 * cfg.a}:{5 * cfg.a}:25")
        rep = lm.bound_wavefunction_convergence(args.n, sec, cfg, grid, R_list)
    else:
        grid = _parse_grid(args.r_grid if args.r_grid
                           else f"{0.5 * cfg.a}:{10 * cfg.a}:40")
        rep = lm.continuum_wavefunction_convergence(args.k_value, sec, cfg,
                                                    grid, R_list)
    meta = _meta(args, f"limits {args.study}")
    meta["fitted_order"] = repr(rep.fitted_order)
    meta["target_order"] = repr(rep.target_order)
    meta["r_squared"] = repr(rep.r_squared)
    for key, val in rep.details.items():
        meta[key] = json.dumps(val, default=_fmt)
    _emit(_report_rows(rep), meta, args.output, sys.stdout)
    return 0


def _cmd_verify(args) -> int:
    numbers = None
    if args.criteria:
        numbers = sorted({int(x) for x in args.criteria.split(",")})
    results = vf.run_suite(numbers)
    rows = [{"criterion": r.number, "name": r.name, "measured": r.measured,
             "tolerance": r.tolerance, "pass": r.passed,
             "runtime_s": round(r.runtime_s, 3)} for r in results]
    _emit(rows, _meta(args, "verify"), args.output, sys.stdout)
    if args.output != "table":
        for r in results:
            print(r.line(), file=sys.stderr)
    return 0 if all(r.passed for r in results) else 1


# ----------------------------------------------------------------------
# parser

def _add_common(p, curved_ok: bool = True):
    p.add_argument("--omega", type=float, default=0.5,
                   help="coupling energy scale (default 0.5)")
    p.add_argument("--Z", type=float, default=1.0, help="charge number")
    p.add_argument("--ell", type=int, default=0, help="orbital sector")
    if curved_ok:
        p.add_argument("--R", type=float, default=None,
                       help="curvature radius (omit for flat space)")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="working tolerance for series/quadrature")
    p.add_argument("--output", choices=_FORMATS, default="table")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="coulombcs",
        description="Coherent states for the radial Coulomb problem on a "
                    "3-sphere and their flat-space limits.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energy level tables")
    p.add_argument("--curved", dest="space", action="store_const",
                   const="curved")
    p.add_argument("--flat", dest="space", action="store_const", const="flat")
    p.set_defaults(space="flat")
    p.add_argument("--n", default="0..5", help="radial index or range a..b")
    p.add_argument("--k", default=None, help="comma list of continuum wave numbers")
    _add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("states", help="wavefunction value grids")
    p.add_argument("--space", choices=("curved", "bound", "continuum"),
                   required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--k-value", type=float, default=None)
    p.add_argument("--r-grid", default=None, help="start:stop:count")
    p.add_argument("--chi-grid", default=None, help="start:stop:count")
    p.add_argument("--raw", action="store_true",
                   help="skip numerical renormalization (curved only)")
    _add_common(p)
    p.set_defaults(func=_cmd_states)

    pc = sub.add_parser("coherent", help="coherent-state operations")
    csub = pc.add_subparsers(dest="subcommand", required=True)

    def _coherent_common(q):
        q.add_argument("--space", choices=("curved", "flat"), default="flat")
        q.add_argument("--portion",
                       choices=("combined", "discrete", "continuum"),
                       default="combined")
        q.add_argument("--s", type=float, default=0.5)
        q.add_argument("--gamma", type=float, default=0.0)
        _add_common(q)

    q = csub.add_parser("build", help="coefficient tables")
    _coherent_common(q)
    q.set_defaults(func=_cmd_coherent_build)

    q = csub.add_parser("overlap", help="inner product of two states")
    q.add_argument("--space", choices=("curved", "flat"), default="flat")
    q.add_argument("--portion", choices=("combined", "discrete", "continuum"),
                   default="combined")
    q.add_argument("--s1", type=float, required=True)
    q.add_argument("--gamma1", type=float, default=0.0)
    q.add_argument("--s2", type=float, required=True)
    q.add_argument("--gamma2", type=float, default=0.0)
    _add_common(q)
    q.set_defaults(func=_cmd_coherent_overlap)

    q = csub.add_parser("evolve", help="time evolution diagnostics")
    _coherent_common(q)
    q.add_argument("--t", type=float, default=1.0)
    q.add_argument("--offset", choices=("none", "subtract_E0"),
                   default="subtract_E0")
    q.set_defaults(func=_cmd_coherent_evolve)

    q = csub.add_parser("verify", help="single-state residual checks")
    _coherent_common(q)
    q.add_argument("--check",
                   choices=("normalization", "stability", "action", "moments"),
                   required=True)
    q.add_argument("--t", type=float, default=1.0)
    q.add_argument("--offset", choices=("none", "subtract_E0"),
                   default="subtract_E0")
    q.add_argument("--n-max", type=int, default=30)
    q.add_argument("--tol-check", type=float, default=1e-8,
                   help="pass/fail threshold (exit 1 above it)")
    q.set_defaults(func=_cmd_coherent_verify)

    p = sub.add_parser("limits", help="large-radius convergence studies")
    p.add_argument("study", choices=("energy", "factorial", "wavefunction",
                                     "continuum-energy",
                                     "continuum-wavefunction"))
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k-value", type=float, default=0.5)
    p.add_argument("--R-list", default="10,100,1000")
    p.add_argument("--r-grid", default=None, help="start:stop:count")
    _add_common(p, curved_ok=False)
    p.set_defaults(func=_cmd_limits)

    p = sub.add_parser("verify", help="acceptance suite")
    p.add_argument("--suite", choices=("all",), default="all")
    p.add_argument("--criteria", default=None,
                   help="comma list of criterion numbers (default all)")
    p.add_argument("--output", choices=_FORMATS, default="table")
    p.set_defaults(func=_cmd_verify)

    return ap


def run(argv) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ConfigurationError, ArithmeticError,
            QuadratureError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
