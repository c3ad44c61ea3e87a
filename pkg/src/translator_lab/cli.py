"""Command-line interface: ``translator-lab <subcommand> [options]``.

Exit codes: 0 success, 2 domain or configuration error, 3 numerical failure,
64 usage error (unknown flag, malformed value).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .errors import ConvergenceError, DomainError, NumericalFailure, Unclassified
from .flow import drift_study, observed_order, translator_drift
from .hermann import (
    Rank2Model,
    VARIANTS,
    offset_point,
    convexity_check,
    curve_residuals,
    equilibrium,
    fan,
    hermann_config,
    select_variant,
    solve_f_and_v,
    stationary_f,
)
from .ode import IntegratorConfig
from .rank1 import (
    classify,
    default_config,
    eta,
    h1_bound,
    psi_rhs,
    region_sign,
    shoot_regular,
    solve_maximal,
    solve_psi,
    sweep,
    sweep_config,
    type_mapping,
)
from .reports import jsonable, read_config, write_csv, write_manifest
from .spaces import RankOneSpace, describe

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

THREADS_ENV = "TRANSLATOR_LAB_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def _floats(text: str) -> list:
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list:
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# ---------------------------------------------------------------------------
# parser


def _common(p, rtol=None, atol=None, y_max=None):
    g = p.add_argument_group("run")
    g.add_argument("--config", help="key = value file (or a previous manifest); flags win")
    g.add_argument("--out", help="CSV output path")
    g.add_argument("--manifest", help="manifest path (default: next to --out)")
    g.add_argument("--rtol", type=float, default=rtol)
    g.add_argument("--atol", type=float, default=atol)
    g.add_argument("--y-max", type=float, default=y_max)
    g.add_argument("--h-init", type=float, default=None)
    g.add_argument("--h-min", type=float, default=None)
    g.add_argument("--max-steps", type=int, default=None)
    g.add_argument("--boundary-guard", type=float, default=None)


def _space_args(p):
    g = p.add_argument_group("space")
    g.add_argument("--kind", default="cp", help="sphere | cp | hp | cayley")
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--a", type=float, default=1.0, help="Cayley plane curvature scale")
    g.add_argument("--coefficient-variant", default="paper", choices=["paper", "rootsum"])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="translator-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("spaces", help="boundary data of a rank-one space")
    _space_args(p)
    _common(p)
    p.set_defaults(func=cmd_spaces)

    p = sub.add_parser("solve", help="maximal profile through an initial condition")
    _space_args(p)
    p.add_argument("--s0", type=float, required=True)
    p.add_argument("--v0", type=float, default=0.0)
    p.add_argument("--dv0", type=float, default=0.0)
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("shoot", help="regular profile leaving the origin or focal end")
    _space_args(p)
    p.add_argument("--end", choices=["origin", "focal"], default="origin")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--v0", type=float, default=0.0)
    _common(p)
    p.set_defaults(func=cmd_shoot)

    p = sub.add_parser("classify", help="translator type of an initial condition")
    _space_args(p)
    p.add_argument("--s0", type=float, required=True)
    p.add_argument("--dv0", type=float, default=0.0)
    _common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="classify a grid of initial conditions")
    _space_args(p)
    p.add_argument("--n-s", type=int, default=41)
    p.add_argument("--n-slope", type=int, default=41)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-shooting", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("phase", help="psi direction field or a psi trajectory (CP^n)")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--x-min", type=float, default=0.05)
    p.add_argument("--x-max", type=float, default=5.0)
    p.add_argument("--psi-min", type=float, default=-5.0)
    p.add_argument("--psi-max", type=float, default=5.0)
    p.add_argument("--nx", type=int, default=40)
    p.add_argument("--npsi", type=int, default=40)
    p.add_argument("--x0", type=float, default=None, help="integrate a trajectory from here")
    p.add_argument("--psi0", type=float, default=None)
    _common(p)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("flowcheck", help="evolve a regular profile by the flow")
    _space_args(p)
    p.add_argument("--end", choices=["origin", "focal"], default="origin")
    p.add_argument("--lo", type=float, default=0.1, help="left end as a fraction of alpha")
    p.add_argument("--hi", type=float, default=0.6, help="right end as a fraction of alpha")
    p.add_argument("--T", type=float, default=0.5)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--refine", type=int, default=0, help="extra halvings for an order estimate")
    _common(p)
    p.set_defaults(func=cmd_flowcheck)

    p = sub.add_parser("hermann", help="rank-two curves, F_hat and V reconstruction")
    p.add_argument("mode", nargs="?", choices=["curve", "fan"], default="curve")
    p.add_argument("--layout", default="A1xA1", help="A1xA1 | A2 | B2 | G2")
    p.add_argument("--multiplicities", type=_ints, default=None)
    p.add_argument("--scales", type=_floats, default=None)
    p.add_argument("--variant", choices=["auto", *VARIANTS], default="auto")
    p.add_argument("--x0", type=_floats, default=None)
    p.add_argument("--offset", type=float, default=0.3,
                   help="default start: this fraction of the way from the equilibrium to a wall")
    p.add_argument("--F0", type=float, default=None)
    p.add_argument("--V0", type=float, default=0.0)
    p.add_argument("--t-end", type=float, default=-0.1)
    p.add_argument("--n-curves", type=int, default=10)
    p.add_argument("--radius", type=float, default=1e-2)
    _common(p)
    p.set_defaults(func=cmd_hermann)
    return parser


# ---------------------------------------------------------------------------
# helpers


def _integrator(args, base: IntegratorConfig) -> IntegratorConfig:
    changes = {}
    for flag, key in (
        ("rtol", "rtol"), ("atol", "atol"), ("y_max", "y_max"), ("h_init", "h_init"),
        ("h_min", "h_min"), ("max_steps", "max_steps"), ("boundary_guard", "boundary_guard"),
    ):
        v = getattr(args, flag, None)
        if v is not None:
            changes[key] = v
    return base.replace(**changes) if changes else base


def _space(args) -> RankOneSpace:
    return RankOneSpace.make(args.kind, args.n, a=args.a, coefficient_variant=args.coefficient_variant)


def _workers(requested: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    w = max(1, int(requested))
    if cap:
        try:
            w = min(w, max(1, int(cap)))
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {cap!r}")
    return w


def _manifest_path(args) -> Optional[Path]:
    if args.manifest:
        return Path(args.manifest)
    if args.out:
        out = Path(args.out)
        return out.with_name(out.stem + ".manifest.json")
    return None


def _echo(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func",)}


def _finish(args, payload: dict) -> int:
    payload = {"command": args.command, "config": _echo(args), **payload}
    path = _manifest_path(args)
    if path is not None:
        write_manifest(path, payload, __version__)
    summary = {k: v for k, v in payload.items() if k != "config"}
    print(json.dumps(jsonable(summary), indent=2))
    return EXIT_OK


def _profile_rows(tr):
    return [(s, v, p) for s, (v, p) in zip(tr.t, tr.y)]


# ---------------------------------------------------------------------------
# commands


def cmd_spaces(args) -> int:
    sp = _space(args)
    info = describe(sp)
    info["s_star"] = info["h_zero"]
    return _finish(args, {"space": info, "diagnostics": info["diagnostics"]})


def _profile_payload(tr):
    rep = tr.report()
    return {
        "space": tr.space.as_dict(),
        "alpha_numeric": tr.space.alpha,
        "report": rep,
        "events": {"left": rep["left_event"], "right": rep["right_event"]},
        "classification": rep["type"],
        "type_mapping": type_mapping(),
        "diagnostics": [dict(d) for d in tr.space.boundary.diagnostics],
    }


def cmd_solve(args) -> int:
    sp = _space(args)
    tr = solve_maximal(sp, args.s0, args.v0, args.dv0, _integrator(args, default_config()))
    if args.out:
        write_csv(args.out, ["s", "V", "dV"], _profile_rows(tr))
    return _finish(args, _profile_payload(tr))


def cmd_shoot(args) -> int:
    sp = _space(args)
    tr = shoot_regular(sp, args.end, _integrator(args, default_config()), eps=args.eps, V0=args.v0)
    if args.out:
        write_csv(args.out, ["s", "V", "dV"], _profile_rows(tr))
    return _finish(args, _profile_payload(tr))


def cmd_classify(args) -> int:
    sp = _space(args)
    tr = solve_maximal(sp, args.s0, 0.0, args.dv0, _integrator(args, default_config()))
    payload = _profile_payload(tr)
    if args.out:
        rep = payload["report"]
        write_csv(
            args.out,
            ["s0", "dV0", "left_behavior", "right_behavior", "type"],
            [(args.s0, args.dv0, rep["left_behavior"], rep["right_behavior"], rep["type"])],
        )
    return _finish(args, payload)


def cmd_sweep(args) -> int:
    sp = _space(args)
    from .rank1 import default_grids

    s_grid, p_grid = default_grids(sp, args.n_s, args.n_slope)
    res = sweep(
        sp, s_grid, p_grid, _integrator(args, sweep_config()),
        include_shooting=not args.no_shooting, workers=_workers(args.workers),
    )
    if args.out:
        rows = []
        for i, s in enumerate(res.s_grid):
            for j, p in enumerate(res.slope_grid):
                rows.append((
                    s, p, res.labels[i, j], res.left[i, j], res.right[i, j],
                    res.left_location[i, j], res.right_location[i, j],
                ))
        write_csv(
            args.out,
            ["s0", "dV0", "type", "left", "right", "left_location", "right_location"],
            rows,
        )
    return _finish(args, {
        "space": sp.as_dict(),
        "alpha_numeric": sp.alpha,
        "counts": res.counts,
        "types_present": sorted(res.types_present),
        "shooting": res.shooting,
        "representatives": res.representatives,
        "type_mapping": type_mapping(),
        "diagnostics": [dict(d) for d in sp.boundary.diagnostics],
    })


def cmd_phase(args) -> int:
    n = args.n
    if n < 1:
        raise DomainError("n must be >= 1")
    if args.x0 is not None:
        if args.psi0 is None:
            raise DomainError("--x0 needs --psi0")
        tr = solve_psi(n, args.x0, args.psi0, _integrator(args, default_config()))
        bounded = args.x0 < math.sqrt(2 * n - 1) and args.psi0 > eta(n, args.x0)

        def bound(x):
            return h1_bound(n, x, args.x0, args.psi0) if bounded and x <= args.x0 else math.nan

        rows = [(x, y[0], bound(x)) for x, y in zip(tr.t, tr.y)]
        if args.out:
            write_csv(args.out, ["x", "psi", "h1_bound"], rows)
        return _finish(args, {
            "n": n,
            "ic": {"x0": args.x0, "psi0": args.psi0},
            "events": {
                "left": tr.left_event.as_dict(),
                "right": tr.right_event.as_dict(),
            },
        })
    if not (0 < args.x_min < args.x_max and args.psi_min < args.psi_max):
        raise DomainError("need 0 < x-min < x-max and psi-min < psi-max")
    xs = np.linspace(args.x_min, args.x_max, args.nx)
    ps = np.linspace(args.psi_min, args.psi_max, args.npsi)
    x_star = math.sqrt(2 * n - 1)
    rows = []
    for x in xs:
        e = eta(n, x) if x != x_star else math.inf
        for p in ps:
            try:
                sgn = region_sign(n, x, p)
            except DomainError:
                sgn = 0
            rows.append((x, p, psi_rhs(n, x, p), e, sgn))
    if args.out:
        write_csv(args.out, ["x", "psi", "psi_rhs", "eta", "region_sign"], rows)
    return _finish(args, {"n": n, "x_star": x_star, "n_points": len(rows)})


def cmd_flowcheck(args) -> int:
    from .flow import flow_config

    sp = _space(args)
    tr = shoot_regular(sp, args.end, default_config())
    alpha = sp.alpha
    interval = (args.lo * alpha, args.hi * alpha)
    cfg = _integrator(args, flow_config())
    dev, res = translator_drift(
        sp, tr, args.T, interval=interval, n_points=args.points, config=cfg, return_result=True
    )
    payload = {
        "space": sp.as_dict(),
        "profile_type": classify(tr).value,
        "interval": list(interval),
        "T": args.T,
        "deviation": dev,
        "n_steps": res.n_steps,
    }
    if args.refine > 0:
        sizes = [(args.points - 1) * 2**k + 1 for k in range(args.refine + 1)]
        errs = drift_study(sp, tr, args.T, sizes=sizes, interval=interval, config=cfg)
        payload["refinement"] = {"points": sizes, "deviation": errs, "order": observed_order(errs)}
    if args.out:
        write_csv(args.out, ["s", "u_final", "u_expected", "abs_err"], res.to_rows())
    return _finish(args, payload)


def _curve_summary(ct):
    pde, quad = curve_residuals(ct)
    return {
        "stop_reason": ct.stop_reason,
        "t_range": [float(ct.t[0]), float(ct.t[-1])],
        "events": [e.as_dict() if e else None for e in ct.events],
        "max_pde_residual": float(np.max(np.abs(pde))) if len(pde) else None,
        "max_quadrature_error": float(np.max(np.abs(quad))) if len(quad) else None,
    }


def cmd_hermann(args) -> int:
    model = Rank2Model.from_layout(args.layout, args.multiplicities, args.scales)
    cfg = _integrator(args, hermann_config())
    xhat = equilibrium(model)
    f_stat = stationary_f(model, xhat)
    selection = select_variant(model, config=cfg)
    variant = selection["selected"] if args.variant == "auto" else args.variant
    F0 = f_stat if args.F0 is None else args.F0
    payload = {
        "model": model.as_dict(),
        "equilibrium": xhat,
        "stationary_f": f_stat,
        "variant_selection": selection,
        "variant": variant,
        "exponent": 3 if variant == "cubic" else 2,
        "convexity_check": convexity_check(model, rng=0),
    }
    header = ["t", "x1", "x2", "Fhat", "V"]
    if args.mode == "curve":
        x0 = np.asarray(args.x0) if args.x0 else offset_point(model, xhat, args.offset)
        ct = solve_f_and_v(model, x0, F0, args.V0, variant, cfg, t_span=(0.0, args.t_end))
        payload["x0"] = x0
        payload["curve"] = _curve_summary(ct)
        if args.out:
            write_csv(args.out, header, ct.rows())
    else:
        curves = fan(model, args.n_curves, args.radius, (0.0, args.t_end), variant,
                     args.V0, F0, cfg)
        payload["curves"] = [_curve_summary(c) for c in curves]
        if args.out:
            out = Path(args.out)
            for k, c in enumerate(curves):
                write_csv(out.with_name(f"{out.stem}_{k:03d}{out.suffix or '.csv'}"), header, c.rows())
    return _finish(args, payload)


# ---------------------------------------------------------------------------
# entry point


def _config_path(argv) -> Optional[str]:
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def _convert(act, key, raw):
    if not isinstance(raw, str):
        return raw
    if act.nargs == 0:
        return raw.lower() in ("1", "true", "yes", "on")
    if act.type is None:
        return raw
    try:
        return act.type(raw)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise DomainError(f"config key {key!r}: {exc}") from exc


def _apply_config(parser, argv):
    """Merge a ``--config`` file under the command-line flags, then parse."""
    path = _config_path(argv)
    if path is None:
        return parser.parse_args(argv)
    choices = parser._subparsers._group_actions[0].choices
    command = next((a for a in argv if a in choices), None)
    if command is None:
        return parser.parse_args(argv)
    sub = choices[command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in read_config(path).items():
        key = key.replace("-", "_")
        if key in ("command", "func", "config"):
            continue
        act = actions.get(key)
        if act is None:
            raise DomainError(f"unknown config key {key!r} for {command}")
        defaults[key] = _convert(act, key, raw)
    for a in sub._actions:
        if a.dest in defaults:
            a.required = False
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except UsageError:
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericalFailure, ConvergenceError, Unclassified) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
