"""Command-line front end.

Subcommands ``profile``, ``curvature``, ``verify``, ``isoperimetric`` and
``foliation`` write CSV (one header row, 17 significant digits, ``\\n`` line
endings) or a JSON array of objects.

Exit codes: 0 pass, 1 verification failure, 2 configuration error,
3 domain or signature error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import global_analysis as ga
from . import verification
from .curvature import (
    curvature_sample,
    exp_demo_closed_form,
    exp_demo_field,
    hyperboloid_field,
    radial_field,
    slice_field,
)
from .errors import DomainError, ParameterError, SignatureError, SingularPointError
from .hyperbolic_ball import check_dimension
from .radial_profile import ProfileParams, Signature, evaluate, ode_residual

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

FAMILIES = ("radial", "radial-riemannian", "radial-lorentzian", "hyperboloid", "exp-demo", "slice")
EXP_DEMO_RANGE = (-5.0, 3.0)
FOLIATION_RADII = (0.5, 1.0, 2.0)


@dataclass
class RunConfig:
    command: str
    m: int = 2
    c_div: float = 1.0
    signature: Signature = Signature.RIEMANNIAN
    branch: int = 1
    family: str = "radial"
    k: int = 1
    r_max: float | None = None
    steps: int = 10
    grid: int = 17
    fd_step: float | None = None
    tol: float | None = None
    suite: tuple = ("all",)
    mode: str = "vary_d"
    fmt: str = "csv"
    out: str | None = None

    def validate(self) -> "RunConfig":
        check_dimension(self.m)
        if not math.isfinite(self.c_div):
            raise ParameterError("--c must be finite")
        if self.steps < 1 or self.grid < 1:
            raise ParameterError("--steps and --grid must be positive")
        if self.r_max is not None and not self.r_max > 0:
            raise ParameterError("--r-max must be positive")
        if self.fd_step is not None and not self.fd_step > 0:
            raise ParameterError("--fd-step must be positive")
        if self.tol is not None and not self.tol >= 0:
            raise ParameterError("--tol must be non-negative")
        if self.family == "radial-riemannian":
            self.signature = Signature.RIEMANNIAN
        elif self.family == "radial-lorentzian":
            self.signature = Signature.LORENTZIAN
        if self.command in ("profile", "isoperimetric") or (
            self.command == "curvature" and self.family.startswith("radial")
        ) or (self.command == "foliation" and self.mode == "vary_d"):
            self.params()
        return self

    def params(self) -> ProfileParams:
        return ProfileParams(self.m, self.c_div, self.signature, self.branch)


def fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _json_value(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{k: _json_value(v) for k, v in row.items()} for row in rows], indent=1) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt_value(row.get(k)) for k in header])
    return buf.getvalue()


# -- subcommands -------------------------------------------------------------


def cmd_profile(cfg: RunConfig):
    params = cfg.params()
    r_max = 5.0 if cfg.r_max is None else cfg.r_max
    tol = verification.QUAD_TOL if cfg.tol is None else cfg.tol
    rows = []
    for r in np.linspace(0.0, r_max, cfg.steps + 1):
        e = evaluate(params, r, tol)
        res = ode_residual(params, r) if r > 0 else None
        rows.append(
            {"r": e.r, "I": e.I, "u": e.u, "w": e.w, "phi": e.phi, "w_prime": e.w_prime, "ode_residual": res}
        )
    return rows, EXIT_OK, None


def _curvature_field(cfg: RunConfig):
    fam = cfg.family
    if fam.startswith("radial"):
        params = cfg.params()
        return radial_field(params), params.c_div
    if fam == "hyperboloid":
        return hyperboloid_field(cfg.k, cfg.m, cfg.c_div), cfg.c_div
    if fam == "exp-demo":
        return exp_demo_field(), None
    if fam == "slice":
        return slice_field(cfg.c_div, cfg.m, signature=cfg.signature), 0.0
    raise ParameterError(f"unknown family {fam!r}")


def cmd_curvature(cfg: RunConfig):
    fld, target = _curvature_field(cfg)
    m = fld.m
    if cfg.family == "exp-demo":
        lo, hi = EXP_DEMO_RANGE
        points = [np.array([t, 0.0]) for t in np.linspace(lo, hi, cfg.grid)]
    elif cfg.family == "hyperboloid":
        r_max = 1.0 if cfg.r_max is None else cfg.r_max
        points = [np.full(m, t / math.sqrt(m)) for t in np.linspace(-r_max, r_max, cfg.grid)]
    else:
        r_max = 3.0 if cfg.r_max is None else cfg.r_max
        points = [verification.ball_point(r, m) for r in np.linspace(0.0, r_max, cfg.grid)]
    rows = []
    deviation = 0.0
    for x in points:
        s = curvature_sample(fld, x, cfg.fd_step)
        row = {f"x{i + 1}": v for i, v in enumerate(s.x)}
        row.update(
            grad_norm=s.grad_norm,
            b_eig=s.b_eig,
            b_grad=s.b_grad,
            mc_scalar=s.mc_scalar,
            h_norm=s.h_norm,
            hess_norm=s.hess_norm,
        )
        ref = exp_demo_closed_form(float(x[0])) if cfg.family == "exp-demo" else target
        deviation = max(deviation, abs(s.mc_scalar - ref))
        rows.append(row)
    tol = verification.FD_TOL if cfg.tol is None else cfg.tol
    label = "closed form" if cfg.family == "exp-demo" else "c"
    note = f"max |mc_scalar - {label}| = {deviation:.3e} (tol {tol:.1e})"
    return rows, EXIT_OK if deviation <= tol else EXIT_FAIL, note


def cmd_verify(cfg: RunConfig):
    reports = verification.run_suites(cfg.suite, cfg.tol)
    rows = [r.as_dict() for r in reports]
    failed = [r.check for r in reports if not r.passed]
    note = f"{len(reports) - len(failed)}/{len(reports)} checks passed"
    if failed:
        note += "; failed: " + ", ".join(failed)
    return rows, EXIT_FAIL if failed else EXIT_OK, note


def cmd_isoperimetric(cfg: RunConfig):
    params = cfg.params()
    r_max = 5.0 if cfg.r_max is None else cfg.r_max
    rows = []
    ok = True
    for R in np.linspace(r_max / cfg.steps, r_max, cfg.steps):
        if params.lorentzian:
            rep = ga.theorem15_check(params.m, params.c_div, R)
        else:
            rep = ga.theorem11_check(params.m, params.c_div, R)
        ok &= rep.holds
        rows.append(
            {
                "check": rep.check,
                "m": rep.m,
                "c_div": rep.c_div,
                "c_norm": rep.c_norm,
                "signature": rep.signature,
                "R": rep.R,
                "lhs": rep.lhs,
                "rhs": rep.rhs,
                "ratio": rep.ratio,
                "slack": rep.slack,
                "b_D": rep.b_D,
            }
        )
    return rows, EXIT_OK if ok else EXIT_FAIL, None


def cmd_foliation(cfg: RunConfig):
    radii = FOLIATION_RADII if cfg.r_max is None else tuple(np.linspace(cfg.r_max / cfg.steps, cfg.r_max, cfg.steps))
    if cfg.mode == "vary_d":
        grid = np.linspace(-1.0, 1.0, cfg.grid)
        rep = ga.foliation_check(cfg.m, cfg.c_div, cfg.signature, "vary_d", radii=radii, grid=grid)
    else:
        top = cfg.m - 1.0 if cfg.signature is Signature.RIEMANNIAN else max(abs(cfg.c_div), 1.0)
        grid = np.linspace(-top, top, cfg.grid)
        rep = ga.foliation_check(cfg.m, None, cfg.signature, "vary_c", radii=radii, grid=grid)
    rows = []
    prev: dict = {}
    for c, d, x, r, f in rep.samples:
        sep = f - prev[x] if x in prev else None
        prev[x] = f
        row = {"c": c, "d": d}
        row.update({f"x{i + 1}": v for i, v in enumerate(x)})
        row.update(r=r, f=f, separation=sep)
        rows.append(row)
    note = f"monotone={rep.monotone} min_separation={rep.min_separation:.6g}"
    if cfg.mode == "vary_c":
        note += f" min_dc={rep.min_derivative:.6g}"
    return rows, EXIT_OK if rep.holds else EXIT_FAIL, note


COMMANDS = {
    "profile": cmd_profile,
    "curvature": cmd_curvature,
    "verify": cmd_verify,
    "isoperimetric": cmd_isoperimetric,
    "foliation": cmd_foliation,
}


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=2, help="base dimension (default 2)")
    common.add_argument("--c", type=float, default=1.0, dest="c_div", help="divergence-form constant c")
    common.add_argument("--signature", choices=[s.value for s in Signature], default="riemannian")
    common.add_argument("--branch", choices=["plus", "minus"], default="plus")
    common.add_argument("--r-max", type=float, default=None)
    common.add_argument("--steps", type=int, default=10)
    common.add_argument("--grid", type=int, default=17)
    common.add_argument("--fd-step", type=float, default=None, help="absolute finite-difference step")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--format", choices=["csv", "json"], default="csv", dest="fmt")
    common.add_argument("--out", default=None, help="output path (default: standard output)")

    parser = argparse.ArgumentParser(prog="cmcgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("profile", parents=[common], help="tabulate I, u, w, phi, w' and the ODE residual")
    p = sub.add_parser("curvature", parents=[common], help="mean curvature samples for a family")
    p.add_argument("--family", choices=FAMILIES, default="radial")
    p.add_argument("--k", type=int, default=1, help="hyperboloid: number of active coordinates")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", choices=list(verification.SUITES) + ["all"])
    sub.add_parser("isoperimetric", parents=[common], help="isoperimetric bounds on geodesic balls")
    p = sub.add_parser("foliation", parents=[common], help="leaf samples of the vary-d / vary-c foliations")
    p.add_argument("--mode", choices=["vary_d", "vary_c"], default="vary_d")
    return parser


def parse_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command,
        m=ns.m,
        c_div=ns.c_div,
        signature=Signature(ns.signature),
        branch=1 if ns.branch == "plus" else -1,
        family=getattr(ns, "family", "radial"),
        k=getattr(ns, "k", 1),
        r_max=ns.r_max,
        steps=ns.steps,
        grid=ns.grid,
        fd_step=ns.fd_step,
        tol=ns.tol,
        suite=tuple(getattr(ns, "suite", None) or ("all",)),
        mode=getattr(ns, "mode", "vary_d"),
        fmt=ns.fmt,
        out=ns.out,
    )


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        cfg.validate()
        rows, code, note = COMMANDS[cfg.command](cfg)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, SignatureError, SingularPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = render(rows, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if note:
        print(note, file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
