"""Command-line driver: curvature queries, catalog surfaces, theorem checks, FD cross-checks.

Exit codes: 0 pass, 1 verification failure, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import gaussmap
from .algebra import UnimodularSpec, nonunimodular_from_xi_eta
from .classification import THEOREMS, patch_grid_stats, verify_theorem
from .errors import GeometryError
from .geometry import levi_civita, riemann_tensor
from .models import e2tilde_model, e11_model
from .oracle import FDConfig, fd_riemann_frame
from .surfaces import (CATALOG_IDS, PATCH_IDS, catalog_frame_surface, catalog_patch,
                       gauss_curvature, invariant_frame_jet, invariant_surface_jet,
                       tangent_plane_curvature)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    checks: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)
    timing: float = 0.0

    @property
    def status(self) -> str:
        return "PASS" if all(c["passed"] for c in self.checks) else "FAIL"

    def check(self, name, expected, computed, residual, passed):
        self.checks.append({"name": name, "expected": expected, "computed": computed,
                            "residual": float(residual), "passed": bool(passed)})

    def below(self, name, value, tol, expected=0.0):
        r = abs(float(value) - expected)
        self.check(name, expected, float(value), r, r < tol)

    def to_dict(self) -> dict:
        return _plain({"command": self.command, "inputs": self.inputs, "checks": self.checks,
                       "outputs": self.outputs, "status": self.status, "timing": self.timing})

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["command"], d["inputs"], d["checks"], d["outputs"], d["timing"])


def _plain(obj):
    """Convert numpy scalars/arrays, tuples and sets into JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(v) for v in obj)
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return str(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in x.items()) + "}"
    return str(x)


def render_text(d: dict) -> str:
    lines = [f"command={d['command']}"]
    lines += [f"input.{k}={_fmt(v)}" for k, v in d["inputs"].items()]
    for k, v in d["outputs"].items():
        lines.append(f"output.{k}={_fmt(v)}")
    for c in d["checks"]:
        flag = "PASS" if c["passed"] else "FAIL"
        lines.append(f"check[{c['name']}]={flag} expected={_fmt(c['expected'])} "
                     f"computed={_fmt(c['computed'])} residual={_fmt(c['residual'])}")
    lines.append(f"status={d['status']}")
    lines.append(f"timing={d['timing']:.3f}s")
    return "\n".join(lines)


def render(report: Report, fmt: str) -> str:
    d = report.to_dict()
    return json.dumps(d, sort_keys=False) if fmt == "json" else render_text(d)


# --------------------------------------------------------------------------
# flag parsing


def _floats(text: str | None, n: int, flag: str):
    if text is None:
        return None
    try:
        vals = [float(s) for s in text.split(",")]
    except ValueError:
        raise UsageError(f"{flag} expects {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{flag} expects {n} finite comma-separated numbers, got {text!r}")
    return vals


def _need(value, flag):
    if value is None:
        raise UsageError(f"missing required flag {flag}")
    return value


def _group_spec(args):
    uni = _floats(args.unimodular, 3, "--unimodular")
    non = _floats(args.nonunimodular, 2, "--nonunimodular")
    if (uni is None) == (non is None):
        raise UsageError("give exactly one of --unimodular c1,c2,c3 or --nonunimodular xi,eta")
    if uni is not None:
        return UnimodularSpec(*uni), {"unimodular": uni}
    return nonunimodular_from_xi_eta(*non), {"nonunimodular": non}


def _model(kind: str, lam):
    if kind == "e11":
        return e11_model(*lam)
    if kind == "e2tilde":
        return e2tilde_model(*lam)
    raise UsageError(f"unknown model {kind!r}")


# --------------------------------------------------------------------------
# commands


def cmd_curvature(args) -> Report:
    spec, inputs = _group_spec(args)
    conn = levi_civita(spec)
    curv = riemann_tensor(spec)
    rep = Report("curvature", inputs)
    table = {}
    for i in range(3):
        for j in range(3):
            vec = conn.gamma[i, j]
            if np.any(np.abs(vec) > 0):
                table[f"nabla_e{i + 1} e{j + 1}"] = vec
    rep.outputs = {"connection": table, "K12": curv.K12, "K23": curv.K23, "K13": curv.K13,
                   "ricci": curv.ricci}
    off = curv.ricci_matrix() - np.diag(np.diag(curv.ricci_matrix()))
    rep.below("Ricci tensor diagonal in the frame", np.abs(off).max(), 1e-12)
    return rep


def cmd_verify(args) -> Report:
    tid = _need(args.theorem, "--theorem")
    params = {"grid": args.grid}
    if tid in ("5.1", "5.2"):
        params["c"] = _need(_floats(args.c, 3, "--c"), "--c")
    elif tid in ("5.3", "5.4"):
        params["lam"] = _need(_floats(args.lam, 2, "--lambda"), "--lambda")
        if tid == "5.3":
            params.update(c=args.const, a1=args.a1, a2=args.a2)
    else:
        params["xi"] = _need(args.xi, "--xi")
        params["eta"] = _need(args.eta, "--eta")
    tr = verify_theorem(tid, **params)
    rep = Report("verify", {"theorem": tid, **params})
    for c in tr.checks:
        rep.check(c.name, c.expected, c.computed, c.residual, c.passed)
    rep.outputs = tr.details
    return rep


def _surface_patch(args, rep):
    lam = _need(_floats(args.lam, 2, "--lambda"), "--lambda")
    rep.inputs["lambda"] = lam
    patch = catalog_patch(args.id, *lam)
    stats = patch_grid_stats(patch, args.grid, 2.0, collect=bool(args.csv))
    rows = stats.pop("rows", [])
    rep.outputs = stats
    rep.below("max |H_trace|", stats["max_H"], 1e-8)
    rep.below("max vertical residual", stats["max_vertical"], 1e-9)
    if args.id == "thm53-i":
        rep.below("max |K|", stats["max_K"], 1e-10)
    rep.below("max harmonicity residual", stats["max_harmonic_gap"], 1e-9)
    return rows


def _surface_frame(args, rep):
    xi, eta = _need(args.xi, "--xi"), _need(args.eta, "--eta")
    rep.inputs.update(xi=xi, eta=eta)
    spec = catalog_frame_surface(args.id, xi, eta)
    res = invariant_surface_jet(spec)
    rep.check("integrable", True, res.integrable, abs(res.bracket_normal), res.integrable)
    if not res.integrable:
        return []
    jet = invariant_frame_jet(spec)
    curv = riemann_tensor(spec.group)
    K = gauss_curvature(jet, tangent_plane_curvature(curv, jet))
    d = gaussmap.gauss_diagnostics(curv, jet)
    rep.outputs = {"H_norm": res.H_norm, "H_trace": res.H_trace, "K": K, "shape": res.shape,
                   "r1213": d.r1213, "r2123": d.r2123, "cases": d.cases}
    rep.below("vertical residual R1213", d.r1213, 1e-9)
    rep.below("vertical residual R2123", d.r2123, 1e-9)
    rep.below("flat", K, 1e-12)
    if args.id == "nonuni-e23":
        rep.below("H_norm = 1", res.H_norm, 1e-12, expected=1.0)
    else:
        rep.below("totally geodesic", float(np.abs(res.shape).max()), 1e-12)
    # invariant surfaces are sampled at the identity only
    return [(0.0, 0.0, 0.0, 0.0, 0.0, res.H_norm, K, d.r1213, d.r2123)]


def cmd_surface(args) -> Report:
    sid = _need(args.id, "--id")
    if sid not in CATALOG_IDS:
        raise UsageError(f"unknown surface id {sid!r}; expected one of {CATALOG_IDS}")
    rep = Report("surface", {"id": sid, "grid": args.grid})
    rows = _surface_patch(args, rep) if sid in PATCH_IDS else _surface_frame(args, rep)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["u", "v", "x", "y", "z", "H", "K", "r1213", "r2123"])
            for row in rows:
                w.writerow([f"{float(x):.12g}" for x in row])
        rep.outputs["csv"] = args.csv
    return rep


def cmd_oracle(args) -> Report:
    lam = _need(_floats(args.lam, 2, "--lambda"), "--lambda")
    model = _model(args.model, lam)
    rng = np.random.default_rng(args.seed)
    exact = riemann_tensor(model.structure_constants())
    worst, K_fd = 0.0, None
    for p in rng.uniform(-1.0, 1.0, size=(args.samples, 3)):
        R, K = fd_riemann_frame(model, p, FDConfig())
        worst = max(worst, float(np.abs(R - exact.R).max()))
        K_fd = K
    rep = Report("oracle", {"model": args.model, "lambda": lam, "samples": args.samples,
                            "seed": args.seed})
    rep.outputs = {"K_closed_form": exact.sectional, "K_fd_last": K_fd}
    rep.below("max |R_fd - R_frame|", worst, 1e-5)
    return rep


COMMANDS = {"curvature": cmd_curvature, "verify": cmd_verify,
            "surface": cmd_surface, "oracle": cmd_oracle}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmcgauss", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", parents=[common], help="connection and curvature of a group")
    p.add_argument("--unimodular", metavar="C1,C2,C3")
    p.add_argument("--nonunimodular", metavar="XI,ETA")

    p = sub.add_parser("verify", parents=[common], help="check a classification theorem")
    p.add_argument("--theorem", choices=THEOREMS)
    p.add_argument("--c", metavar="C1,C2,C3")
    p.add_argument("--lambda", dest="lam", metavar="L1,L2")
    p.add_argument("--xi", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--grid", type=int, default=20)
    p.add_argument("--const", type=float, default=0.0, help="integration constant of theta")
    p.add_argument("--a1", type=float, default=0.0)
    p.add_argument("--a2", type=float, default=0.0)

    p = sub.add_parser("surface", parents=[common], help="grid statistics of a catalog surface")
    p.add_argument("--id", choices=CATALOG_IDS)
    p.add_argument("--lambda", dest="lam", metavar="L1,L2")
    p.add_argument("--xi", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--grid", type=int, default=20)
    p.add_argument("--csv", metavar="PATH")

    p = sub.add_parser("oracle", parents=[common], help="finite-difference curvature cross-check")
    p.add_argument("--model", choices=("e11", "e2tilde"), default="e11")
    p.add_argument("--lambda", dest="lam", metavar="L1,L2", default="1,1")
    p.add_argument("--samples", type=int, default=20)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "grid", 1) < 1 or getattr(args, "samples", 1) < 1:
        parser.error("--grid and --samples must be positive")
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except (UsageError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.timing = time.perf_counter() - start
    print(render(report, args.format))
    return EXIT_PASS if report.status == "PASS" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
