"""Command-line surface: boundariness reports and study CSVs.

Every command reads JSON inputs, resolves one ScanConfig (file,
then --seed override), and emits either a JSON report on stdout or a
CSV whose first two lines pin the schema version and the resolved
config. Reruns with identical inputs and config are byte-identical.

Exit codes: 0 success, 2 input validation, 3 numerical failure,
4 a claimed inequality was violated by the computed numbers.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from typing import Callable, Optional

import numpy as np

from . import channels, convex, discrimination, linalg, observables, states
from .errors import (
    BoundNotImprovableError,
    ClaimViolationError,
    NumericalError,
    ValidationError,
)
from .sampling import ScanConfig

__all__ = ["build_parser", "main"]

_CSV_VERSION = "boundariness-lab v1"
_SHAPES = ("triangle", "square", "disk")


def _fmt(value: float) -> str:
    return "{:.12g}".format(float(value))


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def _vector_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or obj.get("kind") != "vector":
        raise ValidationError(
            'expected a vector object {"kind": "vector", "entries": [[re, im], ...]}')
    entries = obj.get("entries")
    if not isinstance(entries, list) or not entries:
        raise ValidationError("'entries' must be a nonempty list of [re, im] pairs")
    out = np.empty(len(entries), dtype=np.complex128)
    for i, cell in enumerate(entries):
        if not isinstance(cell, (list, tuple)) or len(cell) != 2:
            raise ValidationError(f"vector entry {i} must be an [re, im] pair")
        out[i] = complex(float(cell[0]), float(cell[1]))
    return out


def _resolve_config(args: argparse.Namespace) -> ScanConfig:
    path = getattr(args, "config", None)
    cfg = ScanConfig() if path is None else ScanConfig.from_json(_load_json(path))
    seed = getattr(args, "seed", None)
    if seed is not None:
        cfg = dataclasses.replace(cfg, seed=int(seed))
    samples = getattr(args, "samples", None)
    if samples is not None:
        cfg = dataclasses.replace(cfg, n_samples=int(samples))
    return cfg


def _write_csv(path: str, cmd: str, cfg: ScanConfig, header: str, rows) -> int:
    count = 0
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# {_CSV_VERSION}, cmd={cmd}, seed={cfg.seed}\n")
            fh.write(f"# config={cfg.echo()}\n")
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
                count += 1
    except OSError as exc:
        raise ValidationError(f"cannot write {path}: {exc}") from exc
    return count


def _cmd_state(args: argparse.Namespace, cfg: ScanConfig) -> dict:
    rho = states.as_density_matrix(linalg.matrix_from_json(_load_json(args.input)))
    b, cert = states.state_boundariness(rho)
    return {
        "command": "state",
        "config": cfg.to_json(),
        "b": b,
        "lower_bound_lambda_min": b,
        "boundary": bool(states.state_is_boundary(rho)),
        "method": "closed-form",
        "certificate": cert.to_json(),
    }


def _cmd_povm(args: argparse.Namespace, cfg: ScanConfig) -> dict:
    c = observables.Povm.from_json(_load_json(args.input))
    b, outcome, dec = observables.povm_boundariness(c)
    return {
        "command": "povm",
        "config": cfg.to_json(),
        "b": b,
        "lower_bound_lambda_min": b,
        "boundary": bool(observables.povm_is_boundary(c)),
        "method": "closed-form",
        "certificate": {
            "t": dec.t,
            "outcome": outcome,
            "a": dec.a.to_json(),
            "b": dec.b.to_json(),
            "residual": dec.residual,
        },
    }


def _cmd_channel(args: argparse.Namespace, cfg: ScanConfig) -> dict:
    e = channels.channel_from_json(_load_json(args.input))
    b_upper, witness = channels.channel_scan_boundariness(
        e, n_unitaries=cfg.n_samples, include_rank2=bool(args.rank2),
        seed=cfg.seed, psd_tol=cfg.psd_tol, depth=cfg.bisect_depth)
    return {
        "command": "channel",
        "config": cfg.to_json(),
        "b": b_upper,
        "lower_bound_lambda_min": max(0.0, e.min_eigenvalue()),
        "boundary": bool(channels.channel_is_boundary(e)),
        "method": "scan-upper-bound",
        "certificate": None if witness is None else {"witness": witness.to_json()},
    }


def _cmd_erasure_study(args: argparse.Namespace, cfg: ScanConfig) -> dict:
    p_min, p_max, steps = float(args.p_min), float(args.p_max), int(args.steps)
    if not 0.0 < p_min < p_max < 0.5:
        raise ValidationError(
            f"need 0 < p-min < p-max < 1/2, got [{args.p_min}, {args.p_max}]")
    if steps < 2:
        raise ValidationError(f"steps must be at least 2, got {args.steps}")

    def rows():
        for p in np.linspace(p_min, p_max, steps):
            p = float(p)
            b = channels.erasure_boundariness(p)
            lam = p / 2.0
            b_upper, _ = channels.channel_scan_boundariness(
                channels.erasure_choi(p), n_unitaries=cfg.n_samples,
                seed=cfg.seed, psd_tol=cfg.psd_tol, depth=cfg.bisect_depth)
            yield (p, b, lam, b_upper, b - lam)

    count = _write_csv(args.out, "erasure-study", cfg,
                       "p,b,lambda_min,scan_b_upper,gap", rows())
    return {
        "command": "erasure-study",
        "config": cfg.to_json(),
        "rows": count,
        "out": args.out,
    }


def _cmd_rank2_scan(args: argparse.Namespace, cfg: ScanConfig) -> dict:
    grid = None
    if args.grid is not None:
        obj = _load_json(args.grid)
        if not isinstance(obj, dict):
            raise ValidationError("grid file must map axis name -> [min, max, steps]")
        grid = {str(k): tuple(v) for k, v in obj.items()}
    elif cfg.grid_spec is not None:
        grid = cfg.grid_spec
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# {_CSV_VERSION}, cmd=rank2-scan, seed={cfg.seed}\n")
            fh.write(f"# config={cfg.echo()}\n")
            min_lambda, argmin = channels.rank2_scan(float(args.p), grid=grid, out=fh)
    except OSError as exc:
        raise ValidationError(f"cannot write {args.out}: {exc}") from exc
    return {
        "command": "rank2-scan",
        "config": cfg.to_json(),
        "p": float(args.p),
        "min_lambda_G": min_lambda,
        "argmin": argmin.to_json(),
        "out": args.out,
    }


def _contour_rows(shape: str, resolution: int):
    if shape == "disk":
        radius = 1.0
        axis = np.linspace(-radius, radius, resolution)
        for yv in axis:
            for xv in axis:
                dist = math.hypot(float(xv), float(yv))
                if dist >= radius - 1e-12:
                    continue
                b = convex.disk_boundariness(dist, radius)
                if b > convex.INTERIOR_TOL:
                    yield (float(xv), float(yv), b)
        return
    poly = convex.unit_triangle() if shape == "triangle" else convex.unit_square()
    lo = poly.vertices.min(axis=0)
    hi = poly.vertices.max(axis=0)
    xs = np.linspace(lo[0], hi[0], resolution)
    ys = np.linspace(lo[1], hi[1], resolution)
    for yv in ys:
        for xv in xs:
            point = np.array([float(xv), float(yv)])
            if not poly.contains(point):
                continue
            b, _ = convex.boundariness_polytope(poly, point)
            if b > convex.INTERIOR_TOL:
                yield (float(xv), float(yv), b)


def _cmd_contour(args: argparse.Namespace, cfg: ScanConfig) -> dict:
    resolution = int(args.resolution)
    if resolution < 8:
        raise ValidationError(f"resolution must be at least 8, got {args.resolution}")
    count = _write_csv(args.out, "contour", cfg, "x,y,b",
                       _contour_rows(args.shape, resolution))
    return {
        "command": "contour",
        "config": cfg.to_json(),
        "shape": args.shape,
        "resolution": resolution,
        "rows": count,
        "out": args.out,
    }


def _cmd_discriminate(args: argparse.Namespace, cfg: ScanConfig) -> dict:
    a_obj = _load_json(args.a)
    b_obj = _load_json(args.b)
    if args.kind == "state":
        report = discrimination.state_discrimination(
            linalg.matrix_from_json(a_obj), linalg.matrix_from_json(b_obj))
    elif args.kind == "povm":
        report = discrimination.observable_discrimination(
            observables.Povm.from_json(a_obj), observables.Povm.from_json(b_obj),
            seed=cfg.seed)
    else:
        report = discrimination.channel_discrimination(
            channels.channel_from_json(a_obj), channels.channel_from_json(b_obj),
            seed=cfg.seed)
    return {
        "command": "discriminate",
        "config": cfg.to_json(),
        "kind": args.kind,
        **report.to_json(),
    }


def _cmd_prop6_witness(args: argparse.Namespace, cfg: ScanConfig) -> dict:
    e = channels.channel_from_json(_load_json(args.input))
    if args.phi is not None:
        phi = _vector_from_json(_load_json(args.phi))
    else:
        # maximally entangled default, row-major vec(I)/sqrt(d)
        phi = np.eye(e.d_in, dtype=np.complex128).reshape(-1) / math.sqrt(e.d_in)
    base = {"command": "prop6-witness", "config": cfg.to_json()}
    try:
        t = channels.prop6_unitary_witness(e, phi)
    except BoundNotImprovableError as exc:
        return {**base, "status": "bound-not-improvable", "message": str(exc)}
    lam = max(0.0, e.min_eigenvalue())
    return {
        **base,
        "status": "improved",
        "t": t,
        "lower_bound_lambda_min": lam,
        "improvement": t - lam,
    }


_DISPATCH: dict[str, Callable[[argparse.Namespace, ScanConfig], dict]] = {
    "state": _cmd_state,
    "povm": _cmd_povm,
    "channel": _cmd_channel,
    "erasure-study": _cmd_erasure_study,
    "rank2-scan": _cmd_rank2_scan,
    "contour": _cmd_contour,
    "discriminate": _cmd_discriminate,
    "prop6-witness": _cmd_prop6_witness,
}


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand-position flag from clobbering one given
    # before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", default=argparse.SUPPRESS,
                        help="ScanConfig JSON file")
    common.add_argument("--seed", type=int, metavar="N", default=argparse.SUPPRESS,
                        help="override the config seed")

    parser = argparse.ArgumentParser(
        prog="boundariness-lab", parents=[common],
        description="Boundariness of states, observables, qubit channels, "
                    "and plane convex sets, with discrimination bounds.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("state", parents=[common],
                       help="boundariness of a density matrix")
    p.add_argument("-i", "--input", required=True, metavar="FILE")

    p = sub.add_parser("povm", parents=[common],
                       help="boundariness of a finite-outcome observable")
    p.add_argument("-i", "--input", required=True, metavar="FILE")

    p = sub.add_parser("channel", parents=[common],
                       help="scan upper bound on channel boundariness")
    p.add_argument("-i", "--input", required=True, metavar="FILE")
    p.add_argument("--samples", type=int, metavar="N",
                   help="number of sampled unitary directions")
    p.add_argument("--rank2", action="store_true",
                   help="also sample rank-2 extremal directions")

    p = sub.add_parser("erasure-study", parents=[common],
                       help="b vs lambda_min across erasure parameters")
    p.add_argument("--p-min", type=float, required=True, metavar="X")
    p.add_argument("--p-max", type=float, required=True, metavar="Y")
    p.add_argument("--steps", type=int, required=True, metavar="N")
    p.add_argument("-o", "--out", required=True, metavar="FILE")

    p = sub.add_parser("rank2-scan", parents=[common],
                       help="eigenvalue scan over rank-2 extremal channels")
    p.add_argument("--p", type=float, required=True, metavar="X")
    p.add_argument("--grid", metavar="FILE",
                   help="JSON grid: axis name -> [min, max, steps]")
    p.add_argument("-o", "--out", required=True, metavar="FILE")

    p = sub.add_parser("contour", parents=[common],
                       help="boundariness samples over a plane shape")
    p.add_argument("--shape", required=True, choices=_SHAPES)
    p.add_argument("--resolution", type=int, required=True, metavar="N")
    p.add_argument("-o", "--out", required=True, metavar="FILE")

    p = sub.add_parser("discriminate", parents=[common],
                       help="minimum-error discrimination report for a pair")
    p.add_argument("--kind", required=True, choices=("state", "povm", "channel"))
    p.add_argument("-a", required=True, metavar="FILE")
    p.add_argument("-b", required=True, metavar="FILE")

    p = sub.add_parser("prop6-witness", parents=[common],
                       help="unitary-direction witness that b exceeds lambda_min")
    p.add_argument("-i", "--input", required=True, metavar="FILE")
    p.add_argument("--phi", metavar="FILE",
                   help="maximally entangled direction (vector JSON)")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        payload = _DISPATCH[args.command](args, cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ClaimViolationError as exc:
        print(f"claim violated: {exc}", file=sys.stderr)
        return 4
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
