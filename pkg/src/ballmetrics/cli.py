"""Batch command-line front end.

Subcommands evaluate distances, tabulate invariant volume against its Monte
Carlo estimate, emit packing certificates and obstruction-threshold sweeps,
drive embedding experiments, dump curvature tables, and run the library's
invariant sweep.  Every artifact embeds the schema version, the tool version,
and the effective run configuration, so a run is reproducible from its own
output; artifacts contain no timestamps.  Table-producing subcommands render
a companion PNG figure next to the delimited output unless --no-plot is
given.

Exit codes: 0 success, 1 failed verification, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .ball_geometry import mc_invariant_volume, pseudo_ball_volume
from .curvature import gaussian_curvature
from .embedder import ring_problem, build_problem, solve
from .kernels import KernelId, dirichlet, dirichlet_alpha, drury_arveson, log_power
from .metrics import delta, rho
from .packing import certificate, obstruction_threshold
from .points import DomainError
from .serialize import SCHEMA_VERSION, format_float, to_json_text, write_csv, write_json

__all__ = ["main", "run"]


def _kernel_from_args(args) -> KernelId:
    name = args.kernel
    if name == "dirichlet":
        return dirichlet()
    if name == "da":
        return drury_arveson(args.n)
    if name == "dirichlet-alpha":
        return dirichlet_alpha(args.alpha)
    if name == "log-power":
        return log_power(args.power)
    raise DomainError(f"unknown kernel {name!r}")


def _complex_point(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from exc


def _grid_spec(text: str) -> tuple[float, float, int]:
    """start:stop:count, e.g. 0.1:0.9:9."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}") from exc
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    return start, stop, count


def _polar_grid_spec(text: str) -> tuple[int, int]:
    """radii x angles, e.g. 4x25."""
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("grid must be RADIIxANGLES, e.g. 4x25")
    try:
        radii, angles = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}") from exc
    if radii < 1 or angles < 1:
        raise argparse.ArgumentTypeError("grid counts must be >= 1")
    return radii, angles


def _add_common(sub, plot: bool):
    sub.add_argument("--out", type=Path, default=None, help="artifact path")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument(
        "--parallelism",
        type=int,
        default=os.cpu_count() or 1,
        help="worker threads where a subcommand parallelizes; never changes results",
    )
    if plot:
        sub.add_argument("--no-plot", action="store_true", help="skip the companion figure")


def _add_kernel_flags(sub):
    sub.add_argument(
        "--kernel",
        choices=("dirichlet", "da", "dirichlet-alpha", "log-power"),
        default="dirichlet",
    )
    sub.add_argument("--n", type=int, default=1, help="ball dimension (da kernel)")
    sub.add_argument("--alpha", type=float, default=0.5, help="exponent (dirichlet-alpha)")
    sub.add_argument("--power", type=int, default=2, help="power m (log-power)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballmetrics",
        description="kernel metrics on the disk and ball: distances, volumes, "
        "packing certificates, embeddings, curvature",
    )
    parser.add_argument("--version", action="version", version=f"ballmetrics {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("metric", help="pairwise distances between given points")
    _add_kernel_flags(p)
    p.add_argument("points", type=_complex_point, nargs="+", help="two or more points")
    _add_common(p, plot=False)

    p = sub.add_parser("volume", help="invariant volume: closed form vs Monte Carlo")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--r", type=float, default=None, help="single radius")
    p.add_argument("--grid", type=_grid_spec, default=None, help="radius grid start:stop:count")
    p.add_argument("--samples", type=int, default=200_000)
    _add_common(p, plot=True)

    p = sub.add_parser("certify", help="volume-obstruction certificate at (n, K)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", type=float, required=True)
    _add_common(p, plot=False)

    p = sub.add_parser("threshold", help="obstruction threshold for n = 1..N")
    p.add_argument("--n", type=int, default=8, help="largest dimension swept")
    p.add_argument("--K", type=float, default=200.0, help="grid upper end K_max")
    _add_common(p, plot=True)

    p = sub.add_parser("embed", help="stress-minimising embedding into the ball")
    p.add_argument("--K", type=float, default=4.0, help="ring boundary-closeness parameter")
    p.add_argument("--count", type=int, default=8, help="ring size")
    p.add_argument("--n", type=int, default=2, help="target ball dimension")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument(
        "--points",
        type=_complex_point,
        nargs="+",
        default=None,
        help="explicit disk points instead of the ring",
    )
    _add_common(p, plot=True)

    p = sub.add_parser("curvature", help="metric density and Gaussian curvature table")
    _add_kernel_flags(p)
    p.add_argument("--grid", type=_polar_grid_spec, default=(4, 25), help="RADIIxANGLES")
    p.add_argument("--rmax", type=float, default=0.4)
    p.add_argument("--step", type=float, default=1.5e-3)
    _add_common(p, plot=True)

    p = sub.add_parser("verify", help="run the invariant sweep")
    _add_common(p, plot=False)

    return parser


def _artifact(config: dict, payload_key: str, payload) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "ballmetrics",
        "tool_version": __version__,
        "config": config,
        payload_key: payload,
    }


def _figure_path(out: Path) -> Path:
    return out.with_suffix(".png")


def _emit(args, config: dict, payload_key: str, payload, header=None, rows=None):
    """Write the artifact in the chosen format; return the path or None."""
    if args.out is None:
        return None
    if args.format == "json":
        return write_json(args.out, _artifact(config, payload_key, payload))
    return write_csv(args.out, header, rows)


def _cmd_metric(args) -> int:
    kid = _kernel_from_args(args)
    pts = args.points
    if len(pts) < 2:
        raise DomainError("metric needs at least two points")
    if kid.family == "drury_arveson" and kid.n != 1:
        raise DomainError("scalar point list requires n = 1 for the ball kernel")
    rows = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = delta(kid, pts[i], pts[j])
            r = float(rho(pts[i], pts[j])) if kid.family == "drury_arveson" else None
            rows.append({"i": i, "j": j, "delta": d, "rho": r})
    for row in rows:
        line = f"i={row['i']} j={row['j']} delta={format_float(row['delta'])}"
        if row["rho"] is not None:
            line += f" rho={format_float(row['rho'])}"
        print(line)
    config = {
        "subcommand": "metric",
        "kernel": kid.label,
        "points": [[p.real, p.imag] for p in pts],
        "format": args.format,
    }
    csv_rows = [
        [r["i"], r["j"], r["delta"]] + ([r["rho"]] if r["rho"] is not None else [])
        for r in rows
    ]
    header = ["i", "j", "delta"] + (["rho"] if rows and rows[0]["rho"] is not None else [])
    _emit(args, config, "pairs", rows, header=header, rows=csv_rows)
    return 0


def _cmd_volume(args) -> int:
    if args.grid is not None:
        start, stop, count = args.grid
        radii = list(np.linspace(start, stop, count))
    else:
        radii = [args.r if args.r is not None else 0.5]
    if not all(0.0 < r < 1.0 for r in radii):
        raise DomainError("radii must lie in (0, 1)")
    rows = []
    for r in radii:
        est, se = mc_invariant_volume(r, args.n, samples=args.samples, seed=args.seed)
        exact = pseudo_ball_volume(r, args.n)
        rows.append(
            {
                "r": float(r),
                "n": args.n,
                "closed_form": exact,
                "mc_estimate": est,
                "mc_se": se,
                "z_score": (est - exact) / se if se > 0.0 else 0.0,
            }
        )
    for row in rows:
        print(
            f"r={row['r']:.6g} closed_form={format_float(row['closed_form'])} "
            f"mc={format_float(row['mc_estimate'])} se={format_float(row['mc_se'])}"
        )
    config = {
        "subcommand": "volume",
        "n": args.n,
        "radii": [float(r) for r in radii],
        "samples": args.samples,
        "seed": args.seed,
        "format": args.format,
    }
    header = ["r", "n", "closed_form", "mc_estimate", "mc_se", "z_score"]
    _emit(
        args, config, "rows", rows,
        header=header, rows=[[row[k] for k in header] for row in rows],
    )
    if args.out is not None and not args.no_plot:
        from .report import volume_figure

        volume_figure(rows, str(_figure_path(args.out)))
    return 0


def _cmd_certify(args) -> int:
    cert = certificate(args.n, args.K)
    payload = cert.to_dict()
    print(
        f"n={cert.n} K={format_float(cert.K)} N={cert.N} "
        f"N*V_S={format_float(cert.n_times_v_small)} V_L={format_float(cert.v_large)} "
        f"feasible={str(cert.feasible).lower()}"
    )
    config = {"subcommand": "certify", "n": args.n, "K": args.K, "format": args.format}
    keys = [k for k in payload if k not in ("schema_version", "tool_version")]
    _emit(args, config, "certificate", payload, header=keys, rows=[[payload[k] for k in keys]])
    return 0


def _cmd_threshold(args) -> int:
    if args.n < 1:
        raise DomainError("--n must be >= 1")
    rows = []
    for n in range(1, args.n + 1):
        t = obstruction_threshold(n, args.K)
        rows.append({"n": n, "threshold": t})
        print(f"n={n} threshold={'none' if t is None else format_float(t)}")
    config = {
        "subcommand": "threshold",
        "n_max": args.n,
        "K_max": args.K,
        "format": args.format,
    }
    _emit(
        args, config, "rows", rows,
        header=["n", "threshold"],
        rows=[[row["n"], "" if row["threshold"] is None else row["threshold"]] for row in rows],
    )
    if args.out is not None and not args.no_plot:
        present = [row for row in rows if row["threshold"] is not None]
        if present:
            from .report import threshold_figure

            threshold_figure(present, str(_figure_path(args.out)))
    return 0


def _cmd_embed(args) -> int:
    settings = {"restarts": args.restarts, "max_iters": args.max_iters, "seed": args.seed}
    if args.points is not None:
        problem = build_problem(args.points, args.n, **settings)
        source = [[p.real, p.imag] for p in args.points]
    else:
        problem = ring_problem(args.K, args.count, args.n, **settings)
        source = [[p.real, p.imag] for p in problem.source_points]
    result = solve(problem, workers=max(1, args.parallelism))
    print(
        f"stress={format_float(result.stress)} max_abs_error={format_float(result.max_abs_error)} "
        f"max_rel_distortion={format_float(result.max_rel_distortion)} "
        f"converged={str(result.converged).lower()}"
    )
    config = {
        "subcommand": "embed",
        "K": args.K if args.points is None else None,
        "count": args.count if args.points is None else None,
        "source_points": source,
        "target_dim": args.n,
        "restarts": args.restarts,
        "max_iters": args.max_iters,
        "seed": args.seed,
        "format": args.format,
    }
    payload = result.to_dict()
    m = problem.size
    header = ["index"] + [f"re_{k}" for k in range(args.n)] + [f"im_{k}" for k in range(args.n)]
    csv_rows = [
        [i]
        + [result.points[i, k].real for k in range(args.n)]
        + [result.points[i, k].imag for k in range(args.n)]
        for i in range(m)
    ]
    _emit(args, config, "result", payload, header=header, rows=csv_rows)
    if args.out is not None and not args.no_plot:
        from .report import embedding_figure

        achieved = rho(result.points[:, None, :], result.points[None, :, :])
        embedding_figure(
            problem.distance_matrix, achieved, result.points, result.stress,
            str(_figure_path(args.out)),
        )
    return 0


def _cmd_curvature(args) -> int:
    kid = _kernel_from_args(args)
    if kid.dim != 1:
        raise DomainError("curvature runs on disk kernels; use --kernel da --n 1")
    n_radii, n_angles = args.grid
    if not (0.0 < args.rmax < 1.0):
        raise DomainError("--rmax must lie in (0, 1)")
    radii = [(k + 1) * args.rmax / n_radii for k in range(n_radii)]
    rows = []
    for r in radii:
        for a in range(n_angles):
            z = r * np.exp(2j * np.pi * a / n_angles)
            s = gaussian_curvature(kid, z, args.step)
            rows.append(
                {
                    "z_re": float(z.real),
                    "z_im": float(z.imag),
                    "alpha_sq": s.alpha_sq,
                    "kappa": s.kappa,
                    "step": s.step,
                    "est_error": s.est_error,
                    "kernel": kid.label,
                    "laplacian": "real_2d",
                }
            )
    print(
        f"{len(rows)} samples, kappa in [{min(r['kappa'] for r in rows):.6g}, "
        f"{max(r['kappa'] for r in rows):.6g}]"
    )
    config = {
        "subcommand": "curvature",
        "kernel": kid.label,
        "grid": [n_radii, n_angles],
        "rmax": args.rmax,
        "step": args.step,
        "format": args.format,
    }
    header = ["z_re", "z_im", "alpha_sq", "kappa", "step", "est_error", "kernel", "laplacian"]
    _emit(
        args, config, "rows", rows,
        header=header, rows=[[row[k] for k in header] for row in rows],
    )
    if args.out is not None and not args.no_plot:
        from .report import curvature_figure

        curvature_figure(rows, str(_figure_path(args.out)))
    return 0


def _cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all() if args.seed == 0 else run_all(seed=args.seed)
    failures = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        if not r.ok:
            failures += 1
        print(f"{status} {r.name:<28} {r.detail}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    config = {"subcommand": "verify", "seed": args.seed, "format": args.format}
    payload = [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]
    _emit(
        args, config, "checks", payload,
        header=["name", "ok", "detail"],
        rows=[[r.name, str(r.ok).lower(), r.detail] for r in results],
    )
    return 1 if failures else 0


_DISPATCH = {
    "metric": _cmd_metric,
    "volume": _cmd_volume,
    "certify": _cmd_certify,
    "threshold": _cmd_threshold,
    "embed": _cmd_embed,
    "curvature": _cmd_curvature,
    "verify": _cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.subcommand](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
