"""Invariant sweep behind the command-line ``verify`` subcommand.

Each check exercises one contract of the library on seeded random data (or on
closed-form identities) and reports a single pass/fail with a short numeric
detail string.  The sweep is deterministic for a fixed seed and sized to run
in a few seconds; the test suite repeats the same ground at larger sample
counts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import (
    boundary_scale,
    center_distance_dirichlet_exact,
    dirichlet_ring_delta,
    logpower_center_distance,
    rotation_displacement,
)
from .ball_geometry import (
    ball_automorphism,
    mc_invariant_volume,
    pseudo_ball_volume,
    strengthened_triangle_bound,
)
from .curvature import gaussian_curvature
from .embedder import build_problem, solve
from .kernels import dirichlet, dirichlet_alpha, drury_arveson, log_power
from .metrics import delta, delta_array, rho
from .packing import PackingCertificate, certificate, obstruction_threshold
from .sampling import sample_ball, sample_disk
from .serialize import to_json_text

__all__ = ["CheckResult", "run_all", "CHECK_NAMES"]

LEADING_ROTATION_CONSTANT = 0.5 * math.log(1.25)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _result(name: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, ok=bool(ok), detail=detail)


def _check_fi_identity(rng, count) -> CheckResult:
    z = sample_disk(rng, count, radius=0.999)
    w = sample_disk(rng, count, radius=0.999)
    d_kernel = delta_array(drury_arveson(1), z[:, None], w[:, None])
    d_closed = rho(z[:, None], w[:, None])
    worst = float(np.max(np.abs(d_kernel - d_closed)))
    return _result("fi_identity_disk", worst < 1e-12, f"max |delta - rho| = {worst:.3e}")


def _check_closed_form_ball(rng, count) -> CheckResult:
    worst = 0.0
    for n in (1, 2, 3, 8):
        z = sample_ball(rng, count, n, radius=0.99)
        w = sample_ball(rng, count, n, radius=0.99)
        d_kernel = delta_array(drury_arveson(n), z, w)
        worst = max(worst, float(np.max(np.abs(d_kernel - rho(z, w)))))
    return _result(
        "closed_form_ball", worst < 1e-12, f"max over n in {{1,2,3,8}}: {worst:.3e}"
    )


def _check_symmetry(rng, count) -> CheckResult:
    z1 = sample_disk(rng, count, radius=0.999)
    w1 = sample_disk(rng, count, radius=0.999)
    kid_d = dirichlet()
    worst = float(np.max(np.abs(delta_array(kid_d, z1, w1) - delta_array(kid_d, w1, z1))))
    z3 = sample_ball(rng, count, 3, radius=0.99)
    w3 = sample_ball(rng, count, 3, radius=0.99)
    kid_b = drury_arveson(3)
    worst = max(
        worst, float(np.max(np.abs(delta_array(kid_b, z3, w3) - delta_array(kid_b, w3, z3))))
    )
    return _result("metric_symmetry", worst < 1e-14, f"max asymmetry = {worst:.3e}")


def _triangle_excess(d_xz: np.ndarray, d_xy: np.ndarray, d_yz: np.ndarray) -> float:
    return float(np.max(d_xz - d_xy - d_yz))


def _check_triangle(rng, count) -> list[CheckResult]:
    out = []
    kid = dirichlet()
    x = sample_disk(rng, count, radius=0.999)
    y = sample_disk(rng, count, radius=0.999)
    z = sample_disk(rng, count, radius=0.999)
    excess = _triangle_excess(
        delta_array(kid, x, z), delta_array(kid, x, y), delta_array(kid, y, z)
    )
    out.append(
        _result("triangle_dirichlet", excess <= 1e-12, f"max excess = {excess:.3e}")
    )
    kid2 = drury_arveson(2)
    x2 = sample_ball(rng, count, 2, radius=0.99)
    y2 = sample_ball(rng, count, 2, radius=0.99)
    z2 = sample_ball(rng, count, 2, radius=0.99)
    excess2 = _triangle_excess(
        delta_array(kid2, x2, z2), delta_array(kid2, x2, y2), delta_array(kid2, y2, z2)
    )
    out.append(_result("triangle_ball", excess2 <= 1e-12, f"max excess = {excess2:.3e}"))
    return out


def _check_strengthened_triangle(rng, count) -> CheckResult:
    worst = -1.0
    for n in (1, 2, 3):
        x = sample_ball(rng, count, n, radius=0.99)
        y = sample_ball(rng, count, n, radius=0.99)
        z = sample_ball(rng, count, n, radius=0.99)
        lhs = rho(x, z)
        a, b = rho(x, y), rho(y, z)
        bound = (a + b) / (1.0 + a * b)
        worst = max(worst, float(np.max(lhs - bound)))
    return _result(
        "strengthened_triangle", worst <= 1e-12, f"max excess over bound = {worst:.3e}"
    )


def _check_automorphism(rng, count) -> list[CheckResult]:
    worst_inv = 0.0
    worst_invol = 0.0
    for n in (1, 2, 3, 5):
        a = sample_ball(rng, count, n, radius=0.9)
        z = sample_ball(rng, count, n, radius=0.99)
        w = sample_ball(rng, count, n, radius=0.99)
        for i in range(count):
            pz = ball_automorphism(a[i], z[i])
            pw = ball_automorphism(a[i], w[i])
            worst_inv = max(worst_inv, abs(float(rho(pz, pw)) - float(rho(z[i], w[i]))))
            back = ball_automorphism(a[i], pz)
            worst_invol = max(worst_invol, float(np.max(np.abs(back - z[i]))))
    return [
        _result("automorphism_invariance", worst_inv < 1e-10, f"max drift = {worst_inv:.3e}"),
        _result("automorphism_involution", worst_invol < 1e-12, f"max residual = {worst_invol:.3e}"),
    ]


def _check_rotation_invariance(rng, count) -> CheckResult:
    kids = [dirichlet(), drury_arveson(1), dirichlet_alpha(0.5), log_power(2)]
    z = sample_disk(rng, count, radius=0.999)
    w = sample_disk(rng, count, radius=0.999)
    phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, count))
    worst = 0.0
    for kid in kids:
        # the ball kernel reads a trailing axis as the coordinate dimension
        zz = z[:, None] if kid.family == "drury_arveson" else z
        ww = w[:, None] if kid.family == "drury_arveson" else w
        pp = phase[:, None] if kid.family == "drury_arveson" else phase
        base = delta_array(kid, zz, ww)
        rot = delta_array(kid, pp * zz, pp * ww)
        worst = max(worst, float(np.max(np.abs(base - rot))))
    # the rotated inner product reorders rounding; near-boundary amplification
    # of that noise keeps exact-arithmetic equality only to ~1e-13
    return _result("rotation_invariance", worst < 1e-12, f"max drift = {worst:.3e}")


def _check_center_distance(_rng, _count) -> CheckResult:
    worst = 0.0
    for K in range(2, 51):
        d = center_distance_dirichlet_exact(float(K))
        target = 1.0 - (-math.expm1(-K)) / K
        worst = max(worst, abs(d * d - target))
    return _result(
        "center_distance_exact", worst < 1e-15, f"max identity defect = {worst:.3e}"
    )


def _check_rotation_asymptotic(_rng, _count) -> CheckResult:
    errs = []
    for K in (20.0, 40.0, 80.0, 160.0):
        est = rotation_displacement(K)
        errs.append(abs(K * (1.0 - est.exact_one_minus_delta_sq) - 2.0 * LEADING_ROTATION_CONSTANT))
    decreasing = all(errs[i + 1] < errs[i] for i in range(len(errs) - 1))
    ok = decreasing and errs[-1] < 0.02
    return _result(
        "rotation_asymptotic", ok, f"errors {['%.3e' % e for e in errs]}, final < 0.02: {errs[-1] < 0.02}"
    )


def _check_volume_mc(_rng, _count) -> CheckResult:
    worst_z = 0.0
    for n, r in ((1, 0.6), (2, 0.3)):
        est, se = mc_invariant_volume(r, n, samples=100_000, seed=7)
        exact = pseudo_ball_volume(r, n)
        worst_z = max(worst_z, abs(est - exact) / se)
    return _result("volume_mc", worst_z < 5.0, f"max |z-score| = {worst_z:.2f}")


def _check_volume_radial(_rng, _count) -> CheckResult:
    # n = 1 closed form r^2/(1-r^2) against a composite-Simpson radial integral
    r = 0.6
    m = 4001
    s = np.linspace(0.0, r, m)
    f = 2.0 * s / (1.0 - s * s) ** 2
    h = s[1] - s[0]
    integral = (h / 3.0) * (f[0] + f[-1] + 4.0 * np.sum(f[1:-1:2]) + 2.0 * np.sum(f[2:-1:2]))
    exact = pseudo_ball_volume(r, 1)
    err = abs(integral - exact)
    return _result("volume_radial_integral", err < 1e-10, f"|simpson - closed form| = {err:.3e}")


def _check_volume_asymptotics(_rng, _count) -> CheckResult:
    worst = 0.0
    for n in (1, 2, 3):
        r0 = 1e-3
        worst = max(worst, abs(pseudo_ball_volume(r0, n) / r0 ** (2 * n) - 1.0))
        r1 = 1.0 - 1e-3
        worst = max(worst, abs(pseudo_ball_volume(r1, n) * (2.0 * (1.0 - r1)) ** n - 1.0))
    return _result("volume_asymptotics", worst < 0.01, f"max relative gap = {worst:.3e}")


def _check_packing(_rng, _count) -> CheckResult:
    cert = certificate(1, 10.0)
    ok = (not cert.feasible) and cert.n_times_v_small > cert.v_large
    grid_ok = True
    for K in np.arange(5.0, 30.25, 0.25):
        c = certificate(1, float(K))
        if not c.N > math.exp(K):
            grid_ok = False
            break
    return _result(
        "packing_certificate",
        ok and grid_ok,
        f"K=10: N={cert.N}, N*V_S={cert.n_times_v_small:.4g} > V_L={cert.v_large:.4g}; "
        f"N > e^K on grid: {grid_ok}",
    )


def _check_threshold(_rng, _count) -> CheckResult:
    t1 = obstruction_threshold(1, 30.0)
    t2 = obstruction_threshold(2, 60.0)
    ok = t1 is not None and t2 is not None and t2 >= t1
    return _result("obstruction_threshold", ok, f"threshold(1)={t1}, threshold(2)={t2}")


def _check_ring_separation(_rng, _count) -> CheckResult:
    K = 8.0
    scale = boundary_scale(K)
    n_pts = int(2.0 * np.pi / scale.sigma)
    js = np.unique(np.geomspace(1, n_pts // 2, 40).astype(int))
    d = dirichlet_ring_delta(K, js * scale.sigma)
    nondecreasing = bool(np.all(np.diff(d) >= -1e-15))
    return _result(
        "ring_separation_monotone",
        nondecreasing,
        f"delta(z, z e^(i j sigma)) nondecreasing over {len(js)} gaps at K={K}",
    )


def _check_logpower(_rng, _count) -> CheckResult:
    worst_exact = 0.0
    for m in (2, 3):
        K = 20.0
        scale = boundary_scale(K)
        d = logpower_center_distance(K, m)
        value = K**m * (1.0 - d * d) * (1.0 - scale.sigma) ** (-2 * m)
        worst_exact = max(worst_exact, abs(value - 1.0))
    bitwise = logpower_center_distance(12.0, 1) == center_distance_dirichlet_exact(12.0)
    return _result(
        "logpower_center_distance",
        worst_exact < 0.01 and bitwise,
        f"max |K^m (1-delta^2) (1-sigma)^(-2m) - 1| = {worst_exact:.3e}; m=1 bitwise: {bitwise}",
    )


def _check_curvature(_rng, _count) -> CheckResult:
    kid = drury_arveson(1)
    radii = (0.1, 0.25, 0.4)
    angles = np.linspace(0.0, 2.0 * np.pi, 7)[:-1]
    worst = 0.0
    for r in radii:
        for t in angles:
            s = gaussian_curvature(kid, r * np.exp(1j * t), 1.5e-3)
            worst = max(worst, abs(s.kappa + 1.0))
    factors = []
    for z in (0.3 + 0.2j, -0.35 + 0.15j):
        k8 = gaussian_curvature(kid, z, 8e-3).kappa
        k4 = gaussian_curvature(kid, z, 4e-3).kappa
        k2 = gaussian_curvature(kid, z, 2e-3).kappa
        factors.append((k8 - k4) / (k4 - k2))
    factors_ok = all(3.5 <= f <= 4.5 for f in factors)
    return _result(
        "curvature_anchor",
        worst < 1e-5 and factors_ok,
        f"max |kappa + 1| = {worst:.3e}; halving factors {['%.2f' % f for f in factors]}",
    )


def _check_embedder(_rng, _count) -> CheckResult:
    problem = build_problem([0.0, 0.45 + 0.2j], n=1, restarts=4, seed=3)
    res = solve(problem)
    return _result(
        "embedder_two_point", res.stress < 1e-10, f"2-point stress = {res.stress:.3e}"
    )


def _check_serialization(_rng, _count) -> CheckResult:
    cert = certificate(2, 12.0)
    text = to_json_text(cert.to_dict())
    back = PackingCertificate.from_dict(json.loads(text))
    ok = back == cert
    return _result("serialization_roundtrip", ok, f"certificate round-trip equal: {ok}")


_CHECKS = [
    ("fi_identity_disk", _check_fi_identity),
    ("closed_form_ball", _check_closed_form_ball),
    ("metric_symmetry", _check_symmetry),
    ("triangle", _check_triangle),
    ("strengthened_triangle", _check_strengthened_triangle),
    ("automorphism", _check_automorphism),
    ("rotation_invariance", _check_rotation_invariance),
    ("center_distance_exact", _check_center_distance),
    ("rotation_asymptotic", _check_rotation_asymptotic),
    ("volume_mc", _check_volume_mc),
    ("volume_radial_integral", _check_volume_radial),
    ("volume_asymptotics", _check_volume_asymptotics),
    ("packing_certificate", _check_packing),
    ("obstruction_threshold", _check_threshold),
    ("ring_separation_monotone", _check_ring_separation),
    ("logpower_center_distance", _check_logpower),
    ("curvature_anchor", _check_curvature),
    ("embedder_two_point", _check_embedder),
    ("serialization_roundtrip", _check_serialization),
]

CHECK_NAMES = [name for name, _ in _CHECKS]


def run_all(seed: int = 2026, pair_count: int = 20_000, small_count: int = 400) -> list[CheckResult]:
    """Run every check; deterministic for fixed arguments.

    `pair_count` sizes the vectorised pair/triple sweeps, `small_count` the
    per-sample loops (automorphisms).  Defaults complete in a few seconds.
    """
    results: list[CheckResult] = []
    for idx, (name, fn) in enumerate(_CHECKS):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(idx,)))
        count = small_count if name == "automorphism" else pair_count
        out = fn(rng, count)
        if isinstance(out, list):
            results.extend(out)
        else:
            results.append(out)
    return results
