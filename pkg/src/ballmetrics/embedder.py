"""Stress-minimising embedding of finite metric configurations into the ball.

Given a symmetric target distance matrix D (for instance the log-weighted
disk metric evaluated on a point set), the embedder searches for points
x_1..x_m in the ball of C^n minimising

    stress(x) = sum_{i<j} (rho(x_i, x_j) - D_ij)^2

with rho the pseudohyperbolic metric.  Optimisation runs in an unconstrained
chart y in R^(2n) per point, mapped onto the open ball by

    x = y / sqrt(1 + ||y||^2),

so iterates can never leave the domain.  The solver is multi-start gradient
descent with an adaptive step: Barzilai-Borwein scaling, safeguarded by a
backtracking line search that halves the step whenever the objective fails
to decrease.  Restart initialisations are drawn uniformly from the ball of
radius 0.5, each from its own deterministic substream of the problem seed,
so results are reproducible at any execution order and ties are broken by
restart index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import __version__ as _tool_version
from .kernels import dirichlet
from .metrics import delta
from .points import DomainError, as_disk_point
from .serialize import SCHEMA_VERSION

__all__ = [
    "EmbeddingProblem",
    "EmbeddingResult",
    "build_problem",
    "problem_from_matrix",
    "ring_problem",
    "solve",
    "gradient_check",
]

INIT_RADIUS = 0.5
MIN_STEP = 1e-20
ARMIJO = 1e-4
PROGRESS_WINDOW = 150
NONMONOTONE_WINDOW = 8


@dataclass(frozen=True)
class EmbeddingProblem:
    """Target distances plus solver settings.

    distance_matrix: symmetric, zero diagonal, off-diagonal entries in (0, 1)
    target_dim:      ball dimension n >= 1
    source_points:   optional disk points the matrix was computed from
    """

    distance_matrix: np.ndarray
    target_dim: int
    source_points: tuple[complex, ...] | None = None
    restarts: int = 20
    max_iters: int = 5000
    seed: int = 0
    tolerance: float = 1e-10

    def __post_init__(self):
        d = np.asarray(self.distance_matrix, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 2:
            raise DomainError("distance matrix must be square with at least two rows")
        if not np.allclose(d, d.T, atol=1e-14):
            raise DomainError("distance matrix must be symmetric")
        if np.any(np.abs(np.diag(d)) > 0.0):
            raise DomainError("distance matrix must have a zero diagonal")
        off = d[~np.eye(d.shape[0], dtype=bool)]
        if np.any(off <= 0.0):
            raise DomainError("off-diagonal distances must be positive (duplicate points?)")
        if np.any(off >= 1.0):
            raise DomainError("distances must lie strictly below 1")
        if int(self.target_dim) != self.target_dim or self.target_dim < 1:
            raise DomainError("target dimension must be an integer >= 1")
        if self.restarts < 1 or self.max_iters < 1:
            raise DomainError("restarts and max_iters must be positive")
        object.__setattr__(self, "distance_matrix", d)

    @property
    def size(self) -> int:
        return self.distance_matrix.shape[0]


@dataclass(frozen=True)
class EmbeddingResult:
    """Best configuration found, with residual statistics."""

    points: np.ndarray               # shape (m, n) complex, inside the ball
    stress: float
    max_abs_error: float             # max |rho_ij - D_ij|
    max_rel_distortion: float        # max of rho/D and D/rho over pairs
    iterations_used: int             # iterations of the winning restart
    restarts_used: int
    converged: bool                  # gradient norm fell below tolerance
    failed_restarts: int = 0
    best_restart: int = 0
    grad_norm: float = float("nan")

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": _tool_version,
            "points_re": [[float(v) for v in row] for row in self.points.real],
            "points_im": [[float(v) for v in row] for row in self.points.imag],
            "stress": self.stress,
            "max_abs_error": self.max_abs_error,
            "max_rel_distortion": self.max_rel_distortion,
            "iterations_used": self.iterations_used,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "failed_restarts": self.failed_restarts,
            "best_restart": self.best_restart,
            "grad_norm": self.grad_norm,
        }


def build_problem(points, n: int, **settings) -> EmbeddingProblem:
    """Problem whose targets are the log-weighted disk metric on `points`."""
    pts = tuple(as_disk_point(p) for p in points)
    if len(pts) < 2:
        raise DomainError("need at least two source points")
    kid = dirichlet()
    m = len(pts)
    d = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            d[i, j] = d[j, i] = delta(kid, pts[i], pts[j])
    return EmbeddingProblem(distance_matrix=d, target_dim=n, source_points=pts, **settings)


def problem_from_matrix(matrix, n: int, **settings) -> EmbeddingProblem:
    """Problem from an explicit target matrix (e.g. a planted configuration)."""
    return EmbeddingProblem(
        distance_matrix=np.asarray(matrix, dtype=float), target_dim=n, **settings
    )


def ring_problem(K: float, count: int = 8, n: int = 2, **settings) -> EmbeddingProblem:
    """First `count` points of the boundary ring at log scale K.

    Radius 1 - sigma, angular gap 2 pi / floor(2 pi / sigma): a window of the
    same ring the packing certificate counts.  At fixed count the embedding
    stress of this family grows as K does."""
    from .asymptotics import boundary_scale

    if count < 2:
        raise DomainError("a ring needs at least two points")
    scale = boundary_scale(K, allow_small=True)
    total = int(math.floor(2.0 * math.pi / scale.sigma))
    if count > total:
        raise DomainError(f"ring at K = {K} has only {total} points")
    angles = 2.0 * np.pi * np.arange(count) / total
    pts = (1.0 - scale.sigma) * np.exp(1j * angles)
    return build_problem(pts, n, **settings)


# ---------------------------------------------------------------- chart ----

def _chart_to_ball(y: np.ndarray, n: int) -> np.ndarray:
    """Rows y in R^(2n) -> complex ball points y / sqrt(1 + ||y||^2)."""
    s = np.sqrt(1.0 + np.sum(y * y, axis=1, keepdims=True))
    x = y / s
    return x[:, :n] + 1j * x[:, n:]


def _ball_to_chart(p: np.ndarray) -> np.ndarray:
    """Inverse chart x -> x / sqrt(1 - ||x||^2) on rows of complex points."""
    x = np.concatenate([p.real, p.imag], axis=1)
    s = np.sqrt(1.0 - np.sum(x * x, axis=1, keepdims=True))
    return x / s


# ------------------------------------------------------- stress/gradient ----

def _pair_terms(p: np.ndarray, d: np.ndarray):
    """rho matrix pieces shared by stress and gradient."""
    ip = p.conj() @ p.T                      # ip[i, j] = <p_j, p_i>
    c = 1.0 - ip
    g2 = np.abs(c) ** 2
    nz = np.sum(np.abs(p) ** 2, axis=1)
    one = 1.0 - nz
    f = np.outer(one, one)
    q = 1.0 - f / g2
    np.fill_diagonal(q, 0.0)
    rho = np.sqrt(np.maximum(q, 0.0))
    return c, g2, f, one, rho


def _stress(y: np.ndarray, d: np.ndarray, n: int) -> float:
    p = _chart_to_ball(y, n)
    *_, rho = _pair_terms(p, d)
    resid = rho - d
    iu = np.triu_indices(d.shape[0], k=1)
    return float(np.sum(resid[iu] ** 2))


def _stress_grad(y: np.ndarray, d: np.ndarray, n: int) -> tuple[float, np.ndarray]:
    """Stress and its gradient in the chart variables (analytic)."""
    s = np.sqrt(1.0 + np.sum(y * y, axis=1, keepdims=True))
    x = y / s
    p = x[:, :n] + 1j * x[:, n:]
    c, g2, f, one, rho = _pair_terms(p, d)

    resid = rho - d
    iu = np.triu_indices(d.shape[0], k=1)
    stress = float(np.sum(resid[iu] ** 2))

    # dstress/dq_ij = (rho - d)/rho for each unordered pair, symmetric
    with np.errstate(invalid="ignore", divide="ignore"):
        sw = np.where(rho > 0.0, resid / np.where(rho > 0.0, rho, 1.0), 0.0)
    np.fill_diagonal(sw, 0.0)

    a_coef = np.sum(sw * (one[None, :] / g2), axis=1)        # sum_j S_ij (1-|p_j|^2)/G2_ij
    m_mat = sw * f * np.conj(c) / (g2 * g2)
    np.fill_diagonal(m_mat, 0.0)
    gc = 2.0 * (p * a_coef[:, None] - m_mat @ p)             # = d stress / d conj(p)  (times 2)

    gx = np.concatenate([gc.real, gc.imag], axis=1)          # gradient wrt x rows
    # chain through x = y/s: grad_y = (gx - (x . gx) x) / s
    dot = np.sum(x * gx, axis=1, keepdims=True)
    gy = (gx - dot * x) / s
    return stress, gy


# ---------------------------------------------------------------- solver ----

def _minimise_once(
    d: np.ndarray, n: int, y0: np.ndarray, max_iters: int, tol: float
) -> tuple[float, np.ndarray, int, bool, bool]:
    """One descent run; returns (best stress, best y, iters, converged, failed)."""
    y = y0.copy()
    f, g = _stress_grad(y, d, n)
    step = 0.25
    prev_y = None
    prev_g = None
    failed = False
    f_best, y_best = f, y
    checkpoint = f
    # nonmonotone acceptance window: Barzilai-Borwein steps need room to
    # overshoot; forcing monotone decrease collapses them to a crawl
    recent = [f] * NONMONOTONE_WINDOW

    for it in range(max_iters):
        gn = math.sqrt(float(np.sum(g * g)))
        if gn < tol:
            return f_best, y_best, it, True, failed
        # windowed progress rule: once a whole window improves the best value
        # by less than 1e-9 relative, the basin floor is reached to well past
        # the precision at which stress values are compared
        if it > 0 and it % PROGRESS_WINDOW == 0:
            if checkpoint - f_best <= 1e-9 * max(f_best, 1e-30):
                return f_best, y_best, it, True, failed
            checkpoint = f_best

        # Barzilai-Borwein step proposal, safeguarded below by backtracking;
        # alternating the two BB formulas copes better with ill-conditioned
        # valleys than either one alone
        if prev_y is not None:
            dy = y - prev_y
            dg = g - prev_g
            dydg = float(np.sum(dy * dg))
            if dydg > 0.0:
                if it % 2 == 0:
                    step = float(np.sum(dy * dy)) / dydg
                else:
                    step = dydg / float(np.sum(dg * dg))
            step = min(max(step, 1e-12), 1e6)

        accepted = False
        trial = step
        f_ref = max(recent)
        while trial >= MIN_STEP:
            y_try = y - trial * g
            f_try = _stress(y_try, d, n)
            if math.isfinite(f_try) and f_try <= f_ref - ARMIJO * trial * gn * gn:
                accepted = True
                break
            trial *= 0.5
        if not accepted:
            failed = f_best > tol  # stuck away from a stationary point
            return f_best, y_best, it, gn < tol, failed

        prev_y, prev_g = y, g
        y = y_try
        f, g = _stress_grad(y, d, n)
        step = trial
        if f < f_best:
            f_best, y_best = f, y
        recent.append(f)
        del recent[0]

    return f_best, y_best, max_iters, False, failed


def _run_restart(problem: EmbeddingProblem, r: int):
    d = problem.distance_matrix
    m, n = problem.size, problem.target_dim
    rng = np.random.default_rng(np.random.SeedSequence(problem.seed, spawn_key=(r,)))
    # uniform in the ball of radius INIT_RADIUS (real dimension 2n)
    g = rng.standard_normal((m, 2 * n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    radii = INIT_RADIUS * rng.random((m, 1)) ** (1.0 / (2 * n))
    x0 = g * radii
    y0 = x0 / np.sqrt(1.0 - np.sum(x0 * x0, axis=1, keepdims=True))
    return _minimise_once(d, n, y0, problem.max_iters, problem.tolerance)


def solve(problem: EmbeddingProblem, workers: int = 1) -> EmbeddingResult:
    """Multi-start minimisation; deterministic for a fixed problem and seed.

    Restarts are independent (each derives its own random stream from the
    problem seed and the restart index) and the best-of reduction breaks ties
    by restart index, so the result does not depend on `workers`.
    """
    d = problem.distance_matrix
    m, n = problem.size, problem.target_dim
    if workers < 1:
        raise DomainError("workers must be >= 1")

    if workers == 1:
        outcomes = [_run_restart(problem, r) for r in range(problem.restarts)]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda r: _run_restart(problem, r), range(problem.restarts)))

    best = None
    failed_restarts = 0
    for r, (f, y, iters, converged, failed) in enumerate(outcomes):
        if failed:
            failed_restarts += 1
        key = (f, r)
        if best is None or key < best[0]:
            best = (key, y, iters, converged)

    (f_best, r_best), y_best, iters_best, converged = best
    p = _chart_to_ball(y_best, n)
    *_, rho = _pair_terms(p, d)
    iu = np.triu_indices(m, k=1)
    resid = np.abs(rho[iu] - d[iu])
    with np.errstate(divide="ignore"):
        ratios = np.maximum(rho[iu] / d[iu], d[iu] / np.maximum(rho[iu], 1e-300))
    _, g_final = _stress_grad(y_best, d, n)

    return EmbeddingResult(
        points=p,
        stress=f_best,
        max_abs_error=float(np.max(resid)),
        max_rel_distortion=float(np.max(ratios)),
        iterations_used=iters_best,
        restarts_used=problem.restarts,
        converged=converged,
        failed_restarts=failed_restarts,
        best_restart=r_best,
        grad_norm=float(np.sqrt(np.sum(g_final * g_final))),
    )


def gradient_check(
    problem: EmbeddingProblem, config: np.ndarray | None = None, h: float = 1e-5
) -> float:
    """Max relative disagreement between analytic and central-difference gradients.

    `config` is a chart-variable array of shape (m, 2n); when omitted, a
    deterministic interior configuration is drawn from the problem seed.
    """
    d = problem.distance_matrix
    m, n = problem.size, problem.target_dim
    if not (1e-7 <= h <= 1e-4):
        raise DomainError("finite-difference step h must lie in [1e-7, 1e-4]")
    if config is None:
        rng = np.random.default_rng(np.random.SeedSequence(problem.seed, spawn_key=(0xC0FFEE,)))
        g = rng.standard_normal((m, 2 * n))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        x = g * 0.6 * rng.random((m, 1)) ** (1.0 / (2 * n))
        y = x / np.sqrt(1.0 - np.sum(x * x, axis=1, keepdims=True))
    else:
        y = np.asarray(config, dtype=float).copy()
        if y.shape != (m, 2 * n):
            raise DomainError(f"config must have shape {(m, 2 * n)}")

    _, g_analytic = _stress_grad(y, d, n)
    worst = 0.0
    for i in range(m):
        for k in range(2 * n):
            y[i, k] += h
            f_plus = _stress(y, d, n)
            y[i, k] -= 2 * h
            f_minus = _stress(y, d, n)
            y[i, k] += h
            fd = (f_plus - f_minus) / (2 * h)
            a = g_analytic[i, k]
            rel = abs(a - fd) / (abs(a) + abs(fd) + 1e-12)
            worst = max(worst, rel)
    return worst
