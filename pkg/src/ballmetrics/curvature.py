"""Finite-difference Gaussian curvature of the kernel metrics on the disk.

Each kernel induces a conformal metric with density

    alpha^2(z) = Laplacian of log k(z, z),

the Laplacian being the real two-dimensional one (equal to 4 d/dz d/dzbar).
Its Gaussian curvature is

    kappa(z) = -(Laplacian of log alpha)(z) / alpha^2(z).

Both Laplacians are evaluated with 5-point stencils: the density directly
from log-diagonal samples, and kappa by nesting, i.e. the outer stencil is
applied to log alpha with every alpha value obtained from an inner density
stencil at the same spacing.  Everything is second order, so halving the
step shrinks the error by about 4; the reported est_error is the Richardson
estimate (4/3) |kappa(step) - kappa(step/2)|.

For the Szego kernel of the disk (drury_arveson n = 1) the density is
4 / (1 - |z|^2)^2 and kappa is identically -1, which anchors the stencils.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kernels import KernelId, kernel_log_diag
from .points import DomainError
from .serialize import write_csv

__all__ = ["CurvatureSample", "metric_density", "gaussian_curvature", "write_curvature_csv"]

MIN_STEP = 1e-6
MAX_STEP = 1e-2

# margin factors keeping every nested stencil point strictly interior
DENSITY_MARGIN = 4
CURVATURE_MARGIN = 8


@dataclass(frozen=True)
class CurvatureSample:
    """Curvature evaluation at one point of the disk."""

    z: complex
    alpha_sq: float
    kappa: float
    step: float
    est_error: float


def _log_diag(kid: KernelId, x: float, y: float) -> float:
    return kernel_log_diag(kid, complex(x, y))


def _laplacian(f, x: float, y: float, h: float) -> float:
    """5-point stencil (f(x+h,y) + f(x-h,y) + f(x,y+h) + f(x,y-h) - 4f)/h^2.

    The four neighbor values sit within a factor of two of the center value,
    so each difference below is exact in floating point; fsum then rounds the
    cancellation-prone combination once instead of three times.
    """
    c = f(x, y)
    return math.fsum(
        (f(x + h, y) - c, f(x - h, y) - c, f(x, y + h) - c, f(x, y - h) - c)
    ) / (h * h)


def _check_step(z: complex, step: float, margin_factor: int) -> None:
    if not (MIN_STEP <= step <= MAX_STEP):
        raise DomainError(f"step must lie in [{MIN_STEP}, {MAX_STEP}]")
    if abs(z) + margin_factor * step >= 1.0:
        raise DomainError(
            f"point with |z| = {abs(z)} too close to the boundary for step {step} "
            f"(needs margin {margin_factor} * step)"
        )


def metric_density(kid: KernelId, z, step: float) -> float:
    """Conformal density alpha^2 = Laplacian of log k(z, z) at z."""
    if kid.dim != 1:
        raise DomainError("curvature operations are defined on disk kernels only")
    z = complex(z)
    _check_step(z, step, DENSITY_MARGIN)
    val = _laplacian(lambda x, y: _log_diag(kid, x, y), z.real, z.imag, step)
    if val <= 0.0:
        raise DomainError(f"non-positive density {val} at {z}; step too coarse?")
    return val


def _kappa_once(kid: KernelId, z: complex, step: float) -> tuple[float, float]:
    """Nested-stencil kappa at spacing `step`; returns (alpha_sq, kappa)."""

    def log_alpha(x: float, y: float) -> float:
        dens = _laplacian(lambda u, v: _log_diag(kid, u, v), x, y, step)
        if dens <= 0.0:
            raise DomainError(f"non-positive density at ({x}, {y}); step too coarse?")
        return 0.5 * math.log(dens)

    alpha_sq = _laplacian(lambda u, v: _log_diag(kid, u, v), z.real, z.imag, step)
    lap_log_alpha = _laplacian(log_alpha, z.real, z.imag, step)
    return alpha_sq, -lap_log_alpha / alpha_sq


def gaussian_curvature(kid: KernelId, z, step: float) -> CurvatureSample:
    """Gaussian curvature sample at z with Richardson error estimate.

    kappa is the nested-stencil value at the requested step; est_error
    estimates its truncation error from a second evaluation at step/2.
    """
    if kid.dim != 1:
        raise DomainError("curvature operations are defined on disk kernels only")
    z = complex(z)
    _check_step(z, step, CURVATURE_MARGIN)
    alpha_sq, kappa = _kappa_once(kid, z, step)
    _, kappa_half = _kappa_once(kid, z, step / 2.0)
    est_error = (4.0 / 3.0) * abs(kappa - kappa_half)
    return CurvatureSample(z=z, alpha_sq=alpha_sq, kappa=kappa, step=step, est_error=est_error)


def write_curvature_csv(samples: list[CurvatureSample], kid: KernelId, path) -> None:
    """Tabulate samples (one row per point) with kernel and Laplacian tags."""
    rows = [
        [s.z.real, s.z.imag, s.alpha_sq, s.kappa, s.step, s.est_error, kid.label, "real_2d"]
        for s in samples
    ]
    write_csv(
        path,
        ["z_re", "z_im", "alpha_sq", "kappa", "step", "est_error", "kernel", "laplacian"],
        rows,
    )
