"""Reproducing kernels on the unit disk and the unit ball of C^n.

Four kernel families are implemented:

``dirichlet``
    k(z, w) = log(1/(1 - u)) / u with u = conj(z) * w, and k = 1 when u = 0.
    This is the reproducing kernel of the holomorphic space on the disk whose
    Taylor coefficients are weighted by (j + 1):  k(z, w) = sum_j u^j / (j+1).

``drury_arveson``
    k(z, w) = 1 / (1 - <w, z>) on the ball of C^n, with the inner product
    <w, z> = sum_i w_i * conj(z_i).  n = 1 is the Szego kernel of the disk.

``dirichlet_alpha``
    k(z, w) = (1 - u)^(-alpha) on the disk, alpha in (0, 1].  alpha = 1
    coincides with drury_arveson at n = 1.

``log_power``
    k(z, w) = (dirichlet kernel)^m on the disk for an integer power m >= 1.
    m = 1 runs the identical evaluation path as ``dirichlet``.

All evaluators broadcast over numpy arrays: disk kernels accept complex
scalars or arrays, the ball kernel accepts arrays of shape (..., n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .points import DomainError, as_ball_point, as_disk_point

__all__ = [
    "KernelId",
    "dirichlet",
    "drury_arveson",
    "dirichlet_alpha",
    "log_power",
    "dirichlet_kernel",
    "da_kernel",
    "kernel_eval",
    "kernel_diag",
    "kernel_log_diag",
]

# series cutoff for log(1/(1-u))/u; below it a 21-term Horner sum is exact to
# well under double rounding (truncation ~ |u|^21 / 22 < 1e-64)
SERIES_RADIUS = 1e-3
SERIES_TERMS = 21


@dataclass(frozen=True)
class KernelId:
    """Identifier of a kernel family together with its parameters.

    family: one of "dirichlet", "drury_arveson", "dirichlet_alpha", "log_power"
    n:      ball dimension (drury_arveson only), n >= 1
    alpha:  exponent in (0, 1] (dirichlet_alpha only)
    power:  integer power m >= 1 (log_power only)
    """

    family: str
    n: int = 1
    alpha: float = 1.0
    power: int = 1

    def __post_init__(self):
        if self.family not in ("dirichlet", "drury_arveson", "dirichlet_alpha", "log_power"):
            raise DomainError(f"unknown kernel family {self.family!r}")
        if self.family == "drury_arveson":
            if int(self.n) != self.n or self.n < 1:
                raise DomainError("drury_arveson requires an integer dimension n >= 1")
        if self.family == "dirichlet_alpha":
            if not (0.0 < self.alpha <= 1.0):
                raise DomainError("dirichlet_alpha requires alpha in (0, 1]")
        if self.family == "log_power":
            if int(self.power) != self.power or self.power < 1:
                raise DomainError("log_power requires an integer power m >= 1")

    @property
    def dim(self) -> int:
        return self.n if self.family == "drury_arveson" else 1

    @property
    def label(self) -> str:
        if self.family == "drury_arveson":
            return f"drury_arveson(n={self.n})"
        if self.family == "dirichlet_alpha":
            return f"dirichlet_alpha(alpha={self.alpha})"
        if self.family == "log_power":
            return f"log_power(m={self.power})"
        return "dirichlet"


def dirichlet() -> KernelId:
    return KernelId("dirichlet")


def drury_arveson(n: int = 1) -> KernelId:
    return KernelId("drury_arveson", n=n)


def dirichlet_alpha(alpha: float) -> KernelId:
    return KernelId("dirichlet_alpha", alpha=alpha)


def log_power(m: int) -> KernelId:
    return KernelId("log_power", power=m)


def _log_ratio(u: np.ndarray) -> np.ndarray:
    """log(1/(1-u)) / u elementwise, equal to sum_{j>=0} u^j/(j+1); 1 at u = 0.

    |u| < SERIES_RADIUS uses the truncated Taylor sum (Horner form), which
    avoids the 0/0 cancellation of the closed form near u = 0.
    """
    u = np.asarray(u, dtype=complex)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    out = np.empty_like(u)
    small = np.abs(u) < SERIES_RADIUS

    if np.any(small):
        us = u[small]
        acc = np.full(us.shape, 1.0 / SERIES_TERMS, dtype=complex)
        for j in range(SERIES_TERMS - 1, 0, -1):
            acc = acc * us + 1.0 / j
        out[small] = acc
    if np.any(~small):
        ub = u[~small]
        out[~small] = -np.log(1.0 - ub) / ub

    return out[0] if scalar else out


def _check_disk_args(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.ndim == 0 and w.ndim == 0:
        return complex(as_disk_point(z)), complex(as_disk_point(w))
    rz, rw = np.abs(z), np.abs(w)
    if np.any(rz >= 1.0) or np.any(rw >= 1.0):
        raise DomainError("all points must lie strictly inside the unit disk")
    return z, w


def dirichlet_kernel(z, w):
    """Kernel log(1/(1 - conj(z) w)) / (conj(z) w); value 1 when the product is 0."""
    z, w = _check_disk_args(z, w)
    return _log_ratio(np.conj(z) * w)


def da_kernel(z, w):
    """Kernel 1 / (1 - <w, z>) on the ball, <w, z> = sum_i w_i conj(z_i).

    Accepts single points of shape (n,) or batches of shape (..., n).
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.ndim <= 1 and w.ndim <= 1:
        z = as_ball_point(z)
        w = as_ball_point(w, dim=z.shape[0])
    else:
        if np.any(np.linalg.norm(np.atleast_2d(z), axis=-1) >= 1.0) or np.any(
            np.linalg.norm(np.atleast_2d(w), axis=-1) >= 1.0
        ):
            raise DomainError("all points must lie strictly inside the unit ball")
    inner = np.sum(w * np.conj(z), axis=-1)
    return 1.0 / (1.0 - inner)


def kernel_eval(kid: KernelId, z, w):
    """Evaluate the kernel named by `kid` at (z, w)."""
    if kid.family == "drury_arveson":
        return da_kernel(z, w)
    if kid.family == "dirichlet":
        return dirichlet_kernel(z, w)
    z, w = _check_disk_args(z, w)
    u = np.conj(z) * w
    if kid.family == "dirichlet_alpha":
        return np.exp(-kid.alpha * np.log(1.0 - u))
    # log_power: integer power of the dirichlet kernel; m = 1 is bitwise identical
    base = _log_ratio(u)
    return base if kid.power == 1 else base**kid.power


def kernel_diag(kid: KernelId, z) -> float:
    """Diagonal value k(z, z); always real and >= 1 on the open ball."""
    val = kernel_eval(kid, z, z)
    return float(np.real(val))


def _log_ratio_diag(u: np.ndarray) -> np.ndarray:
    """log(1/(1-u))/u for real u in [0, 1), via log1p to avoid the ulp(1.0)
    rounding floor of forming 1 - u explicitly."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = u < SERIES_RADIUS
    if np.any(small):
        us = u[small]
        acc = np.full(us.shape, 1.0 / SERIES_TERMS)
        for j in range(SERIES_TERMS - 1, 0, -1):
            acc = acc * us + 1.0 / j
        out[small] = acc
    if np.any(~small):
        ub = u[~small]
        out[~small] = -np.log1p(-ub) / ub
    return out


def kernel_log_diag(kid: KernelId, z):
    """log k(z, z) without forming k.

    The diagonal depends only on u = |z|^2 (u = ||z||^2 for the ball kernel),
    so the log can be taken through log1p.  This keeps full relative accuracy
    both near the boundary (where k blows up) and near the center (where
    log k ~ u and a generic log(kernel_diag(...)) path loses to the rounding
    of 1 - u at scale ulp(1)).  Broadcasts like kernel_eval.
    """
    z = np.asarray(z, dtype=complex)
    if kid.family == "drury_arveson":
        if z.ndim <= 1:
            z = as_ball_point(z)
        u = np.sum(z.real**2 + z.imag**2, axis=-1)
    else:
        u = z.real**2 + z.imag**2
    u = np.asarray(u, dtype=float)
    if np.any(u >= 1.0):
        raise DomainError("all points must lie strictly inside the domain")

    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    if kid.family == "drury_arveson":
        out = -np.log1p(-u)
    elif kid.family == "dirichlet_alpha":
        out = -kid.alpha * np.log1p(-u)
    else:
        out = np.log(_log_ratio_diag(u))
        if kid.family == "log_power":
            out = kid.power * out
    return float(out[0]) if scalar else out
