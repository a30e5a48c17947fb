"""Kernel-induced and pseudohyperbolic metrics.

delta(kid, x, w) is the normalised-kernel metric

    delta = sqrt(1 - |k(x, w)|^2 / (k(x, x) * k(w, w)))

which is invariant under rescaling k -> lambda(x) lambda(w) k.  For the
drury_arveson kernels it coincides with the pseudohyperbolic distance rho,
whose cancellation-free closed form

    rho(z, w)^2 = (||z - w||^2 - (||z||^2 ||w||^2 - |<w, z>|^2)) / |1 - <w, z>|^2

reduces at n = 1 to the Moebius quotient |(z - w) / (1 - conj(z) w)| because
the bracketed Cauchy-Schwarz defect vanishes identically on C^1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import KernelId, kernel_eval
from .points import DomainError, is_near_boundary

__all__ = ["delta", "delta_with_diagnostics", "rho", "delta_rescale_check", "DeltaDiagnostics"]


@dataclass(frozen=True)
class DeltaDiagnostics:
    """Numerical audit trail of one delta evaluation."""

    pre_clamp: float          # 1 - ratio before clamping at zero
    clamped: bool             # True if pre_clamp < 0 was clipped
    log_path: bool            # True if the log-magnitude ratio path ran


def _delta_ratio(kid: KernelId, x, w) -> tuple[float, bool]:
    """|k(x,w)|^2 / (k(x,x) k(w,w)) with overflow discipline.

    Returns (ratio, log_path_used).  Near-boundary points (or huge kernel
    magnitudes) go through the log-magnitude form so that intermediate
    products cannot overflow even for diagonals of order exp(60) and beyond.
    """
    kxw = kernel_eval(kid, x, w)
    kxx = float(np.real(kernel_eval(kid, x, x)))
    kww = float(np.real(kernel_eval(kid, w, w)))
    if kxx <= 0.0 or kww <= 0.0:
        raise DomainError("kernel diagonal must be positive")
    mag = abs(complex(kxw)) if np.ndim(kxw) == 0 else float(np.abs(kxw))
    big = max(mag, kxx, kww)
    if big > 1e140 or is_near_boundary(x) or is_near_boundary(w):
        if mag == 0.0:
            return 0.0, True
        log_ratio = 2.0 * math.log(mag) - math.log(kxx) - math.log(kww)
        return math.exp(log_ratio), True
    # ordered quotient keeps intermediates O(1) even for large magnitudes
    return (mag / kxx) * (mag / kww), False


def delta_with_diagnostics(kid: KernelId, x, w) -> tuple[float, DeltaDiagnostics]:
    ratio, log_path = _delta_ratio(kid, x, w)
    pre_clamp = 1.0 - ratio
    clamped = pre_clamp < 0.0
    value = math.sqrt(max(pre_clamp, 0.0))
    return value, DeltaDiagnostics(pre_clamp=pre_clamp, clamped=clamped, log_path=log_path)


def delta(kid: KernelId, x, w) -> float:
    """Normalised-kernel distance between two points of the kernel's domain."""
    value, _ = delta_with_diagnostics(kid, x, w)
    return value


def delta_array(kid: KernelId, x, w) -> np.ndarray:
    """Vectorised delta over batches of points (no boundary log path).

    Disk kernels take complex arrays; drury_arveson takes shape (..., n).
    Intended for sweep-style verification where points stay away from the
    boundary band handled by `delta`.
    """
    kxw = kernel_eval(kid, x, w)
    kxx = np.real(kernel_eval(kid, x, x))
    kww = np.real(kernel_eval(kid, w, w))
    mag = np.abs(kxw)
    ratio = (mag / kxx) * (mag / kww)
    return np.sqrt(np.maximum(1.0 - ratio, 0.0))


def rho(z, w) -> float | np.ndarray:
    """Pseudohyperbolic distance on the ball of C^n (closed form).

    Scalars are treated as disk points; arrays of shape (..., n) broadcast.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    scalar_args = z.ndim == 0 and w.ndim == 0
    if z.ndim == 0:
        z = z.reshape(1)
    if w.ndim == 0:
        w = w.reshape(1)
    nz = np.sum(np.abs(z) ** 2, axis=-1)
    nw = np.sum(np.abs(w) ** 2, axis=-1)
    if np.any(nz >= 1.0) or np.any(nw >= 1.0):
        raise DomainError("all points must lie strictly inside the unit ball")
    inner = np.sum(w * np.conj(z), axis=-1)
    diff = np.sum(np.abs(z - w) ** 2, axis=-1)
    # Cauchy-Schwarz defect ||z||^2 ||w||^2 - |<w,z>|^2 via Lagrange's identity:
    # a sum of squares, so it is exactly 0 when n = 1 or z == w, where the
    # subtractive form leaves noise that the small denominator then amplifies
    defect = np.zeros(np.broadcast_shapes(z.shape[:-1], w.shape[:-1]))
    for i in range(z.shape[-1]):
        for j in range(i + 1, z.shape[-1]):
            t = z[..., i] * w[..., j] - z[..., j] * w[..., i]
            defect = defect + (t.real**2 + t.imag**2)
    num_sq = np.maximum(diff - defect, 0.0)
    den_sq = np.abs(1.0 - inner) ** 2
    out = np.sqrt(num_sq / den_sq)
    return float(out[()]) if scalar_args and out.ndim == 0 else (float(out[0]) if scalar_args else out)


def delta_rescale_check(kid: KernelId, scale, x, w, tol: float = 1e-13) -> bool:
    """Check invariance of delta under k -> scale(x) scale(w) k.

    `scale` maps a point to a strictly positive real.  The scaled evaluation
    runs through the same guarded ratio arithmetic as `delta`, so constant
    scales as large as 1e30 must not overflow and must reproduce delta to
    within `tol`.
    """
    sx = float(scale(x))
    sw = float(scale(w))
    if sx <= 0.0 or sw <= 0.0:
        raise DomainError("scale function must be strictly positive")
    kxw = complex(np.asarray(kernel_eval(kid, x, w)).reshape(())) * sx * sw
    kxx = float(np.real(kernel_eval(kid, x, x))) * sx * sx
    kww = float(np.real(kernel_eval(kid, w, w))) * sw * sw
    mag = abs(kxw)
    if max(mag, kxx, kww) > 1e140:
        ratio = math.exp(2.0 * math.log(mag) - math.log(kxx) - math.log(kww)) if mag else 0.0
    else:
        ratio = (mag / kxx) * (mag / kww)
    scaled = math.sqrt(max(1.0 - ratio, 0.0))
    return abs(scaled - delta(kid, x, w)) <= tol
