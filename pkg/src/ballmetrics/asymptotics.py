"""Near-boundary scaling of the log-weighted disk metric.

A base point approaching the boundary is parameterised by a log scale K > 1:

    sigma solves 2 sigma - sigma^2 = exp(-K),   z = 1 - sigma,

so that 1 - z^2 = exp(-K) exactly.  All closed forms below are evaluated in
terms of eps = exp(-K) rather than the rounded double z, which keeps full
relative precision for every K (the point z itself stops being representable
in doubles near K ~ 36).

Distance from the origin for the log-weighted kernel:

    1 - delta^2(0, z) = z^2 / (-log(1 - z^2)) = (1 - eps) / K      (exact)
                      ~ 1 / K                                       (large K)

The simplified form sqrt(1 - 1/K) is accurate to O(exp(-K)/K); the two
expressions agree to 1e-12 only for K >= 24.  `center_distance_dirichlet`
returns the simplified form, `center_distance_dirichlet_exact` the exact one.

Displacement under a boundary-scale rotation z -> z e^(i sigma):

    1 - delta^2(z, z e^(i sigma)) = |log(1 - z^2 e^(i sigma))|^2 / K^2 (exact)
                                  = 1 - 2A/K + O(1/K^2),

with A = Re log(1 - i/2) = ln(5/4) / 2, because 1 - z^2 e^(i sigma) is
asymptotically exp(-K) (1 - i/2).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .points import DomainError

__all__ = [
    "BoundaryScale",
    "RotationEstimate",
    "boundary_scale",
    "center_distance_dirichlet",
    "center_distance_dirichlet_exact",
    "rotation_displacement",
    "logpower_center_distance",
    "dirichlet_ring_delta",
    "LEADING_ROTATION_CONSTANT",
]

# A = Re log(1 - i/2) = ln(5/4)/2: leading constant of the rotation estimate
LEADING_ROTATION_CONSTANT = 0.5 * math.log(1.25)


@dataclass(frozen=True)
class BoundaryScale:
    """Base-point parameterisation at log scale K (1 - z^2 = eps = exp(-K))."""

    K: float
    sigma: float
    z: float
    eps: float


@dataclass(frozen=True)
class RotationEstimate:
    """Exact rotation displacement at scale K with its expansion bookkeeping.

    exact_one_minus_delta_sq: |log(1 - z^2 e^(i sigma))|^2 / K^2
    leading_constant_a:       ln(5/4)/2
    remainder:                exact - (1 - 2A/K), of size O(1/K^2)
    """

    K: float
    exact_one_minus_delta_sq: float
    leading_constant_a: float
    remainder: float


def boundary_scale(K: float, *, allow_small: bool = False) -> BoundaryScale:
    """Solve 2 sigma - sigma^2 = exp(-K) for sigma in (0, 1) and set z = 1 - sigma.

    Requires K > 1.  With allow_small=True, 0 < K <= 1 is accepted with a
    warning for arithmetic cross-checks only.
    """
    K = float(K)
    if not math.isfinite(K) or K <= 0.0:
        raise DomainError("boundary scale K must be positive and finite")
    if K <= 1.0:
        if not allow_small:
            raise DomainError("boundary scale requires K > 1 (pass allow_small=True to override)")
        warnings.warn(f"boundary scale K = {K} <= 1 accepted for arithmetic checks only")
    eps = math.exp(-K)
    # sigma = 1 - sqrt(1 - eps) without cancellation
    sigma = eps / (1.0 + math.sqrt(1.0 - eps))
    return BoundaryScale(K=K, sigma=sigma, z=1.0 - sigma, eps=eps)


def center_distance_dirichlet(K: float) -> float:
    """Large-K simplification sqrt(1 - 1/K) of the distance from the origin.

    Differs from the exact value by ~ exp(-K)/(2K); see module docstring.
    """
    K = float(K)
    if K <= 1.0:
        raise DomainError("requires K > 1")
    return math.sqrt(1.0 - 1.0 / K)


def center_distance_dirichlet_exact(K: float) -> float:
    """Exact distance sqrt(1 - (1 - exp(-K))/K) from the origin to z(K)."""
    K = float(K)
    if K <= 1.0:
        raise DomainError("requires K > 1")
    one_minus_eps = -math.expm1(-K)
    return math.sqrt(1.0 - one_minus_eps / K)


def _log_one_minus_rotated(K: float, theta: float) -> complex:
    """log(1 - z(K)^2 e^(i theta)) evaluated through eps = exp(-K).

    1 - z^2 e^(i theta) = eps + (1 - eps)(1 - e^(i theta)); both the real part
    eps + (1-eps) * 2 sin^2(theta/2) and the imaginary part -(1-eps) sin(theta)
    are formed without subtractive cancellation.
    """
    eps = math.exp(-K)
    one_minus_eps = -math.expm1(-K)
    re = eps + one_minus_eps * 2.0 * math.sin(0.5 * theta) ** 2
    im = -one_minus_eps * math.sin(theta)
    return complex(math.log(math.hypot(re, im)), math.atan2(im, re))


def dirichlet_ring_delta(K: float, theta) -> float | np.ndarray:
    """delta between z(K) and z(K) e^(i theta) for the log-weighted kernel.

    Exact closed form |log(1 - z^2 e^(i theta))|^2 / K^2 for 1 - delta^2; the
    kernel's 1/u prefactors cancel between numerator and diagonals, so the
    identity holds for every K > 1 and every angle.  Vectorised over theta.
    """
    K = float(K)
    if K <= 1.0:
        raise DomainError("requires K > 1")
    theta_arr = np.asarray(theta, dtype=float)
    scalar = theta_arr.ndim == 0
    th = np.atleast_1d(theta_arr)
    eps = math.exp(-K)
    one_minus_eps = -math.expm1(-K)
    re = eps + one_minus_eps * 2.0 * np.sin(0.5 * th) ** 2
    im = -one_minus_eps * np.sin(th)
    log_sq = np.log(np.hypot(re, im)) ** 2 + np.arctan2(im, re) ** 2
    delta_sq = np.maximum(1.0 - log_sq / (K * K), 0.0)
    out = np.sqrt(delta_sq)
    return float(out[0]) if scalar else out


def rotation_displacement(K: float) -> RotationEstimate:
    """Exact displacement of z(K) under rotation by sigma, with expansion terms.

    K >= 5 keeps the estimate inside its asymptotic regime.
    """
    K = float(K)
    if K < 5.0:
        raise DomainError("rotation displacement requires K >= 5")
    sigma = boundary_scale(K).sigma
    logw = _log_one_minus_rotated(K, sigma)
    exact = abs(logw) ** 2 / (K * K)
    a = LEADING_ROTATION_CONSTANT
    remainder = exact - (1.0 - 2.0 * a / K)
    return RotationEstimate(
        K=K, exact_one_minus_delta_sq=exact, leading_constant_a=a, remainder=remainder
    )


def logpower_center_distance(K: float, m: int) -> float:
    """Distance from the origin to z(K) for the m-th power of the log kernel.

    1 - delta^2 = ((1 - eps)/K)^m exactly, the m-th power of the base case:
    kernel diagonals raise to the m-th power and the off-diagonal value at
    the origin stays 1.
    """
    K = float(K)
    if K <= 1.0:
        raise DomainError("requires K > 1")
    if int(m) != m or m < 1:
        raise DomainError("power m must be an integer >= 1")
    one_minus_eps = -math.expm1(-K)
    one_minus_delta_sq = (one_minus_eps / K) ** m
    return math.sqrt(1.0 - one_minus_delta_sq)


def _kernel_path_center_distance(K: float) -> float:
    """Raw-point cross-check of the exact centre distance (small K only).

    Forms z(K) as a double and evaluates the kernel diagonal directly; loses
    relative precision like eps_machine/exp(-K), so it is only meaningful for
    K up to about 12.  Kept for verification against the eps-form.
    """
    z = boundary_scale(K).z
    diag = -cmath.log(1.0 - z * z).real / (z * z)
    return math.sqrt(1.0 - 1.0 / diag)
