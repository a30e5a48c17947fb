"""Validation of points in the open unit disk and the open unit ball of C^n.

Every public operation in this package works on points strictly inside the
unit ball.  Points whose Euclidean norm falls in [1 - BOUNDARY_TOL, 1) are
accepted but flagged with a BoundaryProximityWarning, because double
precision cannot resolve kernel values reliably that close to the sphere.
Norms >= 1 are rejected outright.
"""

from __future__ import annotations

import warnings

import numpy as np

# norm in [1 - BOUNDARY_TOL, 1) -> accepted, flagged; norm >= 1 -> DomainError
BOUNDARY_TOL = 1e-12

# raw-point kernel arithmetic switches to a log-magnitude path inside this band
NEAR_BOUNDARY = 1e-8


class DomainError(ValueError):
    """Argument lies outside the open unit disk/ball, or shapes mismatch."""


class BoundaryProximityWarning(UserWarning):
    """Point accepted although it hugs the boundary closer than BOUNDARY_TOL."""


def as_disk_point(z) -> complex:
    """Validate a point of the open unit disk, returning it as a complex scalar."""
    z = complex(z)
    r = abs(z)
    if not np.isfinite(r):
        raise DomainError("disk point must be finite")
    if r >= 1.0:
        raise DomainError(f"|z| = {r} >= 1: point is not inside the unit disk")
    if r >= 1.0 - BOUNDARY_TOL:
        warnings.warn(
            f"disk point with |z| = {r} is within {BOUNDARY_TOL} of the boundary",
            BoundaryProximityWarning,
            stacklevel=2,
        )
    return z

def as_ball_point(z, dim: int | None = None) -> np.ndarray:
    """Validate a point of the open unit ball of C^dim as a 1-d complex array.

    Scalars are promoted to points of the 1-ball (the disk).
    """
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if arr.ndim != 1:
        raise DomainError(f"ball point must be a vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DomainError(f"expected a point of C^{dim}, got C^{arr.shape[0]}")
    r = float(np.linalg.norm(arr))
    if not np.isfinite(r):
        raise DomainError("ball point must be finite")
    if r >= 1.0:
        raise DomainError(f"||z|| = {r} >= 1: point is not inside the unit ball")
    if r >= 1.0 - BOUNDARY_TOL:
        warnings.warn(
            f"ball point with ||z|| = {r} is within {BOUNDARY_TOL} of the boundary",
            BoundaryProximityWarning,
            stacklevel=2,
        )
    return arr


def check_disk_points(z: np.ndarray) -> np.ndarray:
    """Vectorised validation used by the sweep helpers (no boundary warning)."""
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    if not np.all(np.isfinite(r)) or np.any(r >= 1.0):
        raise DomainError("all points must lie strictly inside the unit disk")
    return z


def check_ball_points(z: np.ndarray) -> np.ndarray:
    """Validate an array of shape (..., n) of unit-ball points."""
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        z = z.reshape(1)
    r = np.linalg.norm(z, axis=-1)
    if not np.all(np.isfinite(r)) or np.any(r >= 1.0):
        raise DomainError("all points must lie strictly inside the unit ball")
    return z


def is_near_boundary(z) -> bool:
    """True when the point is within NEAR_BOUNDARY of the unit sphere."""
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    return bool(np.linalg.norm(arr) >= 1.0 - NEAR_BOUNDARY)
