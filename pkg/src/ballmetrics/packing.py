"""Volume-obstruction certificates for boundary ring configurations.

At log scale K, place N = floor(2 pi / sigma) points on the circle of radius
1 - sigma.  In the log-weighted disk metric each adjacent pair is separated
by at least delta(z, z e^(i sigma)) (separation grows with the angular gap,
and the actual ring gap 2 pi / N is >= sigma), all points sit at the same
distance from the origin, and N grows like 2 pi e^K.

If an isometric copy of this configuration existed inside the ball of C^n
with the pseudohyperbolic metric, then N disjoint balls of radius just under
half the separation would fit inside a ball of radius bounded through the
strengthened triangle inequality.  Both volumes have closed forms, so the
packing inequality N * V_small <= V_large is checkable exactly; when it
fails, no such isometric copy exists and the certificate reports
feasible = False.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__ as _tool_version
from .asymptotics import (
    boundary_scale,
    center_distance_dirichlet,
    center_distance_dirichlet_exact,
    dirichlet_ring_delta,
)
from .ball_geometry import pseudo_ball_volume, strengthened_triangle_bound
from .points import DomainError
from .serialize import SCHEMA_VERSION

__all__ = ["PackingCertificate", "ring_points", "certificate", "obstruction_threshold"]

# guard keeping the small balls strictly disjoint: radius = sep/2 * (1 - GUARD)
RADIUS_GUARD = 1e-9

GRID_START = 5.0
GRID_STEP = 0.25


@dataclass(frozen=True)
class PackingCertificate:
    """One feasibility check of the ring packing at (n, K).

    feasible = (N * v_small <= v_large), computed exactly as stated from the
    closed-form volumes.  enclosing_radius is min(triangle_bound, cap) with
    cap = 1 - 1/(3K); both ingredients are reported.  center_distance is the
    large-K simplification used by the triangle bound, center_distance_exact
    the exact distance from the origin to the ring.
    """

    n: int
    K: float
    N: int
    min_separation: float
    small_radius: float
    center_distance: float
    center_distance_exact: float
    triangle_bound: float
    enclosing_cap: float
    enclosing_radius: float
    v_small: float
    v_large: float
    n_times_v_small: float
    feasible: bool

    def to_dict(self) -> dict:
        out = {"schema_version": SCHEMA_VERSION, "tool_version": _tool_version}
        out.update(asdict(self))
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "PackingCertificate":
        fields = {k: d[k] for k in cls.__dataclass_fields__}
        return cls(**fields)


def ring_points(K: float, count_cap: int = 4096) -> np.ndarray:
    """Explicit ring points (1 - sigma) e^(2 pi i j / N), j < min(N, count_cap).

    Intended for direct distance verification at moderate K; raises once
    1 - sigma is no longer representable below 1 in double precision.
    """
    K = float(K)
    if K < 5.0:
        raise DomainError("ring construction requires K >= 5")
    if count_cap < 2:
        raise DomainError("count_cap must be at least 2")
    bs = boundary_scale(K)
    if bs.z >= 1.0:
        raise DomainError(f"ring radius 1 - sigma rounds to 1.0 at K = {K}; points not representable")
    n_total = int(math.floor(2.0 * math.pi / bs.sigma))
    count = min(n_total, count_cap)
    j = np.arange(count)
    return bs.z * np.exp(2j * np.pi * j / n_total)


def certificate(n: int, K: float) -> PackingCertificate:
    """Evaluate the packing certificate for target ball dimension n at scale K."""
    if int(n) != n or n < 1:
        raise DomainError("dimension n must be an integer >= 1")
    K = float(K)
    if K < GRID_START:
        raise DomainError(f"certificate requires K >= {GRID_START} (asymptotic regime)")

    bs = boundary_scale(K)
    big_n = int(math.floor(2.0 * math.pi / bs.sigma))
    min_sep = float(dirichlet_ring_delta(K, bs.sigma))
    small_radius = 0.5 * min_sep * (1.0 - RADIUS_GUARD)

    d_center = center_distance_dirichlet(K)
    d_center_exact = center_distance_dirichlet_exact(K)
    tb = strengthened_triangle_bound(d_center, small_radius)
    cap = 1.0 - 1.0 / (3.0 * K)
    enclosing = min(tb, cap)

    v_small = pseudo_ball_volume(small_radius, n)
    v_large = pseudo_ball_volume(enclosing, n)
    n_times_v_small = big_n * v_small

    return PackingCertificate(
        n=int(n),
        K=K,
        N=big_n,
        min_separation=min_sep,
        small_radius=small_radius,
        center_distance=d_center,
        center_distance_exact=d_center_exact,
        triangle_bound=tb,
        enclosing_cap=cap,
        enclosing_radius=enclosing,
        v_small=v_small,
        v_large=v_large,
        n_times_v_small=n_times_v_small,
        feasible=bool(n_times_v_small <= v_large),
    )


def obstruction_threshold(
    n: int, k_max: float, step: float = GRID_STEP, start: float = GRID_START
) -> float | None:
    """Smallest grid K in [start, k_max] with an infeasible certificate, or None.

    The whole grid is evaluated and infeasibility is checked to be monotone:
    once the packing inequality fails it must keep failing for larger K.  A
    non-monotone grid would invalidate reading the first failure as a
    threshold, so it raises instead of returning silently.
    """
    if k_max < start:
        raise DomainError(f"k_max must be >= {start}")
    count = int(math.floor((k_max - start) / step + 1e-9)) + 1
    grid = [start + i * step for i in range(count)]
    feasible_flags = [certificate(n, k).feasible for k in grid]

    threshold = None
    for k, ok in zip(grid, feasible_flags):
        if not ok:
            threshold = k
            break
    if threshold is not None:
        tail = [ok for k, ok in zip(grid, feasible_flags) if k >= threshold]
        if any(tail):
            raise RuntimeError(f"infeasibility is not monotone on the grid for n = {n}")
    return threshold
