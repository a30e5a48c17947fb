import math

import numpy as np
import pytest

from ballmetrics.asymptotics import boundary_scale, dirichlet_ring_delta
from ballmetrics.kernels import dirichlet
from ballmetrics.metrics import delta
from ballmetrics.packing import (
    GRID_START,
    GRID_STEP,
    PackingCertificate,
    certificate,
    obstruction_threshold,
    ring_points,
)
from ballmetrics.points import DomainError

# regression constants frozen from the first oracle run (grid start 5.0,
# step 0.25); a 50-digit recomputation of N = floor(2 pi / sigma) confirms
# the two floor evaluations near ties: N(5) = 1861, N(10) = 276789
FROZEN_THRESHOLDS = {1: 5.0, 2: 14.25, 3: 26.0, 4: 38.75, 5: 51.75, 6: 65.5, 7: 79.5, 8: 93.75}


def test_ring_point_count_reference_values():
    assert int(math.floor(2 * math.pi / boundary_scale(5.0).sigma)) == 1861
    assert int(math.floor(2 * math.pi / boundary_scale(10.0).sigma)) == 276789


def test_ring_points_layout():
    pts = ring_points(6.0, count_cap=16)
    bs = boundary_scale(6.0)
    n_total = int(math.floor(2 * math.pi / bs.sigma))
    assert pts.shape == (16,)
    assert np.allclose(np.abs(pts), bs.z, atol=1e-15)
    gaps = np.diff(np.angle(pts))
    assert np.allclose(gaps, 2 * math.pi / n_total, atol=1e-15)


def test_ring_points_capped_by_total():
    pts = ring_points(5.0, count_cap=10**9)
    assert pts.shape == (1861,)


def test_ring_points_requires_regime_and_representability():
    with pytest.raises(DomainError):
        ring_points(4.0)
    with pytest.raises(DomainError):
        ring_points(40.0)  # 1 - sigma rounds onto 1.0
    with pytest.raises(DomainError):
        ring_points(6.0, count_cap=1)


def test_adjacent_separation_bounds_certificate_value():
    # the certified min_separation is the delta at angular gap sigma; actual
    # ring gaps 2 pi / N are slightly wider, so measured adjacent distances
    # sit just above it and are identical around the ring
    K = 7.0
    cert = certificate(1, K)
    pts = ring_points(K, count_cap=8)
    kid = dirichlet()
    adjacent = [delta(kid, pts[i], pts[i + 1]) for i in range(7)]
    assert max(adjacent) - min(adjacent) < 1e-12
    assert all(d >= cert.min_separation for d in adjacent)
    # actual gap 2 pi / floor(2 pi / sigma) exceeds sigma by at most one part
    # in N, which moves delta by ~1e-5 at K = 7
    assert adjacent[0] == pytest.approx(cert.min_separation, abs=1e-4)


def test_certificate_reference_case_dim_one():
    cert = certificate(1, 10.0)
    assert cert.N == 276789
    assert cert.n_times_v_small == pytest.approx(1393.6869040067586, rel=1e-12)
    assert cert.v_large == pytest.approx(10.445408613408359, rel=1e-12)
    assert not cert.feasible


def test_certificate_internal_consistency():
    for n, K in ((1, 6.0), (2, 20.0), (3, 33.5)):
        cert = certificate(n, K)
        assert cert.min_separation == pytest.approx(
            dirichlet_ring_delta(K, boundary_scale(K).sigma), abs=1e-15
        )
        assert cert.small_radius < cert.min_separation / 2
        assert cert.enclosing_radius == min(cert.triangle_bound, cert.enclosing_cap)
        assert cert.n_times_v_small == cert.N * cert.v_small
        assert cert.feasible == (cert.n_times_v_small <= cert.v_large)
        # the exact form carries the extra e^-K/K mass; below float resolution
        # once K is past ~36, so strict only at moderate K
        assert cert.center_distance_exact >= cert.center_distance
        if K <= 30.0:
            assert cert.center_distance_exact > cert.center_distance


def test_certificate_round_trips_through_dict():
    cert = certificate(2, 12.0)
    d = cert.to_dict()
    assert d["schema_version"] == 1
    assert PackingCertificate.from_dict(d) == cert


def test_certificate_rejects_bad_arguments():
    with pytest.raises(DomainError):
        certificate(0, 10.0)
    with pytest.raises(DomainError):
        certificate(1, 4.75)


def test_count_exceeds_exponential_on_grid():
    # N ~ 4 pi e^K, so N > e^K with a factor ~12.5 of slack
    for i in range(61):
        K = 5.0 + 0.25 * i
        bs = boundary_scale(K)
        n_count = int(math.floor(2 * math.pi / bs.sigma))
        assert n_count > math.exp(K)


def test_threshold_reference_values_and_monotonicity():
    got = {n: obstruction_threshold(n, 120.0) for n in range(1, 9)}
    assert got == FROZEN_THRESHOLDS
    vals = [got[n] for n in range(1, 9)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_threshold_boundary_is_sharp():
    # feasible on the last grid point before each frozen threshold
    for n, k_star in FROZEN_THRESHOLDS.items():
        assert not certificate(n, k_star).feasible
        if k_star > GRID_START:
            assert certificate(n, k_star - GRID_STEP).feasible


def test_threshold_none_when_grid_too_short():
    assert obstruction_threshold(3, 20.0) is None


def test_threshold_rejects_bad_grid():
    with pytest.raises(DomainError):
        obstruction_threshold(1, 4.0)
