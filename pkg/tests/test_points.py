import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ballmetrics.points import (
    BOUNDARY_TOL,
    NEAR_BOUNDARY,
    BoundaryProximityWarning,
    DomainError,
    as_ball_point,
    as_disk_point,
    check_ball_points,
    check_disk_points,
    is_near_boundary,
)


@given(st.complex_numbers(max_magnitude=0.999, allow_nan=False, allow_infinity=False))
def test_interior_disk_points_pass_through(z):
    assert as_disk_point(z) == complex(z)


@pytest.mark.parametrize("z", [1.0, -1.0, 1j, 0.8 + 0.7j, 2.0, 1.0 + 0j])
def test_disk_rejects_norm_at_least_one(z):
    with pytest.raises(DomainError):
        as_disk_point(z)


@pytest.mark.parametrize("z", [complex("nan"), complex("inf"), complex(0, float("nan"))])
def test_disk_rejects_non_finite(z):
    with pytest.raises(DomainError):
        as_disk_point(z)


def test_disk_warns_in_boundary_band():
    with pytest.warns(BoundaryProximityWarning):
        as_disk_point(1.0 - BOUNDARY_TOL / 2)


def test_disk_band_edge_is_quiet():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        as_disk_point(1.0 - 2 * BOUNDARY_TOL)


def test_ball_point_promotes_scalars():
    p = as_ball_point(0.3 + 0.1j)
    assert p.shape == (1,)
    assert p[0] == 0.3 + 0.1j


def test_ball_point_checks_dimension():
    with pytest.raises(DomainError):
        as_ball_point([0.1, 0.2], dim=3)


def test_ball_rejects_norm_at_least_one():
    # each coordinate is interior but the norm is not
    with pytest.raises(DomainError):
        as_ball_point([0.8, 0.8])


def test_ball_warns_in_boundary_band():
    r = 1.0 - BOUNDARY_TOL / 2
    with pytest.warns(BoundaryProximityWarning):
        as_ball_point([r / np.sqrt(2), r / np.sqrt(2)])


def test_check_disk_points_vectorised():
    z = np.array([0.0, 0.5j, -0.9])
    assert np.array_equal(check_disk_points(z), z)
    with pytest.raises(DomainError):
        check_disk_points(np.array([0.5, 1.0]))


def test_check_ball_points_shape_and_rejection():
    z = np.full((3, 4, 2), 0.1 + 0.1j)
    assert check_ball_points(z).shape == (3, 4, 2)
    z[1, 2] = [0.9, 0.9]
    with pytest.raises(DomainError):
        check_ball_points(z)


def test_near_boundary_band():
    assert is_near_boundary(1.0 - NEAR_BOUNDARY / 2)
    assert not is_near_boundary(1.0 - 2 * NEAR_BOUNDARY)
    assert is_near_boundary([0.7, np.sqrt(1.0 - 0.49 - 1e-10)])
