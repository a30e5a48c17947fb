import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballmetrics.ball_geometry import (
    ball_automorphism,
    mc_invariant_volume,
    mc_invariant_volume_off_center,
    pseudo_ball_volume,
    strengthened_triangle_bound,
)
from ballmetrics.metrics import rho
from ballmetrics.points import DomainError
from ballmetrics.sampling import sample_ball


def test_automorphism_swaps_zero_and_a():
    a = np.array([0.3, -0.2 + 0.1j])
    assert np.allclose(ball_automorphism(a, np.zeros(2)), a, atol=1e-15)
    assert np.allclose(ball_automorphism(a, a), np.zeros(2), atol=1e-15)


def test_automorphism_identity_at_zero_parameter():
    z = np.array([0.4, 0.1j])
    assert np.array_equal(ball_automorphism(np.zeros(2), z), z)


def test_automorphism_disk_reduction():
    a, z = 0.5 + 0.1j, -0.3 + 0.2j
    expected = (a - z) / (1.0 - np.conj(a) * z)
    out = ball_automorphism(np.array([a]), np.array([z]))
    assert out[0] == pytest.approx(expected, abs=1e-15)


@settings(max_examples=40)
@given(
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=0, max_value=2**31),
)
def test_automorphism_is_involution(n, seed):
    rng = np.random.default_rng(seed)
    a = sample_ball(rng, 1, n, radius=0.85)[0]
    z = sample_ball(rng, 8, n, radius=0.95)
    back = ball_automorphism(a, ball_automorphism(a, z))
    assert np.max(np.abs(back - z)) < 1e-12


@settings(max_examples=40)
@given(
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=0, max_value=2**31),
)
def test_automorphism_preserves_rho(n, seed):
    rng = np.random.default_rng(seed)
    a = sample_ball(rng, 1, n, radius=0.85)[0]
    z = sample_ball(rng, 8, n, radius=0.95)
    w = sample_ball(rng, 8, n, radius=0.95)
    before = rho(z, w)
    after = rho(ball_automorphism(a, z), ball_automorphism(a, w))
    assert np.max(np.abs(after - before)) < 1e-10


def test_automorphism_batches_rows():
    a = np.array([0.2, 0.3j])
    z = sample_ball(np.random.default_rng(0), 12, 2, radius=0.9)
    rows = ball_automorphism(a, z)
    assert rows.shape == (12, 2)
    single = ball_automorphism(a, z[4])
    assert np.allclose(rows[4], single, atol=1e-15)


def test_automorphism_dimension_mismatch():
    with pytest.raises(DomainError):
        ball_automorphism(np.array([0.1, 0.2]), np.array([0.1, 0.2, 0.3]))


@given(
    st.floats(min_value=0.0, max_value=0.99),
    st.floats(min_value=0.0, max_value=0.99),
)
def test_strengthened_bound_dominated_by_plain_sum(d1, d2):
    b = strengthened_triangle_bound(d1, d2)
    assert b <= d1 + d2 + 1e-15
    assert 0.0 <= b < 1.0
    assert b >= max(d1, d2) - 1e-15


def test_strengthened_bound_rejects_out_of_range():
    with pytest.raises(DomainError):
        strengthened_triangle_bound(1.0, 0.5)
    with pytest.raises(DomainError):
        strengthened_triangle_bound(-0.1, 0.5)


def test_strengthened_bound_is_tight_on_the_disk():
    # on a diameter of the disk the pseudohyperbolic distance composes
    # exactly through (d1 + d2)/(1 + d1 d2)
    x, y, z = -0.4, 0.15, 0.7
    d1, d2 = rho(x, y), rho(y, z)
    assert rho(x, z) == pytest.approx(strengthened_triangle_bound(d1, d2), abs=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_volume_closed_form_values(n):
    assert pseudo_ball_volume(0.0, n) == 0.0
    r = 0.6
    assert pseudo_ball_volume(r, n) == pytest.approx((r * r / (1 - r * r)) ** n, rel=1e-15)


def test_volume_near_one_avoids_cancellation():
    r = 1.0 - 1e-12
    v = pseudo_ball_volume(r, 2)
    # (r^2 / ((1-r)(1+r)))^2 with exact factors; direct 1-r^2 would lose digits
    assert v == pytest.approx((r * r / ((1 - r) * (1 + r))) ** 2, rel=1e-13)
    assert np.isfinite(v)


def test_volume_rejects_bad_arguments():
    with pytest.raises(DomainError):
        pseudo_ball_volume(1.0, 1)
    with pytest.raises(DomainError):
        pseudo_ball_volume(0.5, 0)


def test_mc_volume_radial_integral_dim_one():
    # n = 1: (1/pi) * integral over |z|<r of (1-|z|^2)^-2 dm = r^2/(1-r^2),
    # evaluated by composite Simpson on the radial profile
    r = 0.7
    s = np.linspace(0.0, r, 4001)
    f = 2.0 * s / (1.0 - s * s) ** 2
    h = s[1] - s[0]
    simpson = h / 3 * (f[0] + f[-1] + 4 * np.sum(f[1:-1:2]) + 2 * np.sum(f[2:-1:2]))
    assert simpson == pytest.approx(pseudo_ball_volume(r, 1), abs=1e-10)


@pytest.mark.parametrize("n,r", [(1, 0.6), (2, 0.6), (3, 0.3)])
def test_mc_volume_matches_closed_form(n, r):
    est, se = mc_invariant_volume(r, n, samples=200_000, seed=42)
    exact = pseudo_ball_volume(r, n)
    assert se > 0.0
    assert abs(est - exact) < 4.0 * se


def test_mc_volume_stratified_branch():
    est, se = mc_invariant_volume(0.97, 1, samples=200_000, seed=7)
    exact = pseudo_ball_volume(0.97, 1)
    assert abs(est - exact) < 4.0 * se


def test_mc_volume_deterministic_per_seed():
    a = mc_invariant_volume(0.5, 2, samples=50_000, seed=3)
    b = mc_invariant_volume(0.5, 2, samples=50_000, seed=3)
    assert a == b


def test_mc_volume_rejects_bad_arguments():
    with pytest.raises(DomainError):
        mc_invariant_volume(0.0, 1)
    with pytest.raises(DomainError):
        mc_invariant_volume(0.5, 1, samples=4)


def test_volume_is_location_independent():
    # invariant volume of {rho(a, .) < r} does not depend on a
    a = np.array([0.4 + 0.1j, -0.2j])
    r = 0.45
    est, se = mc_invariant_volume_off_center(a, r, samples=150_000, seed=11)
    exact = pseudo_ball_volume(r, 2)
    assert abs(est - exact) < 4.0 * se
