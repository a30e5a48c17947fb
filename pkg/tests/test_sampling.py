import numpy as np

from ballmetrics.sampling import sample_ball, sample_disk


def test_disk_sample_inside_radius():
    rng = np.random.default_rng(0)
    z = sample_disk(rng, 5000, radius=0.8)
    assert z.shape == (5000,)
    assert np.all(np.abs(z) < 0.8)


def test_disk_sample_uniform_in_area():
    # area-uniform => |z|^2 / radius^2 is U[0,1]; check the first two moments
    rng = np.random.default_rng(1)
    z = sample_disk(rng, 200_000)
    u = np.abs(z) ** 2
    assert abs(u.mean() - 0.5) < 0.005
    assert abs((u**2).mean() - 1.0 / 3.0) < 0.005


def test_ball_sample_shape_and_norms():
    rng = np.random.default_rng(2)
    z = sample_ball(rng, 3000, n=3, radius=0.6)
    assert z.shape == (3000, 3)
    assert np.all(np.linalg.norm(z, axis=1) < 0.6)


def test_ball_sample_radial_law():
    # volume-uniform in real dimension 2n => ||z||^(2n) is U[0,1]
    rng = np.random.default_rng(3)
    z = sample_ball(rng, 200_000, n=2)
    u = np.linalg.norm(z, axis=1) ** 4
    assert abs(u.mean() - 0.5) < 0.005


def test_samplers_are_deterministic_per_seed():
    a = sample_disk(np.random.default_rng(9), 10)
    b = sample_disk(np.random.default_rng(9), 10)
    assert np.array_equal(a, b)
