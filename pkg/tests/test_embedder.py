import numpy as np
import pytest

from ballmetrics.ball_geometry import ball_automorphism
from ballmetrics.embedder import (
    EmbeddingProblem,
    _run_restart,
    build_problem,
    gradient_check,
    problem_from_matrix,
    ring_problem,
    solve,
)
from ballmetrics.kernels import dirichlet
from ballmetrics.metrics import delta, rho
from ballmetrics.points import DomainError


def planted_problem(m=5, seed=4, **settings):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-0.35, 0.35, size=(m, 2))
    d = rho(pts[:, None, :], pts[None, :, :])
    return problem_from_matrix(d, n=2, **settings)


def test_problem_validates_matrix_shape():
    with pytest.raises(DomainError):
        problem_from_matrix(np.zeros((2, 3)), n=1)
    with pytest.raises(DomainError):
        problem_from_matrix(np.zeros((1, 1)), n=1)


def test_problem_validates_matrix_contents():
    good = np.array([[0.0, 0.5], [0.5, 0.0]])
    problem_from_matrix(good, n=1)
    with pytest.raises(DomainError):
        problem_from_matrix(np.array([[0.0, 0.5], [0.4, 0.0]]), n=1)  # asymmetric
    with pytest.raises(DomainError):
        problem_from_matrix(np.array([[0.1, 0.5], [0.5, 0.0]]), n=1)  # diagonal
    with pytest.raises(DomainError):
        problem_from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]), n=1)  # not < 1
    with pytest.raises(DomainError):
        problem_from_matrix(np.array([[0.0, 0.0], [0.0, 0.0]]), n=1)  # duplicates


def test_problem_validates_settings():
    good = np.array([[0.0, 0.5], [0.5, 0.0]])
    with pytest.raises(DomainError):
        problem_from_matrix(good, n=0)
    with pytest.raises(DomainError):
        problem_from_matrix(good, n=1, restarts=0)
    with pytest.raises(DomainError):
        solve(problem_from_matrix(good, n=1), workers=0)


def test_build_problem_fills_kernel_distances():
    pts = [0.1, 0.3 + 0.2j, -0.4j]
    p = build_problem(pts, n=1)
    kid = dirichlet()
    for i in range(3):
        for j in range(3):
            expected = 0.0 if i == j else delta(kid, pts[i], pts[j])
            assert p.distance_matrix[i, j] == pytest.approx(expected, abs=1e-12)
    assert p.source_points == tuple(complex(z) for z in pts)


def test_build_problem_rejects_duplicates():
    with pytest.raises(DomainError):
        build_problem([0.2, 0.2, 0.5], n=1)


def test_two_point_embeds_isometrically():
    p = problem_from_matrix([[0.0, 0.6], [0.6, 0.0]], n=1, restarts=4, seed=11)
    r = solve(p)
    assert r.stress < 1e-10
    assert r.converged
    assert r.max_abs_error < 1e-5
    assert rho(r.points[0], r.points[1]) == pytest.approx(0.6, abs=1e-6)


def test_two_point_any_dimension():
    for n in (1, 2, 3):
        p = problem_from_matrix([[0.0, 0.35], [0.35, 0.0]], n=n, restarts=3, seed=1)
        assert solve(p).stress < 1e-10


def test_planted_instance_recovers():
    r = solve(planted_problem(restarts=3))
    assert r.stress < 1e-8
    assert r.max_rel_distortion < 1.01


def test_result_points_stay_interior():
    r = solve(planted_problem(restarts=2))
    assert np.all(np.linalg.norm(r.points, axis=1) < 1.0)
    assert r.stress >= 0.0
    assert r.restarts_used == 2


def test_result_serialises():
    r = solve(problem_from_matrix([[0.0, 0.4], [0.4, 0.0]], n=1, restarts=2))
    d = r.to_dict()
    assert d["schema_version"] == 1
    assert len(d["points_re"]) == 2
    assert d["stress"] == r.stress


def test_solve_is_deterministic():
    p = ring_problem(2.0, 6, 2, restarts=3, max_iters=300, seed=5)
    a = solve(p)
    b = solve(p)
    assert a.stress == b.stress
    assert np.array_equal(a.points, b.points)
    assert a.best_restart == b.best_restart


def test_workers_do_not_change_results():
    p = ring_problem(2.0, 6, 2, restarts=4, max_iters=300, seed=5)
    serial = solve(p, workers=1)
    threaded = solve(p, workers=4)
    assert serial.stress == threaded.stress
    assert serial.best_restart == threaded.best_restart
    assert np.array_equal(serial.points, threaded.points)


def test_best_of_restarts_selection():
    p = planted_problem(restarts=4)
    per_restart = [_run_restart(p, r)[0] for r in range(4)]
    assert solve(p).stress == min(per_restart)


def test_stress_invariant_under_automorphism():
    p = planted_problem(m=6, restarts=2, seed=8)
    result = solve(p)
    d = p.distance_matrix
    iu = np.triu_indices(6, k=1)

    def stress_of(cfg):
        r = rho(cfg[:, None, :], cfg[None, :, :])
        return float(np.sum((r[iu] - d[iu]) ** 2))

    a = np.array([0.25 + 0.1j, -0.3j])
    moved = ball_automorphism(a, result.points)
    assert stress_of(moved) == pytest.approx(stress_of(result.points), abs=1e-10)


def test_gradient_check_small():
    p = planted_problem(restarts=2, seed=13)
    assert gradient_check(p, h=1e-5) < 1e-5


def test_gradient_check_scales_quadratically():
    # central differences: halving h divides the mismatch by ~4 while
    # truncation still dominates rounding (h >= 2.5e-5 for this objective)
    p = planted_problem(restarts=2, seed=13)
    e1 = gradient_check(p, h=1e-4)
    e2 = gradient_check(p, h=5e-5)
    e3 = gradient_check(p, h=2.5e-5)
    assert 2.5 < e1 / e2 < 6.0
    assert 2.5 < e2 / e3 < 6.0


def test_gradient_check_validates_step_and_shape():
    p = planted_problem(restarts=2)
    with pytest.raises(DomainError):
        gradient_check(p, h=1e-3)
    with pytest.raises(DomainError):
        gradient_check(p, h=1e-8)
    with pytest.raises(DomainError):
        gradient_check(p, config=np.zeros((2, 2)))


def test_ring_problem_distances_in_open_interval():
    p = ring_problem(4.0, 16, 2, restarts=1)
    off = p.distance_matrix[~np.eye(16, dtype=bool)]
    assert np.all(off > 0.0)
    assert np.all(off < 1.0)


def test_ring_problem_count_capped_by_ring_size():
    with pytest.warns(UserWarning):
        with pytest.raises(DomainError):
            ring_problem(0.2, 20, 2)


def test_ring_problem_rejects_tiny_count():
    with pytest.raises(DomainError):
        ring_problem(4.0, 1, 2)
