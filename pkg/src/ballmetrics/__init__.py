"""Metrics induced by reproducing kernels on the unit disk and unit ball.

The package evaluates the normalised-kernel metric for a family of disk and
ball kernels, the pseudohyperbolic distance and its Moebius geometry
(automorphisms, strengthened triangle bound, invariant volume with a Monte
Carlo cross-check), near-boundary scaling laws of the log-weighted disk
metric, volume-obstruction certificates for boundary ring configurations,
a stress-minimising embedder into the ball, and finite-difference Gaussian
curvature of the kernel metrics.
"""

__version__ = "0.1.0"

from .points import BoundaryProximityWarning, DomainError
from .kernels import (
    KernelId,
    da_kernel,
    dirichlet,
    dirichlet_alpha,
    dirichlet_kernel,
    drury_arveson,
    kernel_diag,
    kernel_eval,
    kernel_log_diag,
    log_power,
)
from .metrics import delta, delta_array, delta_rescale_check, delta_with_diagnostics, rho
from .sampling import sample_ball, sample_disk
from .ball_geometry import (
    ball_automorphism,
    mc_invariant_volume,
    mc_invariant_volume_off_center,
    pseudo_ball_volume,
    strengthened_triangle_bound,
)
from .asymptotics import (
    BoundaryScale,
    RotationEstimate,
    boundary_scale,
    center_distance_dirichlet,
    center_distance_dirichlet_exact,
    dirichlet_ring_delta,
    logpower_center_distance,
    rotation_displacement,
)
from .packing import PackingCertificate, certificate, obstruction_threshold, ring_points
from .embedder import (
    EmbeddingProblem,
    EmbeddingResult,
    build_problem,
    gradient_check,
    problem_from_matrix,
    ring_problem,
    solve,
)
from .curvature import (
    CurvatureSample,
    gaussian_curvature,
    metric_density,
    write_curvature_csv,
)

__all__ = [
    "__version__",
    "DomainError",
    "BoundaryProximityWarning",
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
    "sample_disk",
    "sample_ball",
    "delta",
    "delta_array",
    "delta_with_diagnostics",
    "delta_rescale_check",
    "rho",
    "ball_automorphism",
    "strengthened_triangle_bound",
    "pseudo_ball_volume",
    "mc_invariant_volume",
    "mc_invariant_volume_off_center",
    "BoundaryScale",
    "RotationEstimate",
    "boundary_scale",
    "center_distance_dirichlet",
    "center_distance_dirichlet_exact",
    "rotation_displacement",
    "logpower_center_distance",
    "dirichlet_ring_delta",
    "PackingCertificate",
    "ring_points",
    "certificate",
    "obstruction_threshold",
    "EmbeddingProblem",
    "EmbeddingResult",
    "build_problem",
    "problem_from_matrix",
    "ring_problem",
    "solve",
    "gradient_check",
    "CurvatureSample",
    "gaussian_curvature",
    "metric_density",
    "write_curvature_csv",
]
