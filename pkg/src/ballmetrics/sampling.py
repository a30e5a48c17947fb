"""Seeded samplers for disk and ball points used by sweeps and verification."""

from __future__ import annotations

import numpy as np


def sample_disk(rng: np.random.Generator, size: int, radius: float = 1.0) -> np.ndarray:
    """Uniform (area measure) sample of `size` points in the disk |z| < radius."""
    r = radius * np.sqrt(rng.random(size))
    theta = 2.0 * np.pi * rng.random(size)
    return r * np.exp(1j * theta)


def sample_ball(
    rng: np.random.Generator, size: int, n: int, radius: float = 1.0
) -> np.ndarray:
    """Uniform sample in the ball of C^n (real dimension 2n), shape (size, n)."""
    g = rng.standard_normal((size, 2 * n))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    u = rng.random((size, 1)) ** (1.0 / (2 * n))
    pts = g / norms * u * radius
    return pts[:, :n] + 1j * pts[:, n:]
