"""Deterministic low-discrepancy samplers for the disc and the torus."""

from __future__ import annotations

import numpy as np

_GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))

__all__ = ["golden_disc", "torus_angle_grid", "random_torus", "random_disc"]


def golden_disc(n: int, r_max: float = 1.0) -> np.ndarray:
    """n complex points spiralling over the disc of radius r_max.

    Radii follow sqrt((i + 0.5) / n), so the points are area-uniform and
    never hit 0 or the boundary circle exactly.
    """
    if n < 1:
        raise ValueError("n must be positive")
    i = np.arange(n)
    radii = r_max * np.sqrt((i + 0.5) / n)
    return radii * np.exp(1j * _GOLDEN_ANGLE * i)


def torus_angle_grid(n: int) -> tuple:
    """Meshgrid angles (s, t) of an n-by-n uniform grid on [0, 2*pi)."""
    angles = 2 * np.pi * np.arange(n) / n
    return np.meshgrid(angles, angles, indexing="ij")


def random_torus(n: int, rng: np.random.Generator) -> tuple:
    """n random angle pairs (s, t) drawn uniformly from [0, 2*pi)."""
    s = rng.uniform(0.0, 2 * np.pi, size=n)
    t = rng.uniform(0.0, 2 * np.pi, size=n)
    return s, t


def random_disc(n: int, rng: np.random.Generator, r_max: float = 1.0) -> np.ndarray:
    """n complex points drawn area-uniformly from the open disc."""
    radii = r_max * np.sqrt(rng.uniform(0.0, 1.0, size=n))
    return radii * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=n))
