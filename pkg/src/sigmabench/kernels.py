"""Shared distance and Gaussian radial-basis primitives.

Winner searches and kernel evaluations both run on squared Euclidean
distances; square roots are taken only where a plain distance is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch


@dataclass(frozen=True)
class GaussianKernelParams:
    """Width of the Gaussian kernel exp(-||x-y||^2 / (2 sigma^2))."""

    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def _check_dims(x: np.ndarray, y: np.ndarray):
    if x.shape[-1] != y.shape[-1]:
        raise DimensionMismatch(f"dimension {x.shape[-1]} vs {y.shape[-1]}")


def sq_euclidean(x, y) -> float:
    """Sum of squared coordinate differences."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_dims(x, y)
    return float(((x - y) ** 2).sum(axis=-1))


def sq_distances(points: np.ndarray, x) -> np.ndarray:
    """Squared Euclidean distance from each row of ``points`` to ``x``."""
    points = np.asarray(points, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    _check_dims(points, x)
    return ((points - x) ** 2).sum(axis=-1)


def sq_distance_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise squared distances between rows of ``a`` and rows of ``b``.

    Computed from explicit differences (not the expanded quadratic form) so
    each entry rounds identically to the :func:`sq_euclidean` of its row pair.
    Fine at desk scale; would need the expanded form for large inputs.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    _check_dims(a, b)
    return ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=-1)


def gaussian(x, y, p: GaussianKernelParams) -> float:
    """Gaussian kernel value in (0, 1]; equals 1 exactly when x == y."""
    return float(np.exp(-sq_euclidean(x, y) / (2.0 * p.sigma**2)))


def gaussian_from_sq(d2, sigma) -> np.ndarray:
    """Gaussian kernel applied to precomputed squared distances."""
    return np.exp(-np.asarray(d2, dtype=np.float64) / (2.0 * sigma**2))
