"""General regression neural network: kernel-weighted average over stored patterns.

Prediction is the classic memory-based estimate

    yhat(x) = sum_i y_i k(x, x_i) / sum_i k(x, x_i)

with the Gaussian kernel. Small widths degenerate to nearest-neighbor
lookup, large widths to the training-target mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, LabelSpace
from .errors import DimensionMismatch, EmptyDataset
from .kernels import GaussianKernelParams, gaussian_from_sq, sq_distance_matrix, sq_distances


@dataclass(frozen=True)
class GrnnModel:
    """Stored training patterns plus the kernel width.

    ``label_space`` remembers which flavor of targets the model was fit on
    so classification can pick the matching default threshold.
    """

    train_features: np.ndarray
    train_targets: np.ndarray
    params: GaussianKernelParams
    label_space: LabelSpace = LabelSpace.CONTINUOUS

    def __post_init__(self):
        if self.train_features.shape[0] == 0:
            raise EmptyDataset("GRNN requires at least one training pattern")
        if self.train_features.shape[0] != self.train_targets.shape[0]:
            raise DimensionMismatch("feature rows and targets disagree")

    @property
    def default_threshold(self) -> float:
        return 0.5 if self.label_space is LabelSpace.CONTINUOUS else 0.0


def fit(train: Dataset, params: GaussianKernelParams) -> GrnnModel:
    """A GRNN 'trains' by storing the dataset."""
    return GrnnModel(train.features, train.targets, params, train.label_space)


def grnn_predict(m: GrnnModel, x) -> float:
    """Kernel-weighted average of the stored targets.

    If every kernel weight underflows to zero (tiny sigma, far query), the
    nearest stored pattern's target is returned instead of NaN. Sums run
    in sorted order so predictions do not depend on training-row order.
    """
    d2 = sq_distances(m.train_features, x)
    w = gaussian_from_sq(d2, m.params.sigma)
    denom = np.sum(np.sort(w))
    if denom == 0.0:
        return float(m.train_targets[int(np.argmin(d2))])
    return float(np.sum(np.sort(w * m.train_targets)) / denom)


def grnn_predict_batch(m: GrnnModel, xs: np.ndarray) -> np.ndarray:
    """Vectorized :func:`grnn_predict` over query rows."""
    d2 = sq_distance_matrix(np.asarray(xs, dtype=np.float64), m.train_features)
    w = gaussian_from_sq(d2, m.params.sigma)
    denom = np.sum(np.sort(w, axis=1), axis=1)
    out = np.empty(d2.shape[0])
    ok = denom > 0.0
    out[ok] = np.sum(np.sort(w[ok] * m.train_targets, axis=1), axis=1) / denom[ok]
    if np.any(~ok):
        out[~ok] = m.train_targets[np.argmin(d2[~ok], axis=1)]
    return out


def grnn_classify(m: GrnnModel, x, threshold: float | None = None) -> int:
    """+1 if the regression output exceeds the threshold, else -1.

    The default threshold is 0.5 for continuous-label training data and 0.0
    for signed-binary data. Ties go to -1.
    """
    if threshold is None:
        threshold = m.default_threshold
    return 1 if grnn_predict(m, x) > threshold else -1


def grnn_classify_batch(m: GrnnModel, xs: np.ndarray, threshold: float | None = None) -> np.ndarray:
    if threshold is None:
        threshold = m.default_threshold
    return np.where(grnn_predict_batch(m, xs) > threshold, 1.0, -1.0)
