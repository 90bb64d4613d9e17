"""Soft-margin support vector machine trained by simplified SMO.

The dual problem max sum(a) - 0.5 * sum a_i a_j y_i y_j K_ij subject to
0 <= a_i <= C and sum a_i y_i = 0 is solved two multipliers at a time. The
first index comes from a KKT-violation scan; the partner is tried in a
seeded random order until a productive step is found. Convergence means
``max_passes`` consecutive full passes without any multiplier moving.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, LabelSpace
from .errors import DimensionMismatch, EmptyDataset, InvalidConfig, SingleClass, UnlabeledData
from .kernels import GaussianKernelParams, gaussian_from_sq, sq_distance_matrix

HARD_PASS_CAP = 10_000  # safety net against pathological non-convergence
MIN_ALPHA_STEP = 1e-7


@dataclass(frozen=True)
class LinearKernel:
    def gram(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a @ b.T

    def describe(self) -> str:
        return "linear"


@dataclass(frozen=True)
class GaussianKernel:
    params: GaussianKernelParams

    def gram(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return gaussian_from_sq(sq_distance_matrix(a, b), self.params.sigma)

    def describe(self) -> str:
        return f"gaussian sigma={self.params.sigma:g}"


@dataclass(frozen=True)
class SvmConfig:
    c: float = 1.0
    tol: float = 1e-3
    max_passes: int = 10
    kernel: LinearKernel | GaussianKernel = LinearKernel()
    seed: int = 0

    def validate(self):
        if self.c <= 0:
            raise InvalidConfig("box constraint c must be positive")
        if self.tol <= 0:
            raise InvalidConfig("tol must be positive")
        if self.max_passes < 1:
            raise InvalidConfig("max_passes must be >= 1")


@dataclass(frozen=True)
class SvmModel:
    """Support vectors only: rows of the training set with alpha > 0."""

    support_vectors: np.ndarray
    support_targets: np.ndarray
    alphas: np.ndarray
    bias_b: float
    kernel: LinearKernel | GaussianKernel


def solve_dual(features: np.ndarray, targets: np.ndarray, cfg: SvmConfig) -> tuple[np.ndarray, float]:
    """Run simplified SMO; returns the full multiplier vector and bias."""
    n = features.shape[0]
    y = targets
    gram = cfg.kernel.gram(features, features)
    rng = np.random.default_rng(cfg.seed)
    alpha = np.zeros(n)
    b = 0.0
    c = cfg.c
    clean_passes = 0
    total_passes = 0
    while clean_passes < cfg.max_passes and total_passes < HARD_PASS_CAP:
        changed = 0
        for i in range(n):
            e_i = float((alpha * y) @ gram[:, i]) + b - y[i]
            r_i = y[i] * e_i
            if not ((r_i < -cfg.tol and alpha[i] < c) or (r_i > cfg.tol and alpha[i] > 0)):
                continue
            for j in rng.permutation(n):
                if j == i:
                    continue
                eta = gram[i, i] + gram[j, j] - 2.0 * gram[i, j]
                if eta <= 0:
                    continue
                if y[i] == y[j]:
                    low = max(0.0, alpha[i] + alpha[j] - c)
                    high = min(c, alpha[i] + alpha[j])
                else:
                    low = max(0.0, alpha[j] - alpha[i])
                    high = min(c, c + alpha[j] - alpha[i])
                if low >= high:
                    continue
                e_j = float((alpha * y) @ gram[:, j]) + b - y[j]
                a_j_new = float(np.clip(alpha[j] + y[j] * (e_i - e_j) / eta, low, high))
                if abs(a_j_new - alpha[j]) < MIN_ALPHA_STEP:
                    continue
                a_i_new = alpha[i] + y[i] * y[j] * (alpha[j] - a_j_new)
                b1 = b - e_i - y[i] * (a_i_new - alpha[i]) * gram[i, i] \
                    - y[j] * (a_j_new - alpha[j]) * gram[i, j]
                b2 = b - e_j - y[i] * (a_i_new - alpha[i]) * gram[i, j] \
                    - y[j] * (a_j_new - alpha[j]) * gram[j, j]
                alpha[i], alpha[j] = a_i_new, a_j_new
                if 0.0 < a_i_new < c:
                    b = b1
                elif 0.0 < a_j_new < c:
                    b = b2
                else:
                    b = 0.5 * (b1 + b2)
                changed += 1
                break
        total_passes += 1
        clean_passes = clean_passes + 1 if changed == 0 else 0
    return alpha, float(b)


def svm_train(train: Dataset, cfg: SvmConfig) -> SvmModel:
    """Fit the dual variables by simplified SMO; deterministic per seed."""
    cfg.validate()
    if train.n_patterns == 0:
        raise EmptyDataset("cannot train an SVM on an empty dataset")
    if train.label_space is not LabelSpace.SIGNED_BINARY:
        raise UnlabeledData("SVM training requires signed-binary labels")
    y = train.targets
    if np.all(y > 0) or np.all(y < 0):
        raise SingleClass("SVM training requires patterns from both classes")
    alpha, b = solve_dual(train.features, y, cfg)
    support = alpha > 0
    return SvmModel(
        support_vectors=train.features[support].copy(),
        support_targets=y[support].copy(),
        alphas=alpha[support].copy(),
        bias_b=b,
        kernel=cfg.kernel,
    )


def decision_function(m: SvmModel, xs: np.ndarray) -> np.ndarray:
    """f(x) = sum_i alpha_i y_i k(x_i, x) + b over query rows."""
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    if m.support_vectors.shape[0] == 0:
        return np.full(xs.shape[0], m.bias_b)
    if xs.shape[1] != m.support_vectors.shape[1]:
        raise DimensionMismatch(
            f"query dimension {xs.shape[1]} vs support vectors {m.support_vectors.shape[1]}"
        )
    k = m.kernel.gram(m.support_vectors, xs)
    return (m.alphas * m.support_targets) @ k + m.bias_b


def svm_classify(m: SvmModel, x) -> int:
    """Sign of the decision function; exactly 0 classifies as +1."""
    return 1 if float(decision_function(m, x)[0]) >= 0.0 else -1


def svm_classify_batch(m: SvmModel, xs: np.ndarray) -> np.ndarray:
    return np.where(decision_function(m, xs) >= 0.0, 1.0, -1.0)


def linear_weights(m: SvmModel) -> np.ndarray:
    """Explicit primal weight vector of a linear-kernel model."""
    if not isinstance(m.kernel, LinearKernel):
        raise InvalidConfig("explicit weights exist only for the linear kernel")
    if m.alphas.size == 0:
        return np.zeros(m.support_vectors.shape[1] if m.support_vectors.ndim == 2 else 0)
    return (m.alphas * m.support_targets) @ m.support_vectors


def dual_objective(features, targets, alpha, kernel) -> float:
    """Dual objective for a full multiplier vector."""
    signed = np.asarray(alpha) * np.asarray(targets)
    gram = kernel.gram(np.asarray(features), np.asarray(features))
    return float(np.sum(alpha) - 0.5 * signed @ gram @ signed)


def kkt_violations(features, targets, alpha, b, kernel, c: float, tol: float) -> int:
    """Count training points violating the KKT conditions beyond ``tol``."""
    signed = np.asarray(alpha) * np.asarray(targets)
    f = signed @ kernel.gram(np.asarray(features), np.asarray(features)) + b
    margins = np.asarray(targets) * f
    violations = 0
    for a_i, margin in zip(alpha, margins):
        if a_i <= 0 and margin < 1 - tol:
            violations += 1
        elif 0 < a_i < c and abs(margin - 1) > tol:
            violations += 1
        elif a_i >= c and margin > 1 + tol:
            violations += 1
    return violations
