"""Kohonen competitive learning: LVQ-I clustering and LVQ-II reward/punish.

Winner selection finds the codebook center with the smallest squared
Euclidean distance; a conscience bias can be subtracted so units that win
too often get penalized and no single cluster dominates. Updates move only
the winning center (no neighborhood), toward the pattern (LVQ-I and
correct LVQ-II wins) or away from it (LVQ-II misclassifications).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .data import Dataset, LabelSpace
from .errors import DimensionMismatch, EmptyDataset, InvalidConfig, UnlabeledData
from .kernels import sq_distances

CONVERGENCE_DISPLACEMENT = 1e-6


class InitScheme(Enum):
    FIRST_PATTERNS = "first_patterns"
    UNIFORM_RANDOM = "uniform_random"


@dataclass
class Codebook:
    """Cluster centers with win counts (and class labels when supervised).

    Mutable while a trainer owns it; trainers freeze the arrays before
    returning so a trained codebook is safe to share.
    """

    centers: np.ndarray
    win_counts: np.ndarray
    class_labels: np.ndarray | None = None

    @property
    def k(self) -> int:
        return self.centers.shape[0]

    def freeze(self) -> "Codebook":
        self.centers.setflags(write=False)
        self.win_counts.setflags(write=False)
        if self.class_labels is not None:
            self.class_labels.setflags(write=False)
        return self

    def to_tsv(self) -> str:
        """One row per center: label, win count, coordinates."""
        lines = []
        for j in range(self.k):
            label = "" if self.class_labels is None else f"{self.class_labels[j]:+.0f}"
            coords = "\t".join(f"{v:.17g}" for v in self.centers[j])
            lines.append(f"{label}\t{self.win_counts[j]}\t{coords}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LvqConfig:
    k: int = 2
    epochs: int = 50
    lr0: float = 0.1  # decays linearly: lr(t) = lr0 * (1 - t/epochs)
    conscience_bias: float = 0.0  # 0 disables the conscience factor
    seed: int = 0
    init: InitScheme = InitScheme.FIRST_PATTERNS

    def validate(self):
        if self.k < 1:
            raise InvalidConfig("k must be >= 1")
        if not 0.0 < self.lr0 <= 1.0:
            raise InvalidConfig("lr0 must be in (0, 1]")
        if self.epochs < 1:
            raise InvalidConfig("epochs must be >= 1")
        if self.conscience_bias < 0:
            raise InvalidConfig("conscience_bias must be >= 0")


def winner(cb: Codebook, x, conscience_bias: float = 0.0) -> int:
    """Index of the center with the smallest (conscience-biased) squared
    distance. The bias subtracts conscience_bias * (1/K - win_fraction_j),
    so frequent winners look farther away. Ties break to the lowest index.

    Selection does not touch ``win_counts``; whoever performs the selection
    for training increments the winner's count.
    """
    if cb.centers.shape[1] != np.shape(x)[-1]:
        raise DimensionMismatch(
            f"pattern dimension {np.shape(x)[-1]} vs codebook {cb.centers.shape[1]}"
        )
    score = sq_distances(cb.centers, x)
    if conscience_bias > 0.0:
        total = max(1, int(cb.win_counts.sum()))
        win_fraction = cb.win_counts / total
        score = score - conscience_bias * (1.0 / cb.k - win_fraction)
    return int(np.argmin(score))


def _lvq_epoch(cb: Codebook, features: np.ndarray, lr: float, conscience_bias: float,
               pattern_signs: np.ndarray | None = None) -> float:
    """One pass over the patterns; returns the largest center displacement.

    ``pattern_signs`` switches on the LVQ-II reward/punish rule against
    ``cb.class_labels``; otherwise every win is a reward (LVQ-I).
    """
    max_disp = 0.0
    for i in range(features.shape[0]):
        x = features[i]
        j = winner(cb, x, conscience_bias)
        cb.win_counts[j] += 1
        step = lr * (x - cb.centers[j])
        if pattern_signs is not None and cb.class_labels[j] != pattern_signs[i]:
            step = -step
        cb.centers[j] += step
        max_disp = max(max_disp, float(np.sqrt(np.dot(step, step))))
    return max_disp


def run_epochs(cb: Codebook, features: np.ndarray, cfg: LvqConfig,
               pattern_signs: np.ndarray | None = None, epoch_hook=None) -> Codebook:
    """Drive epochs with the linear learning-rate decay and the
    small-displacement stopping rule. ``epoch_hook(cb)`` runs after every
    epoch (the RBF initializer recomputes widths there)."""
    for t in range(cfg.epochs):
        lr = cfg.lr0 * (1.0 - t / cfg.epochs)
        disp = _lvq_epoch(cb, features, lr, cfg.conscience_bias, pattern_signs)
        if epoch_hook is not None:
            epoch_hook(cb)
        if disp < CONVERGENCE_DISPLACEMENT:
            break
    return cb.freeze()


def _initial_centers(d: Dataset, cfg: LvqConfig) -> np.ndarray:
    if cfg.init is InitScheme.FIRST_PATTERNS:
        idx = np.arange(cfg.k) % d.n_patterns  # wraps when k > N
        return d.features[idx].copy()
    rng = np.random.default_rng(cfg.seed)
    low = d.features.min(axis=0)
    high = d.features.max(axis=0)
    return rng.uniform(low, high, size=(cfg.k, d.n_inputs))


def train_lvq1(d: Dataset, cfg: LvqConfig) -> Codebook:
    """Unsupervised competitive clustering; winner-only updates."""
    cfg.validate()
    if d.n_patterns == 0:
        raise EmptyDataset("LVQ-I requires a nonempty dataset")
    if cfg.k > d.n_patterns:
        warnings.warn(f"k={cfg.k} exceeds the {d.n_patterns} available patterns")
    cb = Codebook(_initial_centers(d, cfg), np.zeros(cfg.k, dtype=np.int64))
    return run_epochs(cb, d.features, cfg)


def train_lvq2(d: Dataset, cfg: LvqConfig) -> Codebook:
    """Supervised competitive learning with the reward/punish rule.

    Centers are seeded by sampling patterns class by class (counts
    proportional to class frequency, at least one per class) and inherit
    the class they were sampled from.
    """
    cfg.validate()
    if cfg.k < 2:
        raise InvalidConfig("LVQ-II needs k >= 2 (one center per class at minimum)")
    if d.n_patterns == 0:
        raise EmptyDataset("LVQ-II requires a nonempty dataset")
    if d.label_space is not LabelSpace.SIGNED_BINARY:
        raise UnlabeledData("LVQ-II requires signed-binary labels")
    rng = np.random.default_rng(cfg.seed)
    pos = np.flatnonzero(d.targets > 0)
    neg = np.flatnonzero(d.targets < 0)
    k_pos = int(np.clip(round(cfg.k * len(pos) / d.n_patterns), 1, cfg.k - 1))
    k_neg = cfg.k - k_pos
    centers = []
    labels = []
    for idx, count, label in ((pos, k_pos, 1.0), (neg, k_neg, -1.0)):
        if len(idx) == 0:
            raise InvalidConfig("LVQ-II needs patterns from both classes")
        chosen = rng.choice(idx, size=count, replace=count > len(idx))
        centers.append(d.features[chosen])
        labels.extend([label] * count)
    cb = Codebook(
        np.vstack(centers).copy(),
        np.zeros(cfg.k, dtype=np.int64),
        np.asarray(labels),
    )
    return run_epochs(cb, d.features, cfg, pattern_signs=d.targets)
