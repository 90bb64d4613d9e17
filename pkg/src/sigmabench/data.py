"""Dataset loading, relabeling, splitting, standardization, and synthetic generators.

Every trainer in the package consumes the :class:`Dataset` defined here.
Targets live in one of two label spaces: the original continuous values, or
the derived signed labels produced by :func:`relabel_signed` (values above
0.5 become +1.0, values below become -1.0).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import EmptyDataset, ParseError, ShapeError, TooFewPatterns


class LabelSpace(Enum):
    CONTINUOUS = "continuous"
    SIGNED_BINARY = "signed_binary"


class SynthKind(Enum):
    TWO_GAUSSIANS = "two_gaussians"
    RING = "ring"
    XOR = "xor"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Dataset:
    """Immutable feature matrix plus target vector.

    ``features`` has one row per pattern; ``targets`` holds one real value
    per row. Arrays are copied and made read-only on construction so a
    Dataset can be shared across concurrent trainers.
    """

    features: np.ndarray
    targets: np.ndarray
    label_space: LabelSpace = LabelSpace.CONTINUOUS

    def __post_init__(self):
        features = _frozen(self.features)
        targets = _frozen(self.targets)
        if features.ndim != 2:
            raise ShapeError(f"features must be 2-D, got ndim={features.ndim}")
        if targets.ndim != 1:
            raise ShapeError(f"targets must be 1-D, got ndim={targets.ndim}")
        if features.shape[0] != targets.shape[0]:
            raise ShapeError(
                f"{features.shape[0]} feature rows but {targets.shape[0]} targets"
            )
        if not np.all(np.isfinite(features)):
            raise ValueError("features contain NaN or infinite values")
        if not np.all(np.isfinite(targets)):
            raise ValueError("targets contain NaN or infinite values")
        if self.label_space is LabelSpace.SIGNED_BINARY and targets.size:
            if not np.all(np.isin(targets, (-1.0, 1.0))):
                raise ValueError("signed-binary targets must be exactly +1.0 or -1.0")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "targets", targets)

    @property
    def n_patterns(self) -> int:
        return self.features.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.features.shape[1]

    def take(self, idx) -> "Dataset":
        """New Dataset holding the given rows, in the given order."""
        return Dataset(self.features[idx], self.targets[idx], self.label_space)


@dataclass(frozen=True)
class SplitSpec:
    """Train/test partition parameters. ``train_fraction`` must leave at
    least one pattern on each side."""

    train_fraction: float = 0.9
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must be in (0,1), got {self.train_fraction}")


@dataclass(frozen=True)
class Standardizer:
    """Per-column mean/stddev of a training set. Constant columns get a
    stddev of 1 so they standardize to zero instead of erroring."""

    means: np.ndarray
    stddevs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "means", _frozen(self.means))
        object.__setattr__(self, "stddevs", _frozen(self.stddevs))
        if np.any(self.stddevs <= 0):
            raise ValueError("stddevs must be strictly positive")


def load_csv(path, target_column: int, skip_header: bool = False) -> Dataset:
    """Load a comma-separated numeric file into a continuous-label Dataset.

    One column (``target_column``) becomes the target vector; all other
    columns become features, preserving row order. The format is plain
    UTF-8 CSV with no quoting; blank lines are ignored.

    Raises OSError for unreadable files, ParseError for non-numeric or
    empty input (with row/column location), and ShapeError for ragged rows.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    rows = []
    start = 1 if skip_header else 0
    for lineno, line in enumerate(lines[start:]):
        if not line.strip():
            continue
        fields = line.split(",")
        values = []
        for col, field in enumerate(fields):
            try:
                values.append(float(field))
            except ValueError:
                raise ParseError(
                    f"{path}: non-numeric field {field!r} at row {lineno}, column {col}"
                ) from None
        rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    width = len(rows[0])
    for lineno, row in enumerate(rows):
        if len(row) != width:
            raise ShapeError(
                f"{path}: row {lineno} has {len(row)} fields, expected {width}"
            )
    if width < 2:
        raise ShapeError(f"{path}: need at least one feature column plus the target")
    data = np.asarray(rows, dtype=np.float64)
    if not -width <= target_column < width:
        raise ShapeError(f"target_column {target_column} out of range for {width} columns")
    tcol = target_column % width
    feature_cols = [c for c in range(width) if c != tcol]
    return Dataset(data[:, feature_cols], data[:, tcol], LabelSpace.CONTINUOUS)


def sign_labels(d: Dataset) -> np.ndarray:
    """Signed class labels of a dataset: targets above 0.5 map to +1, below
    to -1, exactly 0.5 to +1. Signed-binary targets pass through."""
    if d.label_space is LabelSpace.SIGNED_BINARY:
        return d.targets.copy()
    return np.where(d.targets >= 0.5, 1.0, -1.0)


def relabel_signed(d: Dataset) -> Dataset:
    """Derive the signed-binary dataset: targets > 0.5 become +1.0, targets
    < 0.5 become -1.0, and ties at exactly 0.5 go to +1.0. Features are
    shared unchanged. Rejects data that is already signed."""
    if d.label_space is not LabelSpace.CONTINUOUS:
        raise ValueError("relabel_signed requires continuous-label data")
    return Dataset(d.features, sign_labels(d), LabelSpace.SIGNED_BINARY)


def split(d: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Seeded shuffle split into (train, test).

    The train side gets round(train_fraction * N) patterns, clamped so both
    sides keep at least one. With ``stratified`` and signed-binary labels,
    class proportions are preserved within one pattern per class.
    """
    n = d.n_patterns
    if n < 2:
        raise TooFewPatterns(f"cannot split {n} patterns into train and test")
    n_train = int(np.clip(round(spec.train_fraction * n), 1, n - 1))
    rng = np.random.default_rng(spec.seed)
    if spec.stratified and d.label_space is LabelSpace.SIGNED_BINARY:
        pos = np.flatnonzero(d.targets > 0)
        neg = np.flatnonzero(d.targets < 0)
        if len(pos) and len(neg):
            pos = rng.permutation(pos)
            neg = rng.permutation(neg)
            t_pos = int(round(spec.train_fraction * len(pos)))
            t_neg = n_train - t_pos
            if t_neg < 0:
                t_neg, t_pos = 0, n_train
            elif t_neg > len(neg):
                t_neg, t_pos = len(neg), n_train - len(neg)
            train_idx = np.concatenate([pos[:t_pos], neg[:t_neg]])
            test_idx = np.concatenate([pos[t_pos:], neg[t_neg:]])
            return d.take(train_idx), d.take(test_idx)
    perm = rng.permutation(n)
    return d.take(perm[:n_train]), d.take(perm[n_train:])


def fit_standardizer(d: Dataset) -> Standardizer:
    """Population mean/stddev per feature column; constant columns get
    stddev 1 so their standardized values are zero."""
    if d.n_patterns == 0:
        raise EmptyDataset("cannot fit a standardizer on an empty dataset")
    means = d.features.mean(axis=0)
    stddevs = d.features.std(axis=0)
    stddevs = np.where(stddevs > 0, stddevs, 1.0)
    return Standardizer(means, stddevs)


def apply_standardizer(s: Standardizer, d: Dataset) -> Dataset:
    """Transform features with the (training) statistics in ``s``."""
    if d.n_inputs != s.means.shape[0]:
        raise ShapeError(
            f"standardizer fitted on {s.means.shape[0]} columns, dataset has {d.n_inputs}"
        )
    return Dataset((d.features - s.means) / s.stddevs, d.targets, d.label_space)


def synth_dataset(kind: SynthKind, n: int, seed: int) -> Dataset:
    """Deterministic synthetic 2-D dataset with continuous targets in [0,1].

    Stand-ins for unavailable source data, with known class structure:

    - ``TWO_GAUSSIANS``: blobs at (1,1) and (5,5), std 0.5; linearly
      separable, negative/positive class respectively.
    - ``RING``: positive disk (radius < 0.8) inside a negative annulus
      (radius 1.6..2.4); radially but not linearly separable.
    - ``XOR``: quadrant blobs at (+-1,+-1); same-sign quadrants positive.
      No linear separator beats ~0.5 accuracy.

    Negative-class targets are drawn from [0.05, 0.45], positive from
    [0.55, 0.95], so thresholding at 0.5 recovers the class exactly.
    """
    if n < 4:
        raise TooFewPatterns(f"synthetic datasets need n >= 4, got {n}")
    rng = np.random.default_rng(seed)
    n_pos = n // 2
    n_neg = n - n_pos
    if kind is SynthKind.TWO_GAUSSIANS:
        x_neg = rng.normal((1.0, 1.0), 0.5, size=(n_neg, 2))
        x_pos = rng.normal((5.0, 5.0), 0.5, size=(n_pos, 2))
    elif kind is SynthKind.RING:
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n_pos)
        radius = rng.uniform(0.0, 0.8, size=n_pos)
        x_pos = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n_neg)
        radius = rng.uniform(1.6, 2.4, size=n_neg)
        x_neg = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
    elif kind is SynthKind.XOR:
        quad_pos = rng.choice([(1.0, 1.0), (-1.0, -1.0)], size=n_pos)
        quad_neg = rng.choice([(1.0, -1.0), (-1.0, 1.0)], size=n_neg)
        x_pos = quad_pos + rng.normal(0.0, 0.35, size=(n_pos, 2))
        x_neg = quad_neg + rng.normal(0.0, 0.35, size=(n_neg, 2))
    else:
        raise ValueError(f"unknown synthetic kind {kind!r}")
    y_pos = rng.uniform(0.55, 0.95, size=n_pos)
    y_neg = rng.uniform(0.05, 0.45, size=n_neg)
    features = np.vstack([x_pos, x_neg])
    targets = np.concatenate([y_pos, y_neg])
    order = rng.permutation(n)
    return Dataset(features[order], targets[order], LabelSpace.CONTINUOUS)
