"""Confusion-matrix bookkeeping and the four benchmark statistics.

The positive class is +1.0 throughout (the class of targets above 0.5).
Precision, recall, and F1 are defined as 0 when their denominator is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import EmptyInput, LengthMismatch


class Metric(Enum):
    F1 = "f1"
    ACCURACY = "accuracy"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        for name in ("tp", "fp", "tn", "fn"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class EvalReport:
    """One benchmark table row: statistics plus the counts they came from."""

    model_name: str
    accuracy: float
    precision: float
    recall: float
    f1: float
    counts: ConfusionCounts

    def tsv_row(self) -> str:
        return "\t".join(
            [self.model_name]
            + [f"{v:.4f}" for v in (self.accuracy, self.precision, self.recall, self.f1)]
        )


def confusion(predicted, actual) -> ConfusionCounts:
    """Count tp/fp/tn/fn for signed (+1/-1) prediction and truth vectors."""
    predicted = np.asarray(predicted, dtype=np.float64)
    actual = np.asarray(actual, dtype=np.float64)
    if predicted.shape != actual.shape:
        raise LengthMismatch(
            f"{predicted.shape[0]} predictions vs {actual.shape[0]} actuals"
        )
    if predicted.size == 0:
        raise EmptyInput("cannot build a confusion matrix from empty vectors")
    for name, v in (("predicted", predicted), ("actual", actual)):
        if not np.all(np.isin(v, (-1.0, 1.0))):
            raise ValueError(f"{name} entries must be +1 or -1")
    pos_pred = predicted > 0
    pos_act = actual > 0
    return ConfusionCounts(
        tp=int(np.sum(pos_pred & pos_act)),
        fp=int(np.sum(pos_pred & ~pos_act)),
        tn=int(np.sum(~pos_pred & ~pos_act)),
        fn=int(np.sum(~pos_pred & pos_act)),
    )


def report(c: ConfusionCounts, model_name: str = "") -> EvalReport:
    """Accuracy, precision, recall, and F1 from confusion counts."""
    if c.total == 0:
        raise EmptyInput("confusion counts sum to zero")
    accuracy = (c.tp + c.tn) / c.total
    precision = c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0
    recall = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
    f1 = (
        2.0 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    return EvalReport(model_name, accuracy, precision, recall, f1, c)


def metric_value(c: ConfusionCounts, metric: Metric) -> float:
    r = report(c)
    return r.f1 if metric is Metric.F1 else r.accuracy
