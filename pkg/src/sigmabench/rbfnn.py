"""Radial basis function network with a linear output unit.

Hidden unit j responds with exp(-||x - mu_j||^2 / (2 sigma_j^2)); the
output is a weighted sum of those responses plus a bias (the weight of an
implicit +1 input). Two training modes:

- FIXED_CENTERS: centers are sampled training patterns, widths the global
  input stddev; gradient descent adapts only the output weights and bias.
- KOHONEN_BACKPROP: centers start at the global input mean and are
  clustered by LVQ-I (conscience on, so the coincident centers can
  differentiate), widths are recomputed per epoch as the mean distance to
  each unit's won patterns, then gradient descent adapts weights, centers,
  and widths together.

All gradient updates are stochastic (per pattern) with a momentum term.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from . import lvq
from .data import Dataset
from .errors import DimensionMismatch, EmptyDataset, NotInitialized, TooFewPatterns
from .kernels import sq_distance_matrix, sq_distances
from .optim import momentum_step

MIN_WIDTH = 1e-6
MSE_IMPROVEMENT_STOP = 1e-9


class TrainMode(Enum):
    FIXED_CENTERS = "fixed_centers"
    KOHONEN_BACKPROP = "kohonen_backprop"


@dataclass(frozen=True)
class RbfNetwork:
    centers: np.ndarray   # (J, dim)
    widths: np.ndarray    # (J,), all > 0
    out_weights: np.ndarray  # (J,)
    bias: float

    def __post_init__(self):
        if not (self.centers.shape[0] == self.widths.shape[0] == self.out_weights.shape[0]):
            raise DimensionMismatch("centers, widths, and out_weights disagree on J")
        if np.any(self.widths <= 0):
            raise ValueError("all widths must be positive")

    @property
    def hidden_units(self) -> int:
        return self.centers.shape[0]


@dataclass(frozen=True)
class RbfTrainConfig:
    hidden_units: int = 10
    mode: TrainMode = TrainMode.FIXED_CENTERS
    lr_weights: float = 0.05
    lr_centers: float = 0.01
    lr_widths: float = 0.01
    momentum_alpha: float = 0.9
    epochs: int = 500
    lvq: lvq.LvqConfig | None = None  # KOHONEN_BACKPROP clustering knobs
    seed: int = 0

    def resolved_lvq(self) -> lvq.LvqConfig:
        """LVQ settings for mode B; k always tracks hidden_units.

        The default turns the conscience factor on: mode B starts every
        center at the same point, and without a conscience penalty one unit
        would win every pattern and the rest would never move.
        """
        base = self.lvq if self.lvq is not None else lvq.LvqConfig(
            conscience_bias=20.0, seed=self.seed
        )
        return replace(base, k=self.hidden_units)


def rbf_forward(net: RbfNetwork, x) -> tuple[np.ndarray, float]:
    """Hidden activations and the network output for one pattern."""
    d2 = sq_distances(net.centers, x)
    hidden = np.exp(-d2 / (2.0 * net.widths**2))
    return hidden, float(hidden @ net.out_weights + net.bias)


def rbf_forward_batch(net: RbfNetwork, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d2 = sq_distance_matrix(np.asarray(xs, dtype=np.float64), net.centers)
    hidden = np.exp(-d2 / (2.0 * net.widths**2))
    return hidden, hidden @ net.out_weights + net.bias


def rbf_classify(net: RbfNetwork, x, threshold: float = 0.5) -> int:
    """+1 if the output exceeds the threshold, else -1 (ties to -1).

    Use threshold 0.5 for networks trained on continuous targets and 0.0
    for networks trained on signed labels.
    """
    _, out = rbf_forward(net, x)
    return 1 if out > threshold else -1


def rbf_classify_batch(net: RbfNetwork, xs: np.ndarray, threshold: float = 0.5) -> np.ndarray:
    _, out = rbf_forward_batch(net, xs)
    return np.where(out > threshold, 1.0, -1.0)


def _global_input_stats(train: Dataset) -> tuple[float, float]:
    # scalar mean/stddev over every entry of the feature matrix
    values = train.features.ravel()
    return float(values.mean()), float(values.std())


def init_mode_a(train: Dataset, hidden_units: int, seed: int = 0) -> RbfNetwork:
    """Fixed-centers initialization: J sampled patterns, one shared width."""
    if train.n_patterns == 0:
        raise EmptyDataset("cannot initialize on an empty dataset")
    if hidden_units > train.n_patterns:
        raise TooFewPatterns(
            f"{hidden_units} hidden units but only {train.n_patterns} patterns"
        )
    rng = np.random.default_rng(seed)
    chosen = rng.choice(train.n_patterns, size=hidden_units, replace=False)
    _, stddev = _global_input_stats(train)
    width = max(stddev, MIN_WIDTH)
    return RbfNetwork(
        centers=train.features[chosen].copy(),
        widths=np.full(hidden_units, width),
        out_weights=rng.uniform(-0.1, 0.1, size=hidden_units),
        bias=float(rng.uniform(-0.1, 0.1)),
    )


def recompute_widths(centers: np.ndarray, features: np.ndarray,
                     previous: np.ndarray) -> np.ndarray:
    """Per-unit width: mean Euclidean distance from the center to the
    patterns it wins (plain nearest-center assignment). Units that win
    nothing keep their previous width."""
    d2 = sq_distance_matrix(features, centers)
    assignment = np.argmin(d2, axis=1)
    widths = previous.copy()
    for j in range(centers.shape[0]):
        won = assignment == j
        if np.any(won):
            widths[j] = max(float(np.sqrt(d2[won, j]).mean()), MIN_WIDTH)
    return widths


def init_mode_b(train: Dataset, cfg: RbfTrainConfig) -> RbfNetwork:
    """Kohonen initialization: every center starts at the global input mean
    and every width at the global input stddev; LVQ-I clusters the centers,
    recomputing the widths after each epoch."""
    if train.n_patterns == 0:
        raise EmptyDataset("cannot initialize on an empty dataset")
    if cfg.hidden_units > train.n_patterns:
        raise TooFewPatterns(
            f"{cfg.hidden_units} hidden units but only {train.n_patterns} patterns"
        )
    mean, stddev = _global_input_stats(train)
    width0 = max(stddev, MIN_WIDTH)
    lvq_cfg = cfg.resolved_lvq()
    lvq_cfg.validate()
    codebook = lvq.Codebook(
        centers=np.full((cfg.hidden_units, train.n_inputs), mean),
        win_counts=np.zeros(cfg.hidden_units, dtype=np.int64),
    )
    widths = np.full(cfg.hidden_units, width0)

    def refresh_widths(cb):
        widths[:] = recompute_widths(cb.centers, train.features, widths)

    lvq.run_epochs(codebook, train.features, lvq_cfg, epoch_hook=refresh_widths)
    rng = np.random.default_rng(cfg.seed)
    return RbfNetwork(
        centers=codebook.centers.copy(),
        widths=widths,
        out_weights=rng.uniform(-0.1, 0.1, size=cfg.hidden_units),
        bias=float(rng.uniform(-0.1, 0.1)),
    )


def initialize(train: Dataset, cfg: RbfTrainConfig) -> RbfNetwork:
    if cfg.mode is TrainMode.FIXED_CENTERS:
        return init_mode_a(train, cfg.hidden_units, cfg.seed)
    return init_mode_b(train, cfg)


def _raw_gradients(centers, widths, weights, bias, x, y):
    """Partials of E = 0.5 * (y - out)^2 plus the output, one forward pass."""
    diff = x[None, :] - centers              # (J, dim)
    d2 = (diff**2).sum(axis=1)
    hidden = np.exp(-d2 / (2.0 * widths**2))
    out = float(hidden @ weights + bias)
    err = y - out
    g_w = -err * hidden
    g_b = -err
    scale = -err * weights * hidden          # shared factor of the mu/sigma partials
    g_mu = (scale / widths**2)[:, None] * diff
    g_sigma = scale * d2 / widths**3
    return g_w, g_b, g_mu, g_sigma, out


def gradients(net: RbfNetwork, x, y: float):
    """Analytic partial derivatives of E = 0.5 * (y - out)^2.

    Returns (d_weights, d_bias, d_centers, d_widths) evaluated at one
    pattern, all from a single forward pass.
    """
    x = np.asarray(x, dtype=np.float64)
    g_w, g_b, g_mu, g_sigma, _ = _raw_gradients(
        net.centers, net.widths, net.out_weights, net.bias, x, y
    )
    return g_w, g_b, g_mu, g_sigma


@dataclass
class _Momentum:
    w: np.ndarray
    b: float
    mu: np.ndarray
    sigma: np.ndarray

    @classmethod
    def zeros(cls, net: RbfNetwork):
        return cls(
            np.zeros_like(net.out_weights), 0.0,
            np.zeros_like(net.centers), np.zeros_like(net.widths),
        )


def train(net: RbfNetwork, train_data: Dataset, cfg: RbfTrainConfig) -> RbfNetwork:
    """Stochastic gradient descent with momentum on the squared error.

    FIXED_CENTERS touches only out_weights and bias; KOHONEN_BACKPROP also
    adapts centers and widths, each with its own learning rate. Pattern
    order is reshuffled per epoch. Stops at ``epochs`` or when the epoch
    MSE improves by less than 1e-9.
    """
    if net is None:
        raise NotInitialized("train() needs an initialized network")
    if train_data.n_patterns == 0:
        raise EmptyDataset("cannot train on an empty dataset")
    if train_data.n_inputs != net.centers.shape[1]:
        raise DimensionMismatch("dataset dimension does not match the network")
    weights = net.out_weights.copy()
    bias = net.bias
    centers = net.centers.copy()
    widths = net.widths.copy()
    mom = _Momentum.zeros(net)
    rng = np.random.default_rng(cfg.seed)
    adapt_all = cfg.mode is TrainMode.KOHONEN_BACKPROP
    alpha = cfg.momentum_alpha
    prev_mse = np.inf
    for _ in range(cfg.epochs):
        order = rng.permutation(train_data.n_patterns)
        sq_err_sum = 0.0
        for i in order:
            x = train_data.features[i]
            y = train_data.targets[i]
            g_w, g_b, g_mu, g_sigma, out = _raw_gradients(
                centers, widths, weights, bias, x, y
            )
            sq_err_sum += (y - out) ** 2
            mom.w = momentum_step(g_w, mom.w, cfg.lr_weights, alpha)
            weights = weights + mom.w
            mom.b = momentum_step(g_b, mom.b, cfg.lr_weights, alpha)
            bias = bias + mom.b
            if adapt_all:
                mom.mu = momentum_step(g_mu, mom.mu, cfg.lr_centers, alpha)
                centers = centers + mom.mu
                mom.sigma = momentum_step(g_sigma, mom.sigma, cfg.lr_widths, alpha)
                widths = np.maximum(widths + mom.sigma, MIN_WIDTH)
        mse = sq_err_sum / train_data.n_patterns
        if prev_mse - mse < MSE_IMPROVEMENT_STOP:
            break
        prev_mse = mse
    return RbfNetwork(centers, widths, weights, bias)
