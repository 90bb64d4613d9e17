"""Fully connected feedforward network, sigmoid activations throughout.

Supports any depth; the benchmark sweeps 1, 2, and 4 hidden layers.
Training is per-pattern backpropagation of the squared error with a
momentum term, matching the RBF trainer's loss for comparability. Signed
targets are mapped to {0, 1} so they live in the sigmoid's output range.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .data import Dataset, LabelSpace
from .errors import DimensionMismatch, EmptyDataset, InvalidConfig
from .optim import momentum_step

MSE_IMPROVEMENT_STOP = 1e-9
BENCH_DEPTHS = (1, 2, 4)


@dataclass(frozen=True)
class MlpConfig:
    hidden_layers: int = 1
    units_per_layer: int = 10
    lr: float = 0.1
    momentum_alpha: float = 0.9
    epochs: int = 1000
    seed: int = 0

    def validate(self):
        if self.hidden_layers < 1:
            raise InvalidConfig("need at least one hidden layer")
        if self.hidden_layers not in BENCH_DEPTHS:
            warnings.warn(
                f"hidden_layers={self.hidden_layers} is outside the benchmark sweep {BENCH_DEPTHS}"
            )
        if self.units_per_layer < 1:
            raise InvalidConfig("units_per_layer must be >= 1")
        if self.lr < 0:
            raise InvalidConfig("lr must be non-negative")
        if not 0 <= self.momentum_alpha < 1:
            raise InvalidConfig("momentum_alpha must be in [0, 1)")


@dataclass(frozen=True)
class MlpNetwork:
    """Weight matrices (fan_in x fan_out) and bias vectors, input to output."""

    weights: tuple
    biases: tuple

    def __post_init__(self):
        if len(self.weights) != len(self.biases):
            raise DimensionMismatch("need one bias vector per weight matrix")
        if len(self.weights) < 2:
            raise DimensionMismatch("need at least one hidden layer plus the output layer")
        for a, b in zip(self.weights, self.weights[1:]):
            if a.shape[1] != b.shape[0]:
                raise DimensionMismatch(f"layer widths {a.shape} -> {b.shape} do not chain")


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def mlp_init(n_inputs: int, cfg: MlpConfig) -> MlpNetwork:
    """Uniform [-0.5, 0.5] / sqrt(fan_in) weights: small enough that no
    unit starts saturated."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    sizes = [n_inputs] + [cfg.units_per_layer] * cfg.hidden_layers + [1]
    weights = []
    biases = []
    for fan_in, fan_out in zip(sizes, sizes[1:]):
        bound = 0.5 / np.sqrt(fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(rng.uniform(-bound, bound, size=fan_out))
    return MlpNetwork(tuple(weights), tuple(biases))


def _forward_trace(net: MlpNetwork, x: np.ndarray) -> list[np.ndarray]:
    """Activations per layer, input first, output last."""
    activations = [np.asarray(x, dtype=np.float64)]
    for w, b in zip(net.weights, net.biases):
        activations.append(sigmoid(activations[-1] @ w + b))
    return activations


def mlp_forward(net: MlpNetwork, x) -> float:
    """Network output for one pattern, strictly inside (0, 1)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != net.weights[0].shape[0]:
        raise DimensionMismatch(
            f"input dimension {x.shape[-1]} vs network {net.weights[0].shape[0]}"
        )
    return float(_forward_trace(net, x)[-1][0])


def mlp_forward_batch(net: MlpNetwork, xs: np.ndarray) -> np.ndarray:
    a = np.asarray(xs, dtype=np.float64)
    if a.shape[-1] != net.weights[0].shape[0]:
        raise DimensionMismatch(
            f"input dimension {a.shape[-1]} vs network {net.weights[0].shape[0]}"
        )
    for w, b in zip(net.weights, net.biases):
        a = sigmoid(a @ w + b)
    return a[:, 0]


def _raw_gradients(weights, biases, x, y):
    """Backprop partials of E = 0.5 * (y - out)^2 plus the output."""
    acts = [x]
    for w, b in zip(weights, biases):
        acts.append(sigmoid(acts[-1] @ w + b))
    out = acts[-1]
    delta = (out - y) * out * (1.0 - out)  # output layer, sigmoid everywhere
    weight_grads = [None] * len(weights)
    bias_grads = [None] * len(biases)
    for layer in reversed(range(len(weights))):
        weight_grads[layer] = np.outer(acts[layer], delta)
        bias_grads[layer] = delta
        if layer > 0:
            h = acts[layer]
            delta = (delta @ weights[layer].T) * h * (1.0 - h)
    return weight_grads, bias_grads, float(out[0])


def gradients(net: MlpNetwork, x, y: float):
    """Backpropagated partials of E = 0.5 * (y - out)^2.

    Returns (weight_grads, bias_grads), one array per layer.
    """
    w_grads, b_grads, _ = _raw_gradients(
        list(net.weights), list(net.biases), np.asarray(x, dtype=np.float64), y
    )
    return w_grads, b_grads


def training_targets(train: Dataset) -> np.ndarray:
    """Targets in [0, 1]: signed labels map through (y + 1) / 2."""
    if train.label_space is LabelSpace.SIGNED_BINARY:
        return (train.targets + 1.0) / 2.0
    if np.any(train.targets < 0) or np.any(train.targets > 1):
        raise ValueError("continuous targets must lie in [0, 1] for sigmoid training")
    return train.targets.copy()


def mlp_train(train: Dataset, cfg: MlpConfig) -> MlpNetwork:
    """Stochastic backprop with momentum; order reshuffled per epoch.

    Stops at ``epochs`` or when the epoch MSE improves by less than 1e-9.
    """
    if train.n_patterns == 0:
        raise EmptyDataset("cannot train on an empty dataset")
    targets = training_targets(train)
    net = mlp_init(train.n_inputs, cfg)
    weights = [w.copy() for w in net.weights]
    biases = [b.copy() for b in net.biases]
    mom_w = [np.zeros_like(w) for w in weights]
    mom_b = [np.zeros_like(b) for b in biases]
    rng = np.random.default_rng(cfg.seed)
    prev_mse = np.inf
    for _ in range(cfg.epochs):
        order = rng.permutation(train.n_patterns)
        sq_err_sum = 0.0
        for i in order:
            current = MlpNetwork(tuple(weights), tuple(biases))
            w_grads, b_grads = gradients(current, train.features[i], targets[i])
            out = mlp_forward(current, train.features[i])
            sq_err_sum += (targets[i] - out) ** 2
            for layer in range(len(weights)):
                mom_w[layer] = momentum_step(w_grads[layer], mom_w[layer], cfg.lr, cfg.momentum_alpha)
                weights[layer] = weights[layer] + mom_w[layer]
                mom_b[layer] = momentum_step(b_grads[layer], mom_b[layer], cfg.lr, cfg.momentum_alpha)
                biases[layer] = biases[layer] + mom_b[layer]
        mse = sq_err_sum / train.n_patterns
        if prev_mse - mse < MSE_IMPROVEMENT_STOP:
            break
        prev_mse = mse
    return MlpNetwork(tuple(weights), tuple(biases))


def mlp_classify(net: MlpNetwork, x, threshold: float = 0.5) -> int:
    """+1 if the output exceeds the threshold, else -1 (ties to -1)."""
    return 1 if mlp_forward(net, x) > threshold else -1


def mlp_classify_batch(net: MlpNetwork, xs: np.ndarray, threshold: float = 0.5) -> np.ndarray:
    return np.where(mlp_forward_batch(net, xs) > threshold, 1.0, -1.0)
