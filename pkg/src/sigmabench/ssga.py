"""Steady-state genetic algorithm over the Gaussian kernel width.

One individual is a single positive sigma, coded in log space. Each step
tournament-selects two parents, blends them (BLX-alpha), applies Gaussian
mutation, and replaces the current worst individual when the child is at
least as fit. Fitness is k-fold cross-validation of a GRNN classifier on
the training split only; the test split never enters evolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import grnn
from .data import Dataset, sign_labels
from .errors import InvalidConfig, TooFewPatterns
from .kernels import GaussianKernelParams
from .metrics import Metric, confusion, metric_value


@dataclass(frozen=True)
class SsgaConfig:
    population_size: int = 20
    generations: int = 200  # replacement steps
    sigma_range: tuple[float, float] = (1e-3, 10.0)
    tournament_size: int = 3
    crossover_blend_alpha: float = 0.5
    mutation_stddev: float = 0.2  # in log(sigma) space
    seed: int = 0

    def validate(self):
        low, high = self.sigma_range
        if not (0 < low < high):
            raise InvalidConfig(f"sigma_range must satisfy 0 < low < high, got {self.sigma_range}")
        if self.population_size < 2:
            raise InvalidConfig("population_size must be >= 2")
        if not 1 <= self.tournament_size <= self.population_size:
            raise InvalidConfig("tournament_size must be in [1, population_size]")
        if self.generations < 0:
            raise InvalidConfig("generations must be non-negative")
        if self.mutation_stddev < 0 or self.crossover_blend_alpha < 0:
            raise InvalidConfig("mutation_stddev and crossover_blend_alpha must be >= 0")


@dataclass(frozen=True)
class SsgaResult:
    best_sigma: float
    best_fitness: float
    history: tuple = field(default_factory=tuple)  # (step, best_fitness) pairs


def fold_indices(n: int, folds: int, seed: int) -> list[np.ndarray]:
    """Deterministic k-fold partition of range(n): a seeded permutation cut
    into ``folds`` nearly equal chunks."""
    perm = np.random.default_rng(seed).permutation(n)
    return np.array_split(perm, folds)


def cv_fitness(train: Dataset, sigma: float, metric: Metric, folds: int = 5, seed: int = 0) -> float:
    """Mean held-out metric of a GRNN classifier across k folds."""
    if folds < 2:
        raise InvalidConfig("cross-validation needs folds >= 2")
    if train.n_patterns < folds:
        raise TooFewPatterns(f"{train.n_patterns} patterns cannot fill {folds} folds")
    params = GaussianKernelParams(sigma)
    actual_signs = sign_labels(train)
    scores = []
    for held_out in fold_indices(train.n_patterns, folds, seed):
        mask = np.ones(train.n_patterns, dtype=bool)
        mask[held_out] = False
        model = grnn.fit(train.take(mask), params)
        predicted = grnn.grnn_classify_batch(model, train.features[held_out])
        scores.append(metric_value(confusion(predicted, actual_signs[held_out]), metric))
    return float(np.mean(scores))


def evolve_sigma(
    train: Dataset,
    metric: Metric,
    cfg: SsgaConfig,
    folds: int = 5,
    trace_path=None,
    _observer=None,
) -> SsgaResult:
    """Run the steady-state loop and return the all-time best individual.

    ``trace_path``, when given, receives one TSV row per replacement step:
    step, candidate_sigma, fitness, best_sigma. ``_observer`` is a test
    hook called with (step, population_fitness_snapshot) after each step.
    """
    cfg.validate()
    if train.n_patterns == 0:
        raise TooFewPatterns("cannot evolve sigma on an empty dataset")
    rng = np.random.default_rng(cfg.seed)
    log_low, log_high = math.log(cfg.sigma_range[0]), math.log(cfg.sigma_range[1])

    def evaluate(sigma: float) -> float:
        return cv_fitness(train, sigma, metric, folds=folds, seed=cfg.seed)

    log_pop = rng.uniform(log_low, log_high, size=cfg.population_size)
    fitness = np.array([evaluate(math.exp(v)) for v in log_pop])
    best_idx = int(np.argmax(fitness))
    best_sigma = math.exp(log_pop[best_idx])
    best_fitness = float(fitness[best_idx])
    history = [(0, best_fitness)]

    trace = open(trace_path, "w", encoding="utf-8") if trace_path else None
    if trace:
        trace.write("step\tcandidate_sigma\tfitness\tbest_sigma\n")
    try:
        for step in range(1, cfg.generations + 1):
            parents = []
            for _ in range(2):
                contenders = rng.choice(cfg.population_size, size=cfg.tournament_size, replace=False)
                parents.append(contenders[int(np.argmax(fitness[contenders]))])
            lo = min(log_pop[parents[0]], log_pop[parents[1]])
            hi = max(log_pop[parents[0]], log_pop[parents[1]])
            spread = cfg.crossover_blend_alpha * (hi - lo)
            child = rng.uniform(lo - spread, hi + spread)
            child += rng.normal(0.0, cfg.mutation_stddev)
            child = float(np.clip(child, log_low, log_high))
            child_sigma = math.exp(child)
            child_fitness = evaluate(child_sigma)
            worst = int(np.argmin(fitness))
            if child_fitness >= fitness[worst]:  # ties favor the child
                log_pop[worst] = child
                fitness[worst] = child_fitness
            if child_fitness > best_fitness:
                best_fitness = child_fitness
                best_sigma = child_sigma
            history.append((step, best_fitness))
            if trace:
                trace.write(f"{step}\t{child_sigma:.17g}\t{child_fitness:.17g}\t{best_sigma:.17g}\n")
            if _observer is not None:
                _observer(step, fitness.copy())
    finally:
        if trace:
            trace.close()
    return SsgaResult(best_sigma, best_fitness, tuple(history))
