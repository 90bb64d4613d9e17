"""Momentum update shared by the gradient trainers."""

from __future__ import annotations


def momentum_step(grad, prev_delta, lr: float, alpha: float):
    """New parameter delta: -lr * grad + alpha * prev_delta.

    Under a constant gradient the delta converges to -lr * grad / (1 - alpha),
    which is the averaging behavior the momentum term exists for.
    """
    return -lr * grad + alpha * prev_delta
