"""Shapley value iteration with a pluggable inner simplex maximizer.

Sweeps are Jacobi: every state update reads the previous iterate, so the
per-state maximizations are independent within a sweep.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from bordergame.alloc import greedy_concave, greedy_scaled, greedy_scaled_lazy
from bordergame.game import GameInstance, PatrollerStrategy, ValueFunction, value_bound

__all__ = [
    "SolveReport",
    "ConvergenceError",
    "bellman_sweep",
    "value_iterate",
    "resolve_method",
    "INNER_METHODS",
]

INNER_METHODS = ("concave-greedy", "scaled-greedy", "lazy-greedy")


class ConvergenceError(RuntimeError):
    """Raised when the iteration cap is exceeded; carries the gap trajectory."""

    def __init__(self, message: str, gap_history):
        super().__init__(message)
        self.gap_history = list(gap_history)


@dataclass(frozen=True)
class SolveReport:
    V: ValueFunction
    Pi: PatrollerStrategy
    iterations: int
    final_gap: float
    epsilon: float
    delta: float | None
    method: str
    elapsed: float
    gap_history: list = field(default_factory=list, compare=False)

    @property
    def mean_value(self) -> float:
        return float(np.mean(self.V.values))


def resolve_method(inst: GameInstance, method: str) -> str:
    """Resolve "auto" and reject inner solvers that do not fit the cost."""
    if method == "auto":
        return "concave-greedy" if inst.cost.is_concave else "scaled-greedy"
    if method not in INNER_METHODS:
        raise ValueError(f"unknown inner method {method!r}")
    if method == "concave-greedy" and not inst.cost.is_concave:
        raise ValueError("concave-greedy requires a concave cost function")
    return method


def _inner(inst: GameInstance, s: int, V, method: str, K: int | None):
    if method == "concave-greedy":
        return greedy_concave(inst, s, V)
    if K is None:
        raise ValueError(f"{method} requires a scaling K")
    if method == "scaled-greedy":
        return greedy_scaled(inst, s, V, K)
    return greedy_scaled_lazy(inst, s, V, K)


def bellman_sweep(inst: GameInstance, V_prev, method: str, K: int | None = None):
    """One Jacobi sweep: per state, maximize G under V_prev.

    Returns (V_next, Pi_rows) where V_next[s] is the inner maximizer's
    objective and Pi_rows[s] its distribution.
    """
    method = resolve_method(inst, method)
    V_prev = np.asarray(V_prev, dtype=float)
    if not np.all(np.isfinite(V_prev)):
        raise ValueError("V_prev must be finite")
    V_next = np.empty(inst.n)
    rows = np.empty((inst.n, inst.n))
    for s in range(inst.n):
        result = _inner(inst, s, V_prev, method, K)
        V_next[s] = result.objective
        rows[s] = result.pi
    return V_next, rows


def iteration_cap(inst: GameInstance, epsilon: float) -> int:
    """Worst-case sweep count from the contraction rate, with headroom."""
    r_max = float(np.sum(inst.rewards)) + inst.cost.at_one + float(inst.movement.max())
    if inst.gamma == 0.0:
        return 10
    ratio = epsilon * (1.0 - inst.gamma) / r_max
    if ratio >= 1.0:
        return 10
    return max(10, 10 * math.ceil(math.log(ratio) / math.log(inst.gamma)))


def value_iterate(
    inst: GameInstance,
    epsilon: float = 1e-3,
    method: str = "auto",
    delta: float = 0.2,
    V0=None,
    max_iterations: int | None = None,
) -> SolveReport:
    """Iterate bellman_sweep from V0 = 0 until the sup-norm change is at
    most epsilon; the strategy is assembled from the final sweep."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not delta > 0:
        raise ValueError("delta must be positive")
    method = resolve_method(inst, method)
    K = None
    used_delta = None
    if method in ("scaled-greedy", "lazy-greedy"):
        K = math.ceil(inst.n / delta)
        used_delta = delta
    cap = max_iterations if max_iterations is not None else iteration_cap(inst, epsilon)

    start = time.perf_counter()
    V = np.zeros(inst.n) if V0 is None else np.asarray(V0, dtype=float).copy()
    gap_history: list[float] = []
    rows = None
    for k in range(1, cap + 1):
        V_next, rows = bellman_sweep(inst, V, method, K)
        gap = float(np.max(np.abs(V_next - V)))
        gap_history.append(gap)
        V = V_next
        if gap <= epsilon:
            elapsed = time.perf_counter() - start
            return SolveReport(
                V=ValueFunction(V, bound=value_bound(inst)),
                Pi=PatrollerStrategy(rows),
                iterations=k,
                final_gap=gap,
                epsilon=epsilon,
                delta=used_delta,
                method=method,
                elapsed=elapsed,
                gap_history=gap_history,
            )
    raise ConvergenceError(
        f"no convergence to epsilon={epsilon} within {cap} sweeps", gap_history
    )
