"""Game definition: instances, cost functions, rewards and strategies.

Locations are indexed 0..n-1 throughout the Python API; file formats
(instance JSON, exported CSV) use 1-based labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "CostFunction",
    "GameInstance",
    "PatrollerStrategy",
    "SmugglerStrategy",
    "ValueFunction",
    "cost_eval",
    "make_movement",
    "reward_patroller",
    "reward_smuggler_zero_sum",
    "reward_smuggler_individual",
    "instance_from_dict",
    "instance_to_dict",
]

ROW_SUM_TOL = 1e-9


@dataclass(frozen=True)
class CostFunction:
    """Penalty paid by a smuggler caught with quantity a.

    Two parametric families: ``linear`` gives C(a) = c*a, ``power`` gives
    C(a) = c*a**p with p != 1.  Both are increasing with C(0) = 0.
    """

    family: str
    c: float
    p: float = 1.0

    def __post_init__(self):
        if self.family not in ("linear", "power"):
            raise ValueError(f"unknown cost family {self.family!r}")
        if not self.c > 0:
            raise ValueError("cost coefficient c must be positive")
        if self.family == "power":
            if not self.p > 0:
                raise ValueError("cost exponent p must be positive")
            if self.p == 1:
                raise ValueError("power cost with p=1 is the linear family")
        else:
            object.__setattr__(self, "p", 1.0)

    @property
    def classification(self) -> str:
        """Either ``concave`` (linear, or power with p < 1) or ``strictly-convex``."""
        if self.family == "linear" or self.p < 1:
            return "concave"
        return "strictly-convex"

    @property
    def is_concave(self) -> bool:
        return self.classification == "concave"

    @property
    def at_one(self) -> float:
        """C(1), the full-unit penalty; drives the concave-case threshold."""
        return self.c

    def __call__(self, a: float) -> float:
        return cost_eval(self, a)


def cost_eval(cost: CostFunction, a: float) -> float:
    """Evaluate C(a) for a in [0, 1]."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"quantity {a} outside [0, 1]")
    if cost.family == "linear":
        return cost.c * a
    return cost.c * a ** cost.p


@dataclass(frozen=True)
class GameInstance:
    """Full parameterization of one patrolling game.

    rewards[i] is the smuggler reward per unit smuggled through location i,
    movement[i, j] is the patroller's cost of moving from i to j, and
    gamma in [0, 1) is the common discount factor.
    """

    n: int
    rewards: np.ndarray
    movement: np.ndarray
    cost: CostFunction
    gamma: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one location")
        rewards = np.asarray(self.rewards, dtype=float)
        movement = np.asarray(self.movement, dtype=float)
        object.__setattr__(self, "rewards", rewards)
        object.__setattr__(self, "movement", movement)
        if rewards.shape != (self.n,):
            raise ValueError(f"rewards must have shape ({self.n},)")
        if not np.all(rewards > 0):
            raise ValueError("every reward r_i must be positive")
        if movement.shape != (self.n, self.n):
            raise ValueError(f"movement must have shape ({self.n}, {self.n})")
        if not np.all(movement >= 0):
            raise ValueError("movement costs must be nonnegative")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("discount gamma must lie in [0, 1)")

    def with_gamma(self, gamma: float) -> "GameInstance":
        return replace(self, gamma=gamma)

    def with_movement(self, movement: np.ndarray) -> "GameInstance":
        return replace(self, movement=np.asarray(movement, dtype=float))


def _check_location(inst: GameInstance, idx: int, name: str) -> None:
    if not 0 <= idx < inst.n:
        raise IndexError(f"{name}={idx} out of range for n={inst.n}")


def _check_quantities(inst: GameInstance, a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.shape != (inst.n,):
        raise ValueError(f"quantity vector must have shape ({inst.n},)")
    if np.any(a < 0) or np.any(a > 1):
        raise ValueError("quantities must lie in [0, 1]")
    return a


def reward_patroller(inst: GameInstance, b: int, a, s: int) -> float:
    """One-step patroller reward: C(a_b) - sum_{i != b} r_i a_i - m_{s,b}."""
    _check_location(inst, b, "b")
    _check_location(inst, s, "s")
    a = _check_quantities(inst, a)
    leaked = float(inst.rewards @ a) - inst.rewards[b] * a[b]
    return cost_eval(inst.cost, a[b]) - leaked - float(inst.movement[s, b])


def reward_smuggler_zero_sum(inst: GameInstance, b: int, a, s: int) -> float:
    """Smuggler reward in the zero-sum form (movement cost credited to them)."""
    return -reward_patroller(inst, b, a, s)


def reward_smuggler_individual(inst: GameInstance, i: int, b: int, a) -> float:
    """Nonaggregated reward of the smuggler at location i (original form)."""
    _check_location(inst, i, "i")
    _check_location(inst, b, "b")
    a = _check_quantities(inst, a)
    if b != i:
        return float(inst.rewards[i] * a[i])
    return -cost_eval(inst.cost, a[i])


def make_movement(kind: str, n: int) -> np.ndarray:
    """Movement-cost families: squared distance on a line, or shortest arc
    on a cycle of n locations."""
    if n < 1:
        raise ValueError("n must be at least 1")
    idx = np.arange(n)
    diff = np.abs(idx[:, None] - idx[None, :])
    if kind == "linear-squared":
        return (diff ** 2).astype(float)
    if kind == "perimeter":
        return np.minimum(diff, n - diff).astype(float)
    raise ValueError(f"unknown movement kind {kind!r}")


@dataclass(frozen=True)
class PatrollerStrategy:
    """Row-stochastic n x n matrix; row s is the mixture over defended
    locations when the current state is s."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", probs)
        if probs.ndim != 2 or probs.shape[0] != probs.shape[1]:
            raise ValueError("strategy matrix must be square")
        if np.any(probs < -ROW_SUM_TOL) or np.any(probs > 1 + ROW_SUM_TOL):
            raise ValueError("probabilities must lie in [0, 1]")
        if np.any(np.abs(probs.sum(axis=1) - 1.0) > ROW_SUM_TOL):
            raise ValueError("every row must sum to 1")

    @property
    def n(self) -> int:
        return self.probs.shape[0]

    def row(self, s: int) -> np.ndarray:
        return self.probs[s]


@dataclass(frozen=True)
class SmugglerStrategy:
    """Per state s and location i, a finite-support distribution over
    quantities: support[s][i] is a list of (quantity, probability) pairs."""

    support: tuple

    def __post_init__(self):
        norm = tuple(
            tuple(tuple((float(q), float(p)) for q, p in cell) for cell in row)
            for row in self.support
        )
        object.__setattr__(self, "support", norm)
        for s, row in enumerate(norm):
            for i, cell in enumerate(row):
                if not cell:
                    raise ValueError(f"empty support at state {s}, location {i}")
                total = 0.0
                for q, p in cell:
                    if not 0.0 <= q <= 1.0:
                        raise ValueError(f"quantity {q} outside [0, 1] at ({s}, {i})")
                    if p < -ROW_SUM_TOL:
                        raise ValueError(f"negative probability at ({s}, {i})")
                    total += p
                if abs(total - 1.0) > ROW_SUM_TOL:
                    raise ValueError(f"probabilities at ({s}, {i}) sum to {total}")

    @property
    def n(self) -> int:
        return len(self.support)

    def mean_quantity(self, s: int, i: int) -> float:
        return sum(q * p for q, p in self.support[s][i])

    def mean_cost(self, cost: CostFunction, s: int, i: int) -> float:
        return sum(cost_eval(cost, q) * p for q, p in self.support[s][i])

    def mean_quantities(self) -> np.ndarray:
        n = self.n
        return np.array(
            [[self.mean_quantity(s, i) for i in range(n)] for s in range(n)]
        )


def value_bound(inst: GameInstance) -> float:
    """Crude bound on |V(s)|: discounted worst-case one-step magnitude."""
    per_step = float(np.sum(inst.rewards)) + inst.cost.at_one + float(inst.movement.max())
    return per_step / (1.0 - inst.gamma)


@dataclass(frozen=True)
class ValueFunction:
    """Patroller state values; the smugglers' values are the negation."""

    values: np.ndarray
    bound: float | None = field(default=None, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1:
            raise ValueError("values must be a vector")
        if not np.all(np.isfinite(values)):
            raise ValueError("state values must be finite")
        if self.bound is not None and np.any(np.abs(values) > self.bound + 1e-9):
            raise ValueError("state values exceed the discounted reward bound")

    @property
    def n(self) -> int:
        return self.values.shape[0]


# ---------------------------------------------------------------------------
# Instance (de)serialization.  Schema:
#   {"n": int, "rewards": [..], "movement": {"kind": .., "matrix": [[..]]},
#    "cost": {"family": "linear"|"power", "c": .., "p": ..}, "gamma": ..}


class SchemaError(ValueError):
    """Instance-file validation failure, carrying the offending field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise SchemaError(f"{path}.{key}" if path else key, "missing field")
    return obj[key]


def instance_from_dict(data: dict, path: str = "") -> GameInstance:
    if not isinstance(data, dict):
        raise SchemaError(path or ".", "expected an object")
    n = _require(data, "n", path)
    if not isinstance(n, int) or n < 1:
        raise SchemaError(f"{path}.n" if path else "n", "must be a positive integer")
    rewards = _require(data, "rewards", path)
    movement_spec = _require(data, "movement", path)
    mpath = f"{path}.movement" if path else "movement"
    if not isinstance(movement_spec, dict):
        raise SchemaError(mpath, "expected an object")
    kind = _require(movement_spec, "kind", mpath)
    if kind == "explicit":
        movement = _require(movement_spec, "matrix", mpath)
    elif kind in ("linear-squared", "perimeter"):
        movement = make_movement(kind, n)
    else:
        raise SchemaError(f"{mpath}.kind", f"unknown movement kind {kind!r}")
    cost_spec = _require(data, "cost", path)
    cpath = f"{path}.cost" if path else "cost"
    if not isinstance(cost_spec, dict):
        raise SchemaError(cpath, "expected an object")
    family = _require(cost_spec, "family", cpath)
    c = _require(cost_spec, "c", cpath)
    try:
        if family == "linear":
            cost = CostFunction("linear", float(c))
        else:
            cost = CostFunction(str(family), float(c), float(_require(cost_spec, "p", cpath)))
    except ValueError as exc:
        raise SchemaError(cpath, str(exc)) from exc
    gamma = _require(data, "gamma", path)
    try:
        return GameInstance(
            n=n,
            rewards=np.asarray(rewards, dtype=float),
            movement=np.asarray(movement, dtype=float),
            cost=cost,
            gamma=float(gamma),
        )
    except (ValueError, TypeError) as exc:
        raise SchemaError(path or ".", str(exc)) from exc


def instance_to_dict(inst: GameInstance) -> dict:
    return {
        "n": inst.n,
        "rewards": [float(r) for r in inst.rewards],
        "movement": {
            "kind": "explicit",
            "matrix": [[float(x) for x in row] for row in inst.movement],
        },
        "cost": {"family": inst.cost.family, "c": inst.cost.c, "p": inst.cost.p},
        "gamma": inst.gamma,
    }


def _isclose(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)
