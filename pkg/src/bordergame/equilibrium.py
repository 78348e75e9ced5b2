"""Smuggler equilibrium extraction and epsilon-equilibrium verification.

Concave costs: per state, the smugglers solve a maximin linear program
over expected quantities (their payoffs are linear in those under the
C(1)-linearized cost), realized as independent per-location Bernoullis
over {0, 1}.  Strictly convex costs: the best response is unique and
deterministic, so the equilibrium strategy is the myopic response.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from bordergame.best_response import big_g, smuggler_best_response
from bordergame.evaluation import policy_value
from bordergame.game import GameInstance, PatrollerStrategy, SmugglerStrategy

__all__ = [
    "MaximinProblem",
    "EquilibriumReport",
    "maximin_box_linear",
    "smuggler_equilibrium_concave",
    "smuggler_equilibrium_convex",
    "smuggler_equilibrium",
    "verify_epsilon_equilibrium",
]

_LEX_SLACK = 1e-9


@dataclass(frozen=True)
class MaximinProblem:
    """max_q min_b f_b(q) over the box [0,1]^n, with
    f_b(q) = sum_{i != b} r_i q_i + cont_b - c1 * q_b.

    cont_b collects the q-independent terms m_{s,b} + gamma * V_smug(b).
    """

    rewards: np.ndarray
    cont: np.ndarray
    c1: float

    def __post_init__(self):
        rewards = np.asarray(self.rewards, dtype=float)
        cont = np.asarray(self.cont, dtype=float)
        object.__setattr__(self, "rewards", rewards)
        object.__setattr__(self, "cont", cont)
        if rewards.shape != cont.shape or rewards.ndim != 1:
            raise ValueError("rewards and cont must be vectors of equal length")
        if not np.all(np.isfinite(rewards)) or not np.all(np.isfinite(cont)):
            raise ValueError("coefficients must be finite")

    @property
    def n(self) -> int:
        return self.rewards.shape[0]

    def payoff(self, b: int, q) -> float:
        q = np.asarray(q, dtype=float)
        return float(self.rewards @ q - (self.rewards[b] + self.c1) * q[b] + self.cont[b])

    def worst(self, q) -> float:
        return min(self.payoff(b, q) for b in range(self.n))


def maximin_box_linear(problem: MaximinProblem):
    """Solve max_q min_b f_b(q) exactly by LP (epigraph form); among
    optima, return the lexicographically smallest q."""
    n = problem.n
    r, cont, c1 = problem.rewards, problem.cont, problem.c1
    # Variables [q_1..q_n, t]; constraint rows: t - f_b(q) <= 0.
    A = np.zeros((n, n + 1))
    for b in range(n):
        A[b, :n] = -r
        A[b, b] += r[b] + c1
        A[b, n] = 1.0
    rhs = cont.copy()
    c_obj = np.zeros(n + 1)
    c_obj[n] = -1.0
    bounds = [(0.0, 1.0)] * n + [(None, None)]
    res = linprog(c_obj, A_ub=A, b_ub=rhs, bounds=bounds, method="highs")
    if not res.success:
        raise RuntimeError(f"maximin LP failed: {res.message}")
    value = float(res.x[n])

    # Lexicographic refinement: fix the achieved value (with slack) and
    # minimize the coordinates in order.
    fixed: list[float] = []
    A_q = A[:, :n]
    rhs_q = rhs - value + _LEX_SLACK  # -f_b(q) <= -value + slack
    for i in range(n):
        c_i = np.zeros(n)
        c_i[i] = 1.0
        b_lo = [(fixed[j], fixed[j]) if j < len(fixed) else (0.0, 1.0) for j in range(n)]
        sub = linprog(c_i, A_ub=A_q, b_ub=rhs_q, bounds=b_lo, method="highs")
        if not sub.success:
            # Keep the original optimizer if refinement stalls numerically.
            fixed = list(res.x[:n])
            break
        fixed.append(float(np.clip(sub.x[i], 0.0, 1.0)))
    q = np.array(fixed)
    return q, value


def _bernoulli_cell(q: float):
    # Snap wider than the LP's lexicographic slack so degenerate cells
    # come out pure.
    if q >= 1.0 - 1e-7:
        return ((1.0, 1.0),)
    if q <= 1e-7:
        return ((0.0, 1.0),)
    return ((0.0, 1.0 - q), (1.0, q))


def smuggler_equilibrium_concave(
    inst: GameInstance, Pi: PatrollerStrategy, V
) -> SmugglerStrategy:
    """Per state, the maximin expected quantities realized as independent
    Bernoullis over {0, 1}."""
    if not inst.cost.is_concave:
        raise ValueError("smuggler_equilibrium_concave requires a concave cost")
    V = np.asarray(V, dtype=float)
    c1 = inst.cost.at_one
    rows = []
    for s in range(inst.n):
        cont = inst.movement[s] + inst.gamma * (-V)
        q, _ = maximin_box_linear(MaximinProblem(inst.rewards, cont, c1))
        rows.append(tuple(_bernoulli_cell(float(qi)) for qi in q))
    return SmugglerStrategy(tuple(rows))


def smuggler_equilibrium_convex(inst: GameInstance, Pi: PatrollerStrategy) -> SmugglerStrategy:
    """Unique deterministic best response per (state, location)."""
    if inst.cost.is_concave:
        raise ValueError("smuggler_equilibrium_convex requires a strictly convex cost")
    rows = []
    for s in range(inst.n):
        cells = []
        for i in range(inst.n):
            br = smuggler_best_response(inst.cost, float(inst.rewards[i]), float(Pi.probs[s, i]))
            cells.append(((br.quantity, 1.0),))
        rows.append(tuple(cells))
    return SmugglerStrategy(tuple(rows))


def smuggler_equilibrium(inst: GameInstance, Pi: PatrollerStrategy, V) -> SmugglerStrategy:
    if inst.cost.is_concave:
        return smuggler_equilibrium_concave(inst, Pi, V)
    return smuggler_equilibrium_convex(inst, Pi)


@dataclass(frozen=True)
class EquilibriumReport:
    Xi: SmugglerStrategy
    patroller_gain: np.ndarray
    smuggler_gain: np.ndarray
    epsilon_certified: float


def _patroller_best_response_values(inst: GameInstance, Xi: SmugglerStrategy) -> np.ndarray:
    """Exact optimal values of the patroller's single-agent MDP against a
    fixed smuggler strategy, via policy iteration on the deterministic
    transition s -> b."""
    n = inst.n
    mean_q = Xi.mean_quantities()
    mean_c = np.array(
        [[Xi.mean_cost(inst.cost, s, i) for i in range(n)] for s in range(n)]
    )
    # R[s, b]: expected one-step patroller reward for defending b from s.
    leaked = mean_q * inst.rewards  # r_i * E[a_i], per (s, i)
    R = mean_c - (leaked.sum(axis=1, keepdims=True) - leaked) - inst.movement
    policy = np.argmax(R, axis=1)
    for _ in range(10 * n + 10):
        # Evaluate: W = R[s, policy[s]] + gamma W[policy[s]].
        P = np.zeros((n, n))
        P[np.arange(n), policy] = 1.0
        W = np.linalg.solve(np.eye(n) - inst.gamma * P, R[np.arange(n), policy])
        improved = np.argmax(R + inst.gamma * W[None, :], axis=1)
        if np.array_equal(improved, policy):
            return W
        policy = improved
    raise RuntimeError("policy iteration failed to stabilize")


def verify_epsilon_equilibrium(
    inst: GameInstance, Pi: PatrollerStrategy, Xi: SmugglerStrategy, V
) -> EquilibriumReport:
    """Per-state unilateral deviation gains for both players.

    Smuggler side compares the myopic best-response value against the
    achieved one-step-plus-continuation payoff; patroller side solves her
    best-response MDP against Xi and compares with the achieved policy
    value.
    """
    V = np.asarray(V, dtype=float)
    n = inst.n
    smug_gain = np.empty(n)
    for s in range(n):
        br_value = -big_g(inst, Pi.probs[s], s, V)
        achieved = 0.0
        for b in range(n):
            pb = Pi.probs[s, b]
            if pb == 0.0:
                continue
            leaked = sum(
                inst.rewards[i] * Xi.mean_quantity(s, i) for i in range(n) if i != b
            )
            achieved += pb * (
                leaked
                + inst.movement[s, b]
                - Xi.mean_cost(inst.cost, s, b)
                + inst.gamma * (-V[b])
            )
        smug_gain[s] = max(0.0, br_value - achieved)

    W_best = _patroller_best_response_values(inst, Xi)
    W_achieved = policy_value(inst, Pi, Xi)
    pat_gain = np.maximum(0.0, W_best - W_achieved)
    eps = float(max(smug_gain.max(), pat_gain.max()))
    return EquilibriumReport(
        Xi=Xi, patroller_gain=pat_gain, smuggler_gain=smug_gain, epsilon_certified=eps
    )
