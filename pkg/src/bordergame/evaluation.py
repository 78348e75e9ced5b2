"""Strategy evaluation: exact policy values, worst-case expected reward,
myopic normal-form baselines, and a seeded Monte Carlo simulator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from bordergame.best_response import smuggler_best_response
from bordergame.game import (
    GameInstance,
    PatrollerStrategy,
    SmugglerStrategy,
)

__all__ = [
    "EvalResult",
    "SimEstimate",
    "policy_value",
    "wcer",
    "myopic_best_response",
    "myopic_baseline",
    "simulate",
]


@dataclass(frozen=True)
class EvalResult:
    per_state_value: np.ndarray
    mean_value: float
    method: str


@dataclass(frozen=True)
class SimEstimate:
    mean: float
    std_error: float
    replications: int
    horizon: int
    seed: int


def policy_value(inst: GameInstance, Pi: PatrollerStrategy, Xi: SmugglerStrategy) -> np.ndarray:
    """Exact discounted patroller values of fixed stationary strategies:
    solves (I - gamma P) W = R with P the patroller's row-stochastic
    transition and R the expected one-step reward."""
    n = inst.n
    mean_q = Xi.mean_quantities()
    mean_c = np.array(
        [[Xi.mean_cost(inst.cost, s, i) for i in range(n)] for s in range(n)]
    )
    leaked = mean_q * inst.rewards
    # R_sb: expected reward of defending b from state s under Xi.
    R_sb = mean_c - (leaked.sum(axis=1, keepdims=True) - leaked) - inst.movement
    R = np.sum(Pi.probs * R_sb, axis=1)
    A = np.eye(n) - inst.gamma * Pi.probs
    W = np.linalg.solve(A, R)
    residual = float(np.max(np.abs(A @ W - R)))
    assert residual <= 1e-10, f"linear-system residual {residual}"
    return W


def myopic_best_response(inst: GameInstance, Pi: PatrollerStrategy) -> SmugglerStrategy:
    """Deterministic myopic best response per (state, location); threshold
    ties resolved to the canonical quantity 1."""
    rows = []
    for s in range(inst.n):
        cells = []
        for i in range(inst.n):
            br = smuggler_best_response(inst.cost, float(inst.rewards[i]), float(Pi.probs[s, i]))
            cells.append(((br.quantity, 1.0),))
        rows.append(tuple(cells))
    return SmugglerStrategy(tuple(rows))


def wcer(inst: GameInstance, Pi: PatrollerStrategy) -> EvalResult:
    """Worst-case expected reward of Pi: exact evaluation against the
    best-responding smugglers, averaged over a uniform initial state."""
    Xi = myopic_best_response(inst, Pi)
    W = policy_value(inst, Pi, Xi)
    return EvalResult(per_state_value=W, mean_value=float(np.mean(W)), method="wcer")


def _symmetric_oneshot_row(inst: GameInstance) -> np.ndarray:
    """Symmetric maximizer of the movement-free one-shot objective for
    concave costs.

    Each location's component rises with slope r_b + C(1) up to the
    threshold r_b / (C(1) + r_b) and is flat beyond it, so an optimal row
    fills thresholds in decreasing slope order.  Locations tied on slope
    share the same threshold and are raised together, which selects the
    symmetric equilibrium among the (typically many) optimal rows.
    """
    n = inst.n
    c1 = inst.cost.at_one
    slopes = inst.rewards + c1
    thresholds = inst.rewards / (c1 + inst.rewards)
    row = np.zeros(n)
    remaining = 1.0
    for slope in sorted(set(slopes.tolist()), reverse=True):
        group = np.flatnonzero(slopes == slope)
        if remaining <= 0:
            break
        share = remaining / len(group)
        cap = float(thresholds[group[0]])
        level = min(share, cap)
        row[group] = level
        remaining -= level * len(group)
    if remaining > 1e-15:
        # Thresholds sum below 1: any placement of the excess is optimal.
        row += remaining / n
    return row


def myopic_baseline(
    inst: GameInstance, include_movement: bool, method: str = "auto", delta: float = 0.2
) -> PatrollerStrategy:
    """Normal-form baseline: solve the one-shot (gamma = 0) game per state.

    Without movement costs the per-state problems coincide, so a single
    row is solved and replicated; for concave costs that one-shot optimum
    is massively degenerate and the symmetric row is chosen.
    """
    from bordergame.solver import value_iterate

    inst0 = inst.with_gamma(0.0)
    if not include_movement:
        inst0 = inst0.with_movement(np.zeros((inst.n, inst.n)))
        if inst.cost.is_concave:
            row = _symmetric_oneshot_row(inst0)
            return PatrollerStrategy(np.tile(row, (inst.n, 1)))
    report = value_iterate(inst0, epsilon=1e-12, method=method, delta=delta)
    rows = report.Pi.probs
    if not include_movement:
        rows = np.tile(rows[0], (inst.n, 1))
    return PatrollerStrategy(rows)


def _cell_samplers(Xi: SmugglerStrategy, n: int):
    """Per (s, i): quantity array and cumulative probabilities."""
    quantities, cums = [], []
    for s in range(n):
        qr, cr = [], []
        for i in range(n):
            pts = Xi.support[s][i]
            q = np.array([pt[0] for pt in pts])
            p = np.array([pt[1] for pt in pts])
            qr.append(q)
            cr.append(np.cumsum(p))
        quantities.append(qr)
        cums.append(cr)
    return quantities, cums


def simulate(
    inst: GameInstance,
    Pi: PatrollerStrategy,
    Xi: SmugglerStrategy,
    horizon: int,
    replications: int,
    seed: int,
) -> SimEstimate:
    """Monte Carlo estimate of the discounted patroller reward.

    Uses a single PCG64 stream from ``seed``.  Draw order is step-major:
    the uniform initial states for all replications, then per step the
    patroller draws for every replication (in index order) followed by the
    quantity draws for each location in ascending order.  Bit-reproducible
    for a fixed seed.
    """
    if horizon < 1 or replications < 1:
        raise ValueError("horizon and replications must be at least 1")
    n = inst.n
    rng = np.random.default_rng(seed)
    quantities, cums = _cell_samplers(Xi, n)
    pi_cum = np.cumsum(Pi.probs, axis=1)
    rewards = inst.rewards

    states = rng.integers(0, n, size=replications)
    totals = np.zeros(replications)
    disc = 1.0
    for _ in range(horizon):
        u_b = rng.random(replications)
        b = (u_b[:, None] > pi_cum[states]).sum(axis=1)
        b = np.minimum(b, n - 1)
        a = np.empty((replications, n))
        for i in range(n):
            u = rng.random(replications)
            for s in range(n):
                mask = states == s
                if not mask.any():
                    continue
                idx = np.searchsorted(cums[s][i], u[mask], side="left")
                idx = np.minimum(idx, len(cums[s][i]) - 1)
                a[mask, i] = quantities[s][i][idx]
        a_b = a[np.arange(replications), b]
        if inst.cost.family == "linear":
            caught = inst.cost.c * a_b
        else:
            caught = inst.cost.c * a_b ** inst.cost.p
        leaked = a @ rewards - rewards[b] * a_b
        step_reward = caught - leaked - inst.movement[states, b]
        totals += disc * step_reward
        disc *= inst.gamma
        states = b
    mean = float(totals.mean())
    if replications > 1:
        std_error = float(totals.std(ddof=1) / np.sqrt(replications))
    else:
        std_error = 0.0
    return SimEstimate(
        mean=mean,
        std_error=std_error,
        replications=replications,
        horizon=horizon,
        seed=seed,
    )
