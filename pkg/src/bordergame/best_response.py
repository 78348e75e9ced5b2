"""Smuggler best responses and the separable patroller objective.

The smugglers' best response is myopic: it depends only on the cost
function, the local reward r_b and the guard probability pi_b, never on
the state, value function or discount.  Against a mixture pi, the
patroller's one-step payoff plus continuation decomposes into a sum of
per-location concave functions g_b(pi_b), which the allocation module
maximizes over the simplex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from bordergame.game import CostFunction, GameInstance, cost_eval

__all__ = [
    "BestResponse",
    "smuggler_best_response",
    "concave_threshold",
    "inner_max",
    "g_component",
    "big_g",
    "big_g_direct_oracle",
    "lipschitz_bound",
    "golden_section_best_response",
]


@dataclass(frozen=True)
class BestResponse:
    """Canonical maximizer of the smuggler's local payoff, with tie info.

    tie_set: one of "only-0", "only-1", "both-endpoints",
    "whole-interval" (linear cost exactly at the threshold), or
    "singleton" for the strictly convex case.
    """

    quantity: float
    is_tie: bool
    tie_set: str


def concave_threshold(cost: CostFunction, r_b: float) -> float:
    """Guard probability at which a concave-cost smuggler is indifferent
    between sending nothing and a full unit: r_b / (C(1) + r_b)."""
    return r_b / (cost.at_one + r_b)


def smuggler_best_response(cost: CostFunction, r_b: float, pi_b: float) -> BestResponse:
    """Maximize (1 - pi_b) * r_b * a - pi_b * C(a) over a in [0, 1]."""
    if not 0.0 <= pi_b <= 1.0:
        raise ValueError(f"pi_b={pi_b} outside [0, 1]")
    if not r_b > 0:
        raise ValueError("r_b must be positive")
    if cost.is_concave:
        threshold = concave_threshold(cost, r_b)
        if pi_b < threshold:
            return BestResponse(1.0, False, "only-1")
        if pi_b > threshold:
            return BestResponse(0.0, False, "only-0")
        tie_set = "whole-interval" if cost.family == "linear" else "both-endpoints"
        return BestResponse(1.0, True, tie_set)
    # Strictly convex power cost: unique stationary point, clamped.
    if pi_b == 0.0:
        return BestResponse(1.0, False, "singleton")
    if pi_b == 1.0:
        return BestResponse(0.0, False, "singleton")
    c, p = cost.c, cost.p
    a = ((1.0 - pi_b) * r_b / (pi_b * p * c)) ** (1.0 / (p - 1.0))
    return BestResponse(min(max(a, 0.0), 1.0), False, "singleton")


def inner_max(cost: CostFunction, r_b: float, pi_b: float) -> float:
    """max_{a in [0,1]} (1 - pi_b) r_b a - pi_b C(a), for any real pi_b.

    Outside [0, 1] the maximizer is 1 (pi_b < 0) or 0 (pi_b > 1); this
    extension is what makes g_b Lipschitz on all of R.
    """
    if cost.is_concave:
        # Optimum at an endpoint; value at a=1 uses only C(1).
        return max(0.0, (1.0 - pi_b) * r_b - pi_b * cost.at_one)
    if pi_b <= 0.0:
        return (1.0 - pi_b) * r_b - pi_b * cost.at_one
    if pi_b >= 1.0:
        return 0.0
    a = smuggler_best_response(cost, r_b, pi_b).quantity
    return (1.0 - pi_b) * r_b * a - pi_b * cost_eval(cost, a)


def g_component(inst: GameInstance, b: int, pi_b: float, s: int, V) -> float:
    """g_b(pi_b) = -inner_max + pi_b * (gamma V(b) - m_{s,b})."""
    V = np.asarray(V, dtype=float)
    d = inst.gamma * V[b] - inst.movement[s, b]
    return -inner_max(inst.cost, float(inst.rewards[b]), pi_b) + pi_b * d


def big_g(inst: GameInstance, pi, s: int, V) -> float:
    """Patroller payoff against a best-responding smuggler: sum_b g_b(pi_b)."""
    pi = np.asarray(pi, dtype=float)
    if pi.shape != (inst.n,):
        raise ValueError(f"pi must have shape ({inst.n},)")
    if np.any(pi < -1e-9) or abs(pi.sum() - 1.0) > 1e-9:
        raise ValueError("pi must be a probability distribution over locations")
    return sum(g_component(inst, b, float(pi[b]), s, V) for b in range(inst.n))


def big_g_direct_oracle(inst: GameInstance, pi, s: int, V, grid_resolution: int) -> float:
    """Brute-force min over a per-coordinate quantity grid.

    Independent check of the separable form: minimizes
    sum_b pi_b [R~_pat(b, a, s) + gamma V(b)] over the grid
    {0, 1/grid_resolution, ..., 1} in each coordinate.
    """
    if grid_resolution < 2:
        raise ValueError("grid_resolution must be at least 2")
    pi = np.asarray(pi, dtype=float)
    V = np.asarray(V, dtype=float)
    a = np.linspace(0.0, 1.0, grid_resolution + 1)
    if inst.cost.family == "linear":
        cost_vals = inst.cost.c * a
    else:
        cost_vals = inst.cost.c * a ** inst.cost.p
    total = 0.0
    for b in range(inst.n):
        # Per-coordinate term: pi_b C(a_b) + (pi_b - 1) r_b a_b.
        vals = pi[b] * cost_vals + (pi[b] - 1.0) * inst.rewards[b] * a
        total += float(vals.min())
        total += pi[b] * (inst.gamma * V[b] - inst.movement[s, b])
    return total


def lipschitz_bound(inst: GameInstance, b: int, s: int, V) -> float:
    """Lipschitz constant of g_b on [0, 1]: r_b + C(1) - (gamma V(b) - m_{s,b})."""
    V = np.asarray(V, dtype=float)
    return float(inst.rewards[b]) + inst.cost.at_one - (inst.gamma * V[b] - inst.movement[s, b])


def golden_section_best_response(
    cost: CostFunction, r_b: float, pi_b: float, tol: float = 1e-12
) -> float:
    """1-D golden-section search for the strictly convex case.

    Testing fallback only; must agree with the closed form to ~1e-9.
    """
    invphi = (np.sqrt(5.0) - 1.0) / 2.0

    def payoff(a: float) -> float:
        return (1.0 - pi_b) * r_b * a - pi_b * cost_eval(cost, a)

    lo, hi = 0.0, 1.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = payoff(x1), payoff(x2)
    while hi - lo > tol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = payoff(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = payoff(x2)
    mid = 0.5 * (lo + hi)
    # Compare against the endpoints: the interior optimum may be dominated.
    best = max([0.0, 1.0, mid], key=payoff)
    return best
