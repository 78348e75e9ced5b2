"""Solver for a zero-sum single-controller stochastic patrolling game.

A single patroller moves along a border of n locations, paying movement
costs, while a smuggler at each location chooses a continuous quantity in
[0, 1] to send.  The package computes state values and (approximate) Nash
equilibrium strategies for both players, evaluates strategies (worst-case
expected reward, exact policy evaluation, Monte Carlo simulation), and
ships a CLI for running the bundled benchmark scenarios.
"""

from bordergame.game import (
    CostFunction,
    GameInstance,
    PatrollerStrategy,
    SmugglerStrategy,
    ValueFunction,
    cost_eval,
    make_movement,
    reward_patroller,
    reward_smuggler_individual,
    reward_smuggler_zero_sum,
)
from bordergame.best_response import (
    BestResponse,
    big_g,
    big_g_direct_oracle,
    g_component,
    lipschitz_bound,
    smuggler_best_response,
)
from bordergame.alloc import (
    AllocResult,
    greedy_concave,
    greedy_scaled,
    greedy_scaled_lazy,
    simplex_grid_oracle,
)
from bordergame.solver import ConvergenceError, SolveReport, bellman_sweep, value_iterate
from bordergame.equilibrium import (
    EquilibriumReport,
    MaximinProblem,
    maximin_box_linear,
    smuggler_equilibrium,
    smuggler_equilibrium_concave,
    smuggler_equilibrium_convex,
    verify_epsilon_equilibrium,
)
from bordergame.evaluation import (
    EvalResult,
    SimEstimate,
    myopic_baseline,
    policy_value,
    simulate,
    wcer,
)

__all__ = [
    "AllocResult",
    "BestResponse",
    "ConvergenceError",
    "CostFunction",
    "EquilibriumReport",
    "EvalResult",
    "GameInstance",
    "MaximinProblem",
    "PatrollerStrategy",
    "SimEstimate",
    "SmugglerStrategy",
    "SolveReport",
    "ValueFunction",
    "bellman_sweep",
    "big_g",
    "big_g_direct_oracle",
    "cost_eval",
    "g_component",
    "greedy_concave",
    "greedy_scaled",
    "greedy_scaled_lazy",
    "lipschitz_bound",
    "make_movement",
    "maximin_box_linear",
    "myopic_baseline",
    "policy_value",
    "reward_patroller",
    "reward_smuggler_individual",
    "reward_smuggler_zero_sum",
    "simplex_grid_oracle",
    "simulate",
    "smuggler_best_response",
    "smuggler_equilibrium",
    "smuggler_equilibrium_concave",
    "smuggler_equilibrium_convex",
    "value_iterate",
    "verify_epsilon_equilibrium",
    "wcer",
]
