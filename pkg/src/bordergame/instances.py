"""Bundled benchmark scenarios used by the bench suites."""

from __future__ import annotations

import numpy as np

from bordergame.game import CostFunction, GameInstance, make_movement

__all__ = ["linear_border_linear_cost", "linear_border_convex_cost", "perimeter_border"]


def linear_border_linear_cost(n: int = 6) -> GameInstance:
    """Line of n locations, unit rewards, C(a) = 4a, m_{i,j} = |i-j|^2."""
    return GameInstance(
        n=n,
        rewards=np.ones(n),
        movement=make_movement("linear-squared", n),
        cost=CostFunction("linear", 4.0),
        gamma=0.9,
    )


def linear_border_convex_cost(n: int = 6) -> GameInstance:
    """Same line, but with the strictly convex cost C(a) = 4a^2."""
    return GameInstance(
        n=n,
        rewards=np.ones(n),
        movement=make_movement("linear-squared", n),
        cost=CostFunction("power", 4.0, 2.0),
        gamma=0.9,
    )


def perimeter_border() -> GameInstance:
    """Six locations on a cycle with location-dependent rewards.

    Movement costs are the squared shortest-arc distance (the cost between
    adjacent locations, including the 1-6 wraparound, is one unit).
    """
    return GameInstance(
        n=6,
        rewards=np.array([3.0, 2.0, 1.0, 1.0, 2.0, 3.0]),
        movement=make_movement("perimeter", 6) ** 2,
        cost=CostFunction("linear", 4.0),
        gamma=0.9,
    )
