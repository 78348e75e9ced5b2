import numpy as np
import pytest

from bordergame.game import CostFunction, GameInstance, make_movement
from bordergame.instances import linear_border_linear_cost


@pytest.fixture
def example1():
    return linear_border_linear_cost(6)


@pytest.fixture
def single_loc():
    return GameInstance(
        n=1,
        rewards=np.array([1.0]),
        movement=np.zeros((1, 1)),
        cost=CostFunction("linear", 4.0),
        gamma=0.9,
    )


def random_instance(rng, n=None, family=None, max_n=4, gamma=None):
    """Random valid instance for property tests."""
    if n is None:
        n = int(rng.integers(1, max_n + 1))
    if family is None:
        family = rng.choice(["linear", "power-concave", "power-convex"])
    if family == "linear":
        cost = CostFunction("linear", float(rng.uniform(0.5, 6.0)))
    elif family == "power-concave":
        cost = CostFunction("power", float(rng.uniform(0.5, 6.0)), float(rng.uniform(0.2, 0.9)))
    else:
        cost = CostFunction("power", float(rng.uniform(0.5, 6.0)), float(rng.uniform(1.2, 3.0)))
    if gamma is None:
        gamma = float(rng.uniform(0.0, 0.95))
    return GameInstance(
        n=n,
        rewards=rng.uniform(0.3, 4.0, size=n),
        movement=rng.uniform(0.0, 5.0, size=(n, n)),
        cost=cost,
        gamma=gamma,
    )


def random_values(rng, inst):
    scale = float(np.sum(inst.rewards)) + inst.cost.at_one
    return rng.uniform(-scale / (1 - inst.gamma) if inst.gamma < 1 else -scale, 0.0, size=inst.n)
