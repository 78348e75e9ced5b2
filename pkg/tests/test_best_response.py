import numpy as np
import pytest

from bordergame.best_response import (
    big_g,
    big_g_direct_oracle,
    concave_threshold,
    g_component,
    golden_section_best_response,
    inner_max,
    lipschitz_bound,
    smuggler_best_response,
)
from bordergame.game import CostFunction, cost_eval
from conftest import random_instance, random_values


LINEAR4 = CostFunction("linear", 4.0)
POWER42 = CostFunction("power", 4.0, 2.0)
POWER_CONCAVE = CostFunction("power", 4.0, 0.5)


class TestConcaveThreshold:
    def test_example1_threshold(self):
        # r=1, C(1)=4 gives tau = 1/5.
        assert concave_threshold(LINEAR4, 1.0) == 0.2

    def test_threshold_monotone_in_reward(self):
        taus = [concave_threshold(LINEAR4, r) for r in (0.5, 1.0, 2.0, 4.0)]
        assert all(x < y for x, y in zip(taus, taus[1:]))


class TestBestResponseConcave:
    def test_below_threshold_sends_all(self):
        br = smuggler_best_response(LINEAR4, 1.0, 0.1)
        assert br.quantity == 1.0 and not br.is_tie

    def test_above_threshold_sends_nothing(self):
        br = smuggler_best_response(LINEAR4, 1.0, 0.3)
        assert br.quantity == 0.0 and not br.is_tie

    def test_tie_at_threshold(self):
        br = smuggler_best_response(LINEAR4, 1.0, 0.2)
        assert br.is_tie
        assert br.quantity == 1.0
        assert br.tie_set == "whole-interval"

    def test_concave_power_tie_is_endpoints_only(self):
        tau = concave_threshold(POWER_CONCAVE, 1.0)
        br = smuggler_best_response(POWER_CONCAVE, 1.0, tau)
        assert br.is_tie and br.tie_set == "both-endpoints"

    def test_concave_power_acts_like_linear(self):
        # Only C(1) matters for a concave cost, so Power(4, 0.5) matches Linear(4).
        for pi in (0.0, 0.1, 0.2, 0.5, 1.0):
            a = smuggler_best_response(LINEAR4, 1.0, pi).quantity
            b = smuggler_best_response(POWER_CONCAVE, 1.0, pi).quantity
            assert a == b


class TestBestResponseConvex:
    def test_interior_formula(self):
        # a* = ((1-pi) r / (pi p c))^(1/(p-1)) for Power(c, p).
        br = smuggler_best_response(POWER42, 1.0, 0.5)
        assert br.quantity == pytest.approx((0.5 * 1.0) / (0.5 * 2 * 4), abs=1e-12)

    def test_clamped_at_one_for_tiny_pi(self):
        assert smuggler_best_response(POWER42, 4.0, 0.0).quantity == 1.0
        assert smuggler_best_response(POWER42, 8.0, 1e-3).quantity == 1.0

    def test_unique_never_tie(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            r = float(rng.uniform(0.1, 5.0))
            pi = float(rng.uniform(0, 1))
            assert not smuggler_best_response(POWER42, r, pi).is_tie

    def test_matches_golden_section(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            cost = CostFunction("power", float(rng.uniform(0.5, 6.0)),
                                float(rng.uniform(1.2, 4.0)))
            r = float(rng.uniform(0.1, 5.0))
            pi = float(rng.uniform(0.01, 1.0))
            exact = smuggler_best_response(cost, r, pi).quantity
            numeric = golden_section_best_response(cost, r, pi)
            assert exact == pytest.approx(numeric, abs=1e-7)

    def test_quantity_decreasing_in_pi(self):
        quantities = [smuggler_best_response(POWER42, 2.0, pi).quantity
                      for pi in np.linspace(0, 1, 21)]
        assert all(x >= y for x, y in zip(quantities, quantities[1:]))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            smuggler_best_response(LINEAR4, 1.0, -0.1)
        with pytest.raises(ValueError):
            smuggler_best_response(LINEAR4, 0.0, 0.5)


class TestInnerMax:
    def test_concave_closed_form(self):
        # max(0, (1-x) r - x C(1)) on [0, 1].
        assert inner_max(LINEAR4, 1.0, 0.1) == pytest.approx(0.9 - 0.4, abs=1e-15)
        assert inner_max(LINEAR4, 1.0, 0.5) == 0.0

    def test_extended_domain(self):
        # Maximizer is a=1 below zero and a=0 above one.
        assert inner_max(LINEAR4, 1.0, -0.5) == pytest.approx(1.5 + 0.5 * 4.0, abs=1e-12)
        assert inner_max(LINEAR4, 1.0, 1.5) == 0.0
        assert inner_max(POWER42, 1.0, -0.25) == pytest.approx(1.25 + 0.25 * 4.0, abs=1e-12)
        assert inner_max(POWER42, 1.0, 2.0) == 0.0

    def test_matches_grid(self):
        rng = np.random.default_rng(5)
        grid = np.linspace(0, 1, 200001)
        for _ in range(20):
            cost = (LINEAR4, POWER42, POWER_CONCAVE)[int(rng.integers(3))]
            r = float(rng.uniform(0.1, 5.0))
            x = float(rng.uniform(0, 1))
            cost_vals = np.array([cost_eval(cost, a) for a in (0.0, 1.0)])
            if cost.family == "linear":
                curve = cost.c * grid
            else:
                curve = cost.c * grid ** cost.p
            brute = float(np.max((1 - x) * r * grid - x * curve))
            assert inner_max(cost, r, x) >= brute - 1e-12
            assert inner_max(cost, r, x) <= brute + 1e-4
            assert cost_vals[0] == 0.0

    def test_never_negative_inside_box(self):
        # a=0 always yields payoff zero, so the max is nonnegative on [0, 1].
        rng = np.random.default_rng(6)
        for _ in range(100):
            cost = (LINEAR4, POWER42, POWER_CONCAVE)[int(rng.integers(3))]
            assert inner_max(cost, float(rng.uniform(0.1, 5)), float(rng.uniform(0, 1))) >= 0.0


class TestBigG:
    def test_component_sum(self, example1):
        rng = np.random.default_rng(6)
        V = random_values(rng, example1)
        pi = rng.dirichlet(np.ones(6))
        total = big_g(example1, pi, 2, V)
        parts = sum(g_component(example1, b, float(pi[b]), 2, V) for b in range(6))
        assert total == pytest.approx(parts, abs=1e-12)

    def test_matches_direct_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            inst = random_instance(rng)
            V = random_values(rng, inst)
            pi = rng.dirichlet(np.ones(inst.n))
            s = int(rng.integers(inst.n))
            direct = big_g_direct_oracle(inst, pi, s, V, grid_resolution=20000)
            assert big_g(inst, pi, s, V) == pytest.approx(direct, abs=1e-6)

    def test_rejects_non_distribution(self, example1):
        V = np.zeros(6)
        with pytest.raises(ValueError):
            big_g(example1, np.full(6, 0.5), 0, V)
        with pytest.raises(ValueError):
            big_g(example1, np.ones(3) / 3, 0, V)

    def test_concavity_along_segments(self):
        # Each g_b is concave, so G is concave along segments in the simplex.
        rng = np.random.default_rng(8)
        for _ in range(30):
            inst = random_instance(rng)
            V = random_values(rng, inst)
            s = int(rng.integers(inst.n))
            x = rng.dirichlet(np.ones(inst.n))
            y = rng.dirichlet(np.ones(inst.n))
            t = float(rng.uniform(0, 1))
            mid = big_g(inst, t * x + (1 - t) * y, s, V)
            chord = t * big_g(inst, x, s, V) + (1 - t) * big_g(inst, y, s, V)
            assert mid >= chord - 1e-9


class TestLipschitz:
    def test_bound_dominates_sampled_slopes(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            inst = random_instance(rng)
            V = random_values(rng, inst)
            s = int(rng.integers(inst.n))
            b = int(rng.integers(inst.n))
            L = lipschitz_bound(inst, b, s, V)
            xs = rng.uniform(0, 1, size=(40, 2))
            for x1, x2 in xs:
                if x1 == x2:
                    continue
                g1 = g_component(inst, b, float(x1), s, V)
                g2 = g_component(inst, b, float(x2), s, V)
                assert abs(g1 - g2) <= L * abs(x1 - x2) + 1e-9
