"""Maximization of the separable objective G over the probability simplex.

Three routes: a scaled greedy that places K unit increments of mass 1/K
(exact for the discretized problem), a lazy-greedy variant with a priority
queue whose output is required to be identical, and a concave fast path
that jumps straight between the thresholds (exact for linear costs, and
for any concave cost via the C(1)-linearization).  A brute-force simplex
grid enumerator serves as the testing oracle.
"""

from __future__ import annotations

import functools
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from bordergame.game import GameInstance

__all__ = [
    "AllocResult",
    "greedy_scaled",
    "greedy_scaled_lazy",
    "greedy_concave",
    "simplex_grid_oracle",
]


@dataclass(frozen=True)
class AllocResult:
    pi: np.ndarray
    objective: float
    steps: int
    method: str


class SeparableObjective:
    """Closed-form evaluator for the components g_b(x) at fixed (s, V).

    Precomputes d_b = gamma V(b) - m_{s,b}; for concave costs each g_b is
    piecewise linear with a single breakpoint at the threshold
    r_b / (C(1) + r_b).
    """

    def __init__(self, inst: GameInstance, s: int, V):
        V = np.asarray(V, dtype=float)
        self.inst = inst
        self.n = inst.n
        self.r = [float(x) for x in inst.rewards]
        self.d = [float(inst.gamma * V[b] - inst.movement[s, b]) for b in range(inst.n)]
        cost = inst.cost
        self.concave = cost.is_concave
        self.c1 = cost.at_one
        self.c = cost.c
        self.p = cost.p

    def g(self, b: int, x: float) -> float:
        r, d = self.r[b], self.d[b]
        if self.concave:
            return -max(0.0, (1.0 - x) * r - x * self.c1) + x * d
        if x <= 0.0:
            inner = (1.0 - x) * r - x * self.c1
        elif x >= 1.0:
            inner = 0.0
        else:
            a = ((1.0 - x) * r / (x * self.p * self.c)) ** (1.0 / (self.p - 1.0))
            if a > 1.0:
                a = 1.0
            inner = (1.0 - x) * r * a - x * self.c * a ** self.p
        return -inner + x * d

    def total(self, pi) -> float:
        return sum(self.g(b, float(pi[b])) for b in range(self.n))


def _argmax_lowest(values) -> int:
    best, best_b = values[0], 0
    for b in range(1, len(values)):
        if values[b] > best:
            best, best_b = values[b], b
    return best_b


def greedy_scaled(inst: GameInstance, s: int, V, K: int) -> AllocResult:
    """K unit increments of 1/K, each to the location with the largest
    marginal gain; ties broken to the lowest index."""
    if K < 1:
        raise ValueError("K must be a positive integer")
    obj = SeparableObjective(inst, s, V)
    n = inst.n
    counts = [0] * n

    def gain(b: int, count: int) -> float:
        return obj.g(b, (count + 1) / K) - obj.g(b, count / K)

    gains = [gain(b, 0) for b in range(n)]
    prev = math.inf
    for _ in range(K):
        j = _argmax_lowest(gains)
        assert gains[j] <= prev + 1e-9, "marginal gains must be nonincreasing"
        prev = gains[j]
        counts[j] += 1
        gains[j] = gain(j, counts[j])
    pi = np.array([c / K for c in counts])
    return AllocResult(pi=pi, objective=obj.total(pi), steps=K, method="scaled-greedy")


def greedy_scaled_lazy(inst: GameInstance, s: int, V, K: int) -> AllocResult:
    """Priority-queue variant of greedy_scaled with identical output.

    Valid because each g_b has nonincreasing increments: a stale cached
    gain is an upper bound, so an entry that is still fresh when popped is
    the true maximum.  Heap order (-gain, b) reproduces the lowest-index
    tie rule.
    """
    if K < 1:
        raise ValueError("K must be a positive integer")
    obj = SeparableObjective(inst, s, V)
    n = inst.n
    counts = [0] * n

    def gain(b: int, count: int) -> float:
        return obj.g(b, (count + 1) / K) - obj.g(b, count / K)

    heap = [(-gain(b, 0), b, 0) for b in range(n)]
    heapq.heapify(heap)
    for _ in range(K):
        while True:
            neg, b, count = heap[0]
            if count == counts[b]:
                break
            heapq.heapreplace(heap, (-gain(b, counts[b]), b, counts[b]))
        counts[b] += 1
        heapq.heapreplace(heap, (-gain(b, counts[b]), b, counts[b]))
    pi = np.array([c / K for c in counts])
    return AllocResult(pi=pi, objective=obj.total(pi), steps=K, method="lazy-greedy")


@functools.lru_cache(maxsize=64)
def _cached_thresholds(rewards: tuple, c1: float):
    """Exact thresholds r_b / (C(1) + r_b) over a common denominator.

    Returns (D, numerators, floats): threshold b is numerators[b] / D
    exactly, so positions can be tracked in integer arithmetic.  Depends
    only on the rewards and C(1), hence shared across the per-state calls
    of a solve."""
    frac_c1 = Fraction(c1)
    exact = [Fraction(r) / (frac_c1 + Fraction(r)) for r in rewards]
    D = math.lcm(*(t.denominator for t in exact)) if exact else 1
    nums = tuple(t.numerator * (D // t.denominator) for t in exact)
    return D, nums, tuple(float(t) for t in exact)


def greedy_concave(inst: GameInstance, s: int, V) -> AllocResult:
    """Concave fast path: at most n+1 slope-guided jumps between 0, the
    threshold, and 1 per location; exact for linear costs.

    Positions are kept as exact rationals so outputs like multiples of
    r_b/(r_b + C(1)) carry no accumulated float error.
    """
    if not inst.cost.is_concave:
        raise ValueError("greedy_concave requires a concave cost function")
    obj = SeparableObjective(inst, s, V)
    n = inst.n
    D, t_num, tf = _cached_thresholds(tuple(obj.r), inst.cost.at_one)
    # Each g_b is two linear pieces, so the segment slopes are constants:
    # below the threshold and above it.
    slope_lo = [(obj.g(b, tf[b]) - obj.g(b, 0.0)) / tf[b] for b in range(n)]
    slope_hi = [(obj.g(b, 1.0) - obj.g(b, tf[b])) / (1.0 - tf[b]) for b in range(n)]
    # Positions as integer multiples of 1/D.
    pi = [0] * n
    total = 0
    steps = 0
    while total < D:
        slopes = [slope_lo[b] if pi[b] == 0 else slope_hi[b] for b in range(n)]
        j = _argmax_lowest(slopes)
        x = t_num[j] if pi[j] == 0 else D - t_num[j]
        if total + x > D:
            x = D - total
        pi[j] += x
        total += x
        steps += 1
    # Integer division rounds correctly, matching float(Fraction(x, D)).
    out = np.array([x / D for x in pi])
    return AllocResult(pi=out, objective=obj.total(out), steps=steps, method="concave-greedy")


def _composition_count(K: int, n: int) -> int:
    return math.comb(K + n - 1, n - 1)


def simplex_grid_oracle(
    inst: GameInstance, s: int, V, step: float, max_points: int = 5_000_000
) -> AllocResult:
    """Enumerate every distribution with coordinates in multiples of
    ``step`` and return the maximizer of G; ties to the lexicographically
    smallest pi.  Testing oracle only."""
    K = round(1.0 / step)
    if abs(K * step - 1.0) > 1e-9 or K < 1:
        raise ValueError(f"step {step} must divide 1")
    n = inst.n
    count = _composition_count(K, n)
    if count > max_points:
        raise ValueError(
            f"enumeration of {count} grid points over n={n}, step={step} refused"
        )
    obj = SeparableObjective(inst, s, V)
    table = np.array([[obj.g(b, k / K) for k in range(K + 1)] for b in range(n)])

    if n == 1:
        best_counts, best_val = (K,), table[0, K]
    elif n == 2:
        k = np.arange(K + 1)
        vals = table[0, k] + table[1, K - k]
        j = int(np.argmax(vals))
        best_counts, best_val = (j, K - j), float(vals[j])
    elif n == 3:
        i = np.arange(K + 1)
        ii, jj = np.meshgrid(i, i, indexing="ij")
        mask = ii + jj <= K
        vals = np.where(
            mask, table[0, ii] + table[1, jj] + table[2, (K - ii - jj) % (K + 1)], -np.inf
        )
        flat = int(np.argmax(vals))
        bi, bj = divmod(flat, K + 1)
        best_counts, best_val = (bi, bj, K - bi - bj), float(vals[bi, bj])
    else:
        best_counts, best_val = None, -math.inf

        def recurse(prefix, remaining, acc):
            nonlocal best_counts, best_val
            b = len(prefix)
            if b == n - 1:
                val = acc + table[b, remaining]
                if val > best_val:
                    best_val = val
                    best_counts = tuple(prefix) + (remaining,)
                return
            for k in range(remaining + 1):
                recurse(prefix + [k], remaining - k, acc + table[b, k])

        recurse([], K, 0.0)

    pi = np.array([c / K for c in best_counts])
    return AllocResult(pi=pi, objective=float(best_val), steps=count, method="grid-oracle")
