"""Benchmark suites: solver timings, WCER sweeps over the grid scale, and
the cross-model comparison table."""

from __future__ import annotations

import csv
import io as _io
import time
from pathlib import Path

from bordergame.equilibrium import smuggler_equilibrium
from bordergame.evaluation import myopic_baseline, wcer
from bordergame.instances import (
    linear_border_convex_cost,
    linear_border_linear_cost,
    perimeter_border,
)
from bordergame.io import export_strategy, export_values, write_atomic
from bordergame.solver import value_iterate

__all__ = ["run_bench", "SUITES"]

_SIZES = (6, 9, 12, 15)
_DELTAS = (1.0, 0.2, 0.1, 0.04)


def _csv_string(header, rows) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def bench_example1(out_dir: Path, epsilon: float = 1e-3) -> Path:
    """Solve times of the three inner maximizers on the linear-cost line
    border, for increasing n (delta = 0.2 for the scaled methods)."""
    rows = []
    for n in _SIZES:
        inst = linear_border_linear_cost(n)
        row = [n]
        for method in ("scaled-greedy", "lazy-greedy", "concave-greedy"):
            start = time.perf_counter()
            value_iterate(inst, epsilon=epsilon, method=method, delta=0.2)
            row.append(f"{time.perf_counter() - start:.4f}")
        rows.append(row)
    path = out_dir / "example1_timings.csv"
    write_atomic(path, _csv_string(["n", "scaled_greedy_s", "lazy_greedy_s", "concave_greedy_s"], rows))
    return path


def bench_example2(out_dir: Path, epsilon: float = 1e-3) -> Path:
    """WCER and solve times on the convex-cost border for every (n, delta)."""
    rows = []
    for n in _SIZES:
        inst = linear_border_convex_cost(n)
        for delta in _DELTAS:
            start = time.perf_counter()
            report = value_iterate(inst, epsilon=epsilon, method="scaled-greedy", delta=delta)
            t_scaled = time.perf_counter() - start
            start = time.perf_counter()
            value_iterate(inst, epsilon=epsilon, method="lazy-greedy", delta=delta)
            t_lazy = time.perf_counter() - start
            value = wcer(inst, report.Pi).mean_value
            rows.append([n, delta, f"{value:.6f}", f"{t_scaled:.4f}", f"{t_lazy:.4f}"])
    path = out_dir / "example2_wcer.csv"
    write_atomic(path, _csv_string(["n", "delta", "wcer", "scaled_greedy_s", "lazy_greedy_s"], rows))
    return path


def bench_example3(out_dir: Path, epsilon: float = 1e-3) -> Path:
    """Solve the perimeter scenario and export strategies and values."""
    inst = perimeter_border()
    report = value_iterate(inst, epsilon=epsilon, method="concave-greedy")
    Xi = smuggler_equilibrium(inst, report.Pi, report.V.values)
    export_strategy(report.Pi, out_dir / "example3_patroller.csv")
    export_strategy(Xi, out_dir / "example3_smuggler.csv")
    export_values(report.V.values, out_dir / "example3_values.csv")
    value = wcer(inst, report.Pi).mean_value
    path = out_dir / "example3_summary.csv"
    write_atomic(
        path,
        _csv_string(
            ["wcer", "iterations", "final_gap"],
            [[f"{value:.6f}", report.iterations, f"{report.final_gap:.3e}"]],
        ),
    )
    return path


def bench_table5(out_dir: Path, epsilon: float = 1e-3, convex_delta: float = 0.04) -> Path:
    """Cross-model WCER comparison: two myopic baselines and the full
    stochastic-game strategy, per scenario (n = 6)."""
    scenarios = [
        ("example1", linear_border_linear_cost(6), "auto", 0.2),
        ("example2", linear_border_convex_cost(6), "scaled-greedy", convex_delta),
        ("example3", perimeter_border(), "auto", 0.2),
    ]
    columns = {}
    for name, inst, method, delta in scenarios:
        blind = myopic_baseline(inst, include_movement=False, method=method, delta=delta)
        aware = myopic_baseline(inst, include_movement=True, method=method, delta=delta)
        full = value_iterate(inst, epsilon=epsilon, method=method, delta=delta).Pi
        columns[name] = [
            wcer(inst, blind).mean_value,
            wcer(inst, aware).mean_value,
            wcer(inst, full).mean_value,
        ]
    models = ["normal-form-no-movement", "normal-form-with-movement", "stochastic-game"]
    rows = [
        [models[k]] + [f"{columns[name][k]:.6f}" for name, *_ in scenarios]
        for k in range(3)
    ]
    path = out_dir / "table5_wcer.csv"
    write_atomic(path, _csv_string(["model", "example1", "example2", "example3"], rows))
    return path


SUITES = {
    "example1": bench_example1,
    "example2": bench_example2,
    "example3": bench_example3,
    "table5": bench_table5,
}


def run_bench(suite: str, out_dir: str | Path, epsilon: float = 1e-3) -> Path:
    if suite not in SUITES:
        raise ValueError(f"unknown bench suite {suite!r}; choose from {sorted(SUITES)}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return SUITES[suite](out_dir, epsilon=epsilon)
