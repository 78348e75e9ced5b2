"""Command-line front end: solve, wcer, simulate, bench, export."""

from __future__ import annotations

import json
from pathlib import Path

import click
import numpy as np

from bordergame.bench import SUITES, run_bench
from bordergame.equilibrium import smuggler_equilibrium, verify_epsilon_equilibrium
from bordergame.evaluation import simulate as run_simulation
from bordergame.evaluation import wcer as compute_wcer
from bordergame.io import (
    RunConfig,
    export_strategy,
    export_values,
    load_patroller_csv,
    parse_config,
    write_atomic,
)
from bordergame.solver import value_iterate


def _load(config_path: str, **overrides) -> RunConfig:
    try:
        config = parse_config(config_path)
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    for key, value in overrides.items():
        if value is not None:
            setattr(config, key, value)
    return config


def _solve(config: RunConfig):
    return value_iterate(
        config.instance,
        epsilon=config.epsilon,
        method=config.method,
        delta=config.delta,
    )


_common = [
    click.option("--config", "config_path", required=True, type=click.Path(exists=True)),
    click.option("--epsilon", type=float, default=None, help="Value-iteration tolerance."),
    click.option("--delta", type=float, default=None, help="Simplex grid scale (K = ceil(n/delta))."),
    click.option(
        "--method",
        type=click.Choice(["auto", "concave-greedy", "scaled-greedy", "lazy-greedy"]),
        default=None,
    ),
    click.option("--out", "out_dir", type=click.Path(), default=None),
]


def _with_common(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Patrolling-game solver: equilibria, state values and evaluations."""


@main.command()
@_with_common
def solve(config_path, epsilon, delta, method, out_dir):
    """Compute state values and equilibrium strategies."""
    config = _load(config_path, epsilon=epsilon, delta=delta, method=method,
                   out=Path(out_dir) if out_dir else None)
    report = _solve(config)
    Xi = smuggler_equilibrium(config.instance, report.Pi, report.V.values)
    check = verify_epsilon_equilibrium(config.instance, report.Pi, Xi, report.V.values)
    out = Path(config.out)
    export_strategy(report.Pi, out / "patroller.csv")
    export_strategy(Xi, out / "smuggler.csv")
    export_values(report.V.values, out / "values.csv")
    summary = {
        "mean_value": report.mean_value,
        "iterations": report.iterations,
        "final_gap": report.final_gap,
        "epsilon": report.epsilon,
        "delta": report.delta,
        "method": report.method,
        "elapsed_s": report.elapsed,
        "epsilon_certified": check.epsilon_certified,
    }
    write_atomic(out / "report.json", json.dumps(summary, indent=2))
    click.echo(json.dumps(summary, indent=2))


@main.command()
@_with_common
@click.option("--strategy", "strategy_path", type=click.Path(exists=True), default=None,
              help="Evaluate this patroller CSV instead of solving first.")
def wcer(config_path, epsilon, delta, method, out_dir, strategy_path):
    """Worst-case expected reward of a patroller strategy."""
    config = _load(config_path, epsilon=epsilon, delta=delta, method=method,
                   out=Path(out_dir) if out_dir else None)
    if strategy_path:
        Pi = load_patroller_csv(strategy_path)
        if Pi.n != config.instance.n:
            raise click.ClickException("strategy size does not match the instance")
    else:
        Pi = _solve(config).Pi
    result = compute_wcer(config.instance, Pi)
    payload = {
        "wcer": result.mean_value,
        "per_state": [float(v) for v in result.per_state_value],
    }
    write_atomic(Path(config.out) / "wcer.json", json.dumps(payload, indent=2))
    click.echo(json.dumps(payload, indent=2))


@main.command()
@_with_common
@click.option("--seed", type=int, default=None)
@click.option("--horizon", type=int, default=None)
@click.option("--reps", "replications", type=int, default=None)
def simulate(config_path, epsilon, delta, method, out_dir, seed, horizon, replications):
    """Simulate the solved equilibrium and report the discounted reward."""
    config = _load(config_path, epsilon=epsilon, delta=delta, method=method,
                   seed=seed, horizon=horizon, replications=replications,
                   out=Path(out_dir) if out_dir else None)
    report = _solve(config)
    Xi = smuggler_equilibrium(config.instance, report.Pi, report.V.values)
    estimate = run_simulation(
        config.instance, report.Pi, Xi,
        horizon=config.horizon, replications=config.replications, seed=config.seed,
    )
    tail = (
        config.instance.gamma ** config.horizon
        * (float(np.sum(config.instance.rewards)) + config.instance.cost.at_one
           + float(config.instance.movement.max()))
        / (1.0 - config.instance.gamma)
    )
    payload = {
        "mean": estimate.mean,
        "std_error": estimate.std_error,
        "replications": estimate.replications,
        "horizon": estimate.horizon,
        "seed": estimate.seed,
        "truncation_bound": tail,
        "exact_mean_value": report.mean_value,
    }
    write_atomic(Path(config.out) / "simulate.json", json.dumps(payload, indent=2))
    click.echo(json.dumps(payload, indent=2))


@main.command()
@_with_common
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
def export(config_path, epsilon, delta, method, out_dir, fmt):
    """Solve and export both strategies and the value vector."""
    config = _load(config_path, epsilon=epsilon, delta=delta, method=method,
                   out=Path(out_dir) if out_dir else None)
    report = _solve(config)
    Xi = smuggler_equilibrium(config.instance, report.Pi, report.V.values)
    out = Path(config.out)
    export_strategy(report.Pi, out / f"patroller.{fmt}", format=fmt)
    export_strategy(Xi, out / f"smuggler.{fmt}", format=fmt)
    export_values(report.V.values, out / f"values.{fmt}", format=fmt)
    click.echo(f"wrote patroller.{fmt}, smuggler.{fmt}, values.{fmt} in {out}")


@main.command()
@click.option("--suite", required=True, type=click.Choice(sorted(SUITES)))
@click.option("--epsilon", type=float, default=1e-3)
@click.option("--out", "out_dir", type=click.Path(), default="bench-out")
def bench(suite, epsilon, out_dir):
    """Run a benchmark suite and write its report CSVs."""
    path = run_bench(suite, out_dir, epsilon=epsilon)
    click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
