"""Strategy/value export and run configuration parsing.

CSV exports use 1-based location labels; smuggler cells carry the
probability of sending (concave costs) or the deterministic quantity
(strictly convex costs).  All writes are atomic (temp file + rename).
"""

from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from bordergame.game import (
    GameInstance,
    PatrollerStrategy,
    SchemaError,
    SmugglerStrategy,
    instance_from_dict,
    instance_to_dict,
)

__all__ = [
    "RunConfig",
    "parse_config",
    "write_atomic",
    "export_strategy",
    "export_values",
    "load_patroller_csv",
]


@dataclass
class RunConfig:
    instance: GameInstance
    epsilon: float = 1e-3
    delta: float = 0.2
    method: str = "auto"
    seed: int = 0
    horizon: int = 200
    replications: int = 10000
    out: Path = field(default_factory=lambda: Path("."))

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not self.delta > 0:
            raise ValueError("delta must be positive")


def parse_config(path: str | Path) -> RunConfig:
    """Parse a JSON run configuration.

    Fields: "instance" (inline object) or "instance_path"; optional
    "epsilon", "delta", "method", "seed", "horizon", "replications",
    "out".
    """
    path = Path(path)
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise SchemaError(".", "configuration must be an object")
    if "instance" in data:
        inst = instance_from_dict(data["instance"], path="instance")
    elif "instance_path" in data:
        ipath = Path(data["instance_path"])
        if not ipath.is_absolute():
            ipath = path.parent / ipath
        if not ipath.exists():
            raise SchemaError("instance_path", f"file {ipath} does not exist")
        with open(ipath) as fh:
            inst = instance_from_dict(json.load(fh))
    else:
        raise SchemaError("instance", "missing field (or instance_path)")
    kwargs = {}
    for key, conv in (
        ("epsilon", float),
        ("delta", float),
        ("method", str),
        ("seed", int),
        ("horizon", int),
        ("replications", int),
    ):
        if key in data:
            try:
                kwargs[key] = conv(data[key])
            except (TypeError, ValueError) as exc:
                raise SchemaError(key, str(exc)) from exc
    if "out" in data:
        kwargs["out"] = Path(data["out"])
    try:
        return RunConfig(instance=inst, **kwargs)
    except ValueError as exc:
        raise SchemaError(".", str(exc)) from exc


def config_to_dict(config: RunConfig) -> dict:
    return {
        "instance": instance_to_dict(config.instance),
        "epsilon": config.epsilon,
        "delta": config.delta,
        "method": config.method,
        "seed": config.seed,
        "horizon": config.horizon,
        "replications": config.replications,
        "out": str(config.out),
    }


def write_atomic(path: str | Path, content: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _strategy_matrix(strategy) -> np.ndarray:
    if isinstance(strategy, PatrollerStrategy):
        return strategy.probs
    if isinstance(strategy, SmugglerStrategy):
        n = strategy.n
        rows = np.empty((n, n))
        for s in range(n):
            for i in range(n):
                pts = strategy.support[s][i]
                if len(pts) == 1:
                    # Deterministic quantity (convex case, or a pure cell).
                    rows[s, i] = pts[0][0]
                else:
                    # Bernoulli over {0, 1}: report the send probability.
                    rows[s, i] = strategy.mean_quantity(s, i)
        return rows
    raise TypeError(f"cannot export {type(strategy).__name__}")


def export_strategy(strategy, path: str | Path, format: str = "csv") -> None:
    """Write a strategy as CSV (header state,loc_1,..,loc_n) or JSON."""
    matrix = _strategy_matrix(strategy)
    n = matrix.shape[0]
    if format == "csv":
        buf = _io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["state"] + [f"loc_{i + 1}" for i in range(n)])
        for s in range(n):
            writer.writerow([s + 1] + [repr(float(x)) for x in matrix[s]])
        write_atomic(path, buf.getvalue())
    elif format == "json":
        if isinstance(strategy, PatrollerStrategy):
            payload = {"kind": "patroller", "probs": [[float(x) for x in r] for r in matrix]}
        else:
            payload = {
                "kind": "smuggler",
                "support": [
                    [[[q, p] for q, p in cell] for cell in row] for row in strategy.support
                ],
            }
        write_atomic(path, json.dumps(payload, indent=2))
    else:
        raise ValueError(f"unknown export format {format!r}")


def strategy_from_json(path: str | Path):
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("kind") == "patroller":
        return PatrollerStrategy(np.array(payload["probs"]))
    if payload.get("kind") == "smuggler":
        return SmugglerStrategy(
            tuple(
                tuple(tuple((q, p) for q, p in cell) for cell in row)
                for row in payload["support"]
            )
        )
    raise ValueError("unrecognized strategy JSON")


def load_patroller_csv(path: str | Path) -> PatrollerStrategy:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if not header or header[0] != "state":
            raise ValueError("expected a strategy CSV with a 'state' header")
        rows = [[float(x) for x in row[1:]] for row in reader]
    return PatrollerStrategy(np.array(rows))


def export_values(values, path: str | Path, format: str = "csv") -> None:
    values = np.asarray(values, dtype=float)
    if format == "csv":
        buf = _io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["state", "value"])
        for s, v in enumerate(values):
            writer.writerow([s + 1, repr(float(v))])
        write_atomic(path, buf.getvalue())
    elif format == "json":
        write_atomic(path, json.dumps({"values": [float(v) for v in values]}, indent=2))
    else:
        raise ValueError(f"unknown export format {format!r}")
