"""Heatmap rendering for exported strategy CSVs.

Reads the solver's strategy CSV format (header ``state,loc_1,..,loc_n``,
one row per state) and draws state-by-location heatmaps with the color
scale fixed to [0, 1].  The value semantics tag only changes the colorbar
label: "probability" for patroller mixtures and send probabilities,
"quantity" for deterministic smuggler quantities.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["HeatmapSpec", "load_strategy_csv", "render_heatmap", "render_comparison"]

SEMANTICS = ("probability", "quantity")


@dataclass(frozen=True)
class HeatmapSpec:
    input_csv: Path
    semantics: str
    title: str = ""
    output: Path | None = None

    def __post_init__(self):
        if self.semantics not in SEMANTICS:
            raise ValueError(
                f"semantics must be one of {SEMANTICS}, got {self.semantics!r}"
            )


class StrategyCsvError(ValueError):
    """Malformed strategy CSV; the message names the offending row."""


def load_strategy_csv(path: str | Path) -> np.ndarray:
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise StrategyCsvError(f"{path}: empty file") from None
        if not header or header[0] != "state":
            raise StrategyCsvError(f"{path}: header row must start with 'state'")
        n = len(header) - 1
        if n < 1 or header[1:] != [f"loc_{i}" for i in range(1, n + 1)]:
            raise StrategyCsvError(f"{path}: header row must list loc_1..loc_n")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != n + 1:
                raise StrategyCsvError(
                    f"{path}: row {lineno} has {len(row)} fields, expected {n + 1}"
                )
            try:
                values = [float(x) for x in row[1:]]
            except ValueError as exc:
                raise StrategyCsvError(f"{path}: row {lineno}: {exc}") from exc
            for v in values:
                if not 0.0 <= v <= 1.0:
                    raise StrategyCsvError(
                        f"{path}: row {lineno}: value {v} outside [0, 1]"
                    )
            rows.append(values)
    if len(rows) != n:
        raise StrategyCsvError(
            f"{path}: found {len(rows)} state rows for {n} locations"
        )
    return np.array(rows)


def _draw_panel(ax, matrix: np.ndarray, title: str):
    n = matrix.shape[0]
    image = ax.imshow(
        matrix, cmap="viridis", vmin=0.0, vmax=1.0, origin="upper", aspect="equal"
    )
    ax.set_xlabel("location")
    ax.set_ylabel("state s")
    ax.set_xticks(range(n), [str(i + 1) for i in range(n)])
    ax.set_yticks(range(n), [str(s + 1) for s in range(n)])
    if title:
        ax.set_title(title)
    return image


def _render(specs: list[HeatmapSpec], output: str | Path) -> Path:
    matrices = [load_strategy_csv(spec.input_csv) for spec in specs]
    sizes = {m.shape[0] for m in matrices}
    if len(sizes) != 1:
        raise ValueError(f"panels disagree on the number of locations: {sorted(sizes)}")
    semantics = {spec.semantics for spec in specs}
    label = "probability" if semantics == {"probability"} else "quantity" \
        if semantics == {"quantity"} else "value"
    k = len(specs)
    fig, axes = plt.subplots(1, k, figsize=(4.0 * k + 1.2, 4.0), squeeze=False)
    image = None
    for ax, spec, matrix in zip(axes[0], specs, matrices):
        image = _draw_panel(ax, matrix, spec.title)
    fig.colorbar(image, ax=list(axes[0]), label=label, fraction=0.046 / k)
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


def render_heatmap(spec: HeatmapSpec) -> Path:
    """Render one strategy CSV as a single heatmap panel."""
    if spec.output is None:
        raise ValueError("spec.output is required")
    return _render([spec], spec.output)


def render_comparison(specs: list[HeatmapSpec], output: str | Path) -> Path:
    """Render several strategy CSVs side by side on a shared color scale."""
    if not specs:
        raise ValueError("at least one panel is required")
    return _render(list(specs), output)
