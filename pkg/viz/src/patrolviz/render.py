"""Script entry point: render a strategy CSV as a heatmap PNG."""

from __future__ import annotations

from pathlib import Path

import click

from patrolviz.heatmap import SEMANTICS, HeatmapSpec, StrategyCsvError, render_heatmap


@click.command()
@click.option("--input", "input_csv", required=True, type=click.Path(exists=True))
@click.option("--semantics", required=True, type=click.Choice(SEMANTICS))
@click.option("--out", "output", required=True, type=click.Path())
@click.option("--title", default="")
def main(input_csv, semantics, output, title):
    """Render a strategy CSV (state rows, location columns) as a heatmap."""
    spec = HeatmapSpec(
        input_csv=Path(input_csv), semantics=semantics, title=title, output=Path(output)
    )
    try:
        path = render_heatmap(spec)
    except (StrategyCsvError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
