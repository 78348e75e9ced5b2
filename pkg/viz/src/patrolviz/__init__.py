from patrolviz.heatmap import (
    HeatmapSpec,
    load_strategy_csv,
    render_comparison,
    render_heatmap,
)

__all__ = [
    "HeatmapSpec",
    "load_strategy_csv",
    "render_heatmap",
    "render_comparison",
]
