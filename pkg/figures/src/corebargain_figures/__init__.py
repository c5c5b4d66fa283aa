"""Figure rendering for bargaining-experiment CSV outputs."""

from .render import FIGURE_IDS, FigureSpec, SchemaError, extract_figure_data, load_series, render

__version__ = "0.1.0"

__all__ = [
    "FIGURE_IDS",
    "FigureSpec",
    "SchemaError",
    "extract_figure_data",
    "load_series",
    "render",
]
