"""Line plots from a bargaining experiment's ``aggregate.csv``.

The input schema is the harness export: columns ``t,quantity,player,mean,
variance`` with quantities ``x_<j>`` (allocation coordinates, one series
per (player, coordinate)), ``e_norm`` (projection-error norm, one series
per player), and ``D`` (network disagreement). Four figures are defined:

    alloc-mean  sampled mean of every allocation coordinate vs t
    alloc-var   sampled variance of every allocation coordinate vs t
    err-mean    sampled mean of every player's error norm vs t
    err-var     sampled variance of every player's error norm vs t

Rendering is read-only and deterministic: identical input bytes produce
identical plotted data arrays (image bytes may vary by matplotlib
version).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

FIGURE_IDS = ("alloc-mean", "alloc-var", "err-mean", "err-var")

_REQUIRED_COLUMNS = ("t", "quantity", "player", "mean", "variance")

_AXIS_LABELS = {
    "alloc-mean": "sampled mean of allocation coordinate",
    "alloc-var": "sampled variance of allocation coordinate",
    "err-mean": "sampled mean of projection-error norm",
    "err-var": "sampled variance of projection-error norm",
}


class SchemaError(ValueError):
    """aggregate.csv is missing a column or holds an unparsable cell."""

    def __init__(self, message: str, column: str):
        super().__init__(message)
        self.column = column


@dataclass(frozen=True)
class FigureSpec:
    """What to render: which directory, which figure, where to write it."""

    input_dir: str
    figure_id: str
    output_path: str

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(
                f"figure id must be one of {', '.join(FIGURE_IDS)}; "
                f"got {self.figure_id!r}"
            )


def load_series(aggregate_csv) -> dict:
    """Parse aggregate.csv into {(quantity, player): (t, mean, variance)}
    with rows sorted by t. Raises SchemaError naming the offending column
    on malformed input."""
    path = Path(aggregate_csv)
    if not path.exists():
        raise FileNotFoundError(f"no aggregate file at {path}")
    grouped: dict = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in _REQUIRED_COLUMNS:
            if col not in header:
                raise SchemaError(f"aggregate.csv lacks column {col!r}", col)
        for row in reader:
            try:
                t = int(row["t"])
            except (TypeError, ValueError):
                raise SchemaError(f"bad step value {row['t']!r}", "t") from None
            try:
                player = int(row["player"])
            except (TypeError, ValueError):
                raise SchemaError(f"bad player value {row['player']!r}", "player") from None
            vals = []
            for col in ("mean", "variance"):
                try:
                    vals.append(float(row[col]))
                except (TypeError, ValueError):
                    raise SchemaError(f"bad {col} value {row[col]!r}", col) from None
            grouped.setdefault((row["quantity"], player), []).append((t, *vals))
    out = {}
    for key, rows in grouped.items():
        rows.sort()
        t, mean, var = (np.array(col) for col in zip(*rows))
        out[key] = (t, mean, var)
    return out


def extract_figure_data(figure_id: str, series: dict) -> dict:
    """Pick and label the curves of one figure: {label: (t, values)},
    labels sorted for a deterministic legend."""
    use_var = figure_id.endswith("-var")
    curves = {}
    for (quantity, player), (t, mean, var) in series.items():
        values = var if use_var else mean
        if figure_id.startswith("alloc") and quantity.startswith("x_"):
            coord = quantity[2:]
            curves[f"player {player}: x_{coord}"] = (t, values)
        elif figure_id.startswith("err") and quantity == "e_norm":
            curves[f"player {player}"] = (t, values)
    return dict(sorted(curves.items()))


def render(spec: FigureSpec):
    """Render one figure to spec.output_path; returns (path, curves) where
    curves is exactly the plotted data, for downstream verification."""
    series = load_series(Path(spec.input_dir) / "aggregate.csv")
    curves = extract_figure_data(spec.figure_id, series)
    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.subplots()
    for label, (t, values) in curves.items():
        ax.plot(t, values, label=label, linewidth=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel(_AXIS_LABELS[spec.figure_id])
    if curves:
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    out = Path(spec.output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=150)
    return out, curves
