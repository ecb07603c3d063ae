"""Region-boundary figures from qcap scan CSV files."""

from .render import (
    BOUNDARIES_COLUMNS,
    NO_Q_REGION_NOTE,
    POINTS_COLUMNS,
    PlotSpec,
    read_rows,
    render_region,
)

__version__ = "0.1.0"

__all__ = [
    "BOUNDARIES_COLUMNS",
    "NO_Q_REGION_NOTE",
    "POINTS_COLUMNS",
    "PlotSpec",
    "read_rows",
    "render_region",
    "__version__",
]
