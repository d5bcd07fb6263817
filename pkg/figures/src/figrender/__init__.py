"""Display-only rendering of sortnetlab figure bundles.

This package never recomputes statistics: every plotted value comes
straight from the CSV files in a bundle directory written by
``sortnetlab figures``.
"""

from .render import BundleError, EmptyDataError, SchemaVersionError, render_figure

__version__ = "0.1.0"

__all__ = [
    "BundleError",
    "EmptyDataError",
    "SchemaVersionError",
    "render_figure",
    "__version__",
]
