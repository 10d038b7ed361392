"""CSV-to-figure rendering for catops datasets."""

from .render import FigureSpec, render, render_all
from .schema import SchemaError

__all__ = ["FigureSpec", "render", "render_all", "SchemaError"]
