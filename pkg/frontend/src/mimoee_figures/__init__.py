"""Render mimoee CSV outputs into publication-style figures.

This package is presentation-only: it reads the versioned CSV files written
by the ``mimoee`` CLI and never recomputes any of the science.  Rendering is
deterministic, so identical CSV inputs produce byte-identical images.
"""
from mimoee_figures.io import SchemaError, read_table
from mimoee_figures.render import FigureSpec, render_curves, render_surface

__all__ = [
    "FigureSpec",
    "SchemaError",
    "read_table",
    "render_curves",
    "render_surface",
]

__version__ = "0.1.0"
