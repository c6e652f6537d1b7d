"""Contour renderer for x,y,logabs CSV grids."""

from .io import GridFile, GridFormatError, parse_grid
from .plot import render

__version__ = "0.1.0"

__all__ = ["GridFile", "GridFormatError", "parse_grid", "render"]
