"""Symbolic bound synthesis over non-linear arithmetic with floor and reciprocal."""

from ._core import parse_summary, saturate_stats, solve, solve_file

__all__ = ["solve", "solve_file", "parse_summary", "saturate_stats"]
__version__ = "0.1.0"
