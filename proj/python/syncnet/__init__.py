"""Synchronizability analysis and rank-1 inner coupling design."""

from fractions import Fraction

from . import _core
from ._core import *  # noqa: F401,F403
from ._core import SyncnetError


def average_distance(graph):
    """Mean shortest-path length as an exact Fraction."""
    num, den = _core.average_distance(graph)
    return Fraction(num, den)


__all__ = [name for name in dir(_core) if not name.startswith("_")] + ["average_distance", "SyncnetError"]
