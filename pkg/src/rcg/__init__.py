"""Exact total-positivity regions for simply-laced Chevalley groups."""

from .chevalley import ChevalleyAlgebra, build_algebra
from .context import Context, resolve
from .quiver import Quiver, leftmost_word, linear_quiver, parse_quiver
from .rootsys import build_root_system, root_system

__version__ = "0.1.0"

__all__ = [
    "ChevalleyAlgebra", "build_algebra", "Context", "resolve", "Quiver", "leftmost_word",
    "linear_quiver", "parse_quiver", "build_root_system", "root_system", "TotalPositivityRegion",
    "PositiveParametrization",
]


def __getattr__(name):
    # the estimators pull in scikit-learn; load them on first use
    if name in ("TotalPositivityRegion", "PositiveParametrization"):
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(name)
