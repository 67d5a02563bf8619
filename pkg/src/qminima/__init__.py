"""Exact q-expansions of level-two modular forms, gap bounds and quadratic minima."""

from .forms import WeightRecord
from .qseries import LaurentSeries

__all__ = ["LaurentSeries", "WeightRecord"]
__version__ = "0.1.0"
