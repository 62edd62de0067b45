"""Exact counts of unipotent blocks, Brauer characters and weights for E6^eps(q)."""

from .cyclopoly import CycloProduct, ValuationContext, ValuationForm, parse, render, valuation
from .symbols import LusztigSymbol, Partition

__version__ = "0.1.0"

__all__ = [
    "CycloProduct",
    "ValuationContext",
    "ValuationForm",
    "LusztigSymbol",
    "Partition",
    "parse",
    "render",
    "valuation",
]
