"""Dual rendering of numeric values for reports: decimal + exact string."""

from __future__ import annotations

from fractions import Fraction

from .algebraic import SqrtSum
from .weights import EXACT


def decimal_str(value) -> str:
    """Shortest round-trip decimal rendering (deterministic)."""
    return repr(float(value))


def exact_str(value) -> str:
    if isinstance(value, SqrtSum):
        return str(value.as_fraction()) if value.is_rational else str(value)
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    raise TypeError(f"no exact rendering for {type(value).__name__}")


def render_number(value, mode: str) -> dict:
    """JSON object for one real quantity: always a decimal, plus the exact
    rational/radical string in exact mode."""
    out = {"decimal": decimal_str(value)}
    if mode == EXACT:
        out["exact"] = exact_str(value)
    return out
