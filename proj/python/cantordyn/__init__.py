"""Turing machines, generalized shifts, square-Cantor block maps and orbit
analysis, with exact arithmetic throughout.

Tapes cross the boundary as strings: symbols of the right half (positions
0, 1, ...) with an optional left half before "|", e.g. "01|10".  Multi-
character symbol names are comma separated.
"""

from fractions import Fraction

from cantordyn._core import (  # noqa: F401
    CompiledBlockMap,
    CompiledShift,
    Machine,
    Point,
    ToolkitError,
    Verdict,
    __version__,
    amplitude,
    decode_point,
    encode_point,
    min_amplitude,
    pressure_coefficient,
    step_budget,
    tau,
)


def point_coords(point):
    """Exact coordinates of a Cantor point as a pair of Fractions."""
    x, y = point.coords()
    return Fraction(x), Fraction(y)


__all__ = [
    "CompiledBlockMap",
    "CompiledShift",
    "Machine",
    "Point",
    "ToolkitError",
    "Verdict",
    "amplitude",
    "decode_point",
    "encode_point",
    "min_amplitude",
    "point_coords",
    "pressure_coefficient",
    "step_budget",
    "tau",
]
