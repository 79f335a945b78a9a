"""Small numeric helpers shared across the engine."""

import math


def round_half_up(value: float) -> int:
    """Round to nearest integer, ties away from zero toward +inf.

    Python's built-in round() uses banker's rounding; pixel mapping and
    scroll-step math need plain half-up so results match hand arithmetic.
    """
    return math.floor(value + 0.5)


def clamp(value: float, lo: float, hi: float) -> float:
    return lo if value < lo else hi if value > hi else value
