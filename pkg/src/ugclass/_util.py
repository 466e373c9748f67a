"""Small numeric helpers shared across modules."""

from decimal import ROUND_CEILING, ROUND_HALF_UP, Decimal

import numpy as np


def _exact(ratio) -> Decimal:
    # str() gives the shortest repr, so 0.15 stays 0.15 instead of 0.1499999...
    return Decimal(str(float(ratio)))


def round_half_up(ratio, total: int) -> int:
    """``round(ratio * total)`` with halves rounded up, free of binary float noise."""
    return int((_exact(ratio) * total).to_integral_value(rounding=ROUND_HALF_UP))


def ceil_count(ratio, total: int) -> int:
    return int((_exact(ratio) * total).to_integral_value(rounding=ROUND_CEILING))


def complement_count(ratio, total: int) -> int:
    """``round_half_up((1 - ratio) * total)`` computed in decimal arithmetic."""
    kept = (Decimal(1) - _exact(ratio)) * total
    return int(kept.to_integral_value(rounding=ROUND_HALF_UP))


def make_rng(seed, *stream) -> np.random.Generator:
    """Generator for ``seed``; extra integers select an independent child stream."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        return np.random.default_rng()
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.default_rng(ss)


def default_theta_grid(steps: int = 20, start: float = 0.05, stop: float = 1.0) -> list:
    """Evenly spaced ratios from ``start`` to ``stop`` inclusive, rounded to clean decimals."""
    return [round(float(x), 12) for x in np.linspace(start, stop, steps)]
