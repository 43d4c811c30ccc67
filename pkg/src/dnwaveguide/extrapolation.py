"""Richardson extrapolation over mesh ladders with refinement ratio 2."""

from __future__ import annotations

import math
from dataclasses import dataclass


def richardson(coarse: float, fine: float, order: float = 2.0, ratio: float = 2.0) -> float:
    return fine + (fine - coarse) / (ratio ** order - 1.0)


def fitted_order(values, ratio: float = 2.0) -> float:
    """Observed convergence order from the last three values of a ladder.

    Returns ``nan`` when the increments change sign or vanish.
    """
    v1, v2, v3 = values[-3:]
    d1, d2 = v1 - v2, v2 - v3
    if d1 == 0 or d2 == 0 or (d1 > 0) != (d2 > 0):
        return math.nan
    return math.log(abs(d1) / abs(d2)) / math.log(ratio)


@dataclass(frozen=True)
class LadderEstimate:
    value: float
    order: float
    error: float
    raw: tuple
    fitted_order: float  # unclipped observed order, nan if unavailable

    @property
    def last_increment(self) -> float:
        return abs(self.raw[-1] - self.raw[-2])


def extrapolate_ladder(values, order: float | None = None, ratio: float = 2.0,
                       order_bounds=(0.5, 4.0), error_factor: float = 3.0) -> LadderEstimate:
    """Extrapolate the last two rungs of a ladder.

    With ``order=None`` the order is fitted from the last three rungs and
    clipped to ``order_bounds``; if it cannot be fitted the lower bound is used
    (the largest extrapolation step).  The error bar is
    ``error_factor`` times the last increment.
    """
    values = tuple(float(v) for v in values)
    if len(values) < 2:
        raise ValueError("need at least two rungs")
    observed = fitted_order(values, ratio) if len(values) >= 3 else math.nan
    if order is not None:
        p = float(order)
    elif math.isnan(observed):
        p = order_bounds[0]
    else:
        p = min(max(observed, order_bounds[0]), order_bounds[1])
    value = richardson(values[-2], values[-1], p, ratio)
    error = error_factor * abs(values[-1] - values[-2])
    return LadderEstimate(value, p, error, values, observed)
