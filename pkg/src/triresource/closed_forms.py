"""Analytic measure values along the three boundary families.

Deliberately independent of :mod:`triresource.measures` so the two can check
each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from triresource.errors import ParameterRangeError


class Family(str, Enum):
    ALPHA = "alpha"
    M = "m"
    THETA = "theta"


QUANTITIES = ("ggm", "gmc", "fill", "coherence", "steering")

DOMAIN = {Family.ALPHA: (0.0, math.pi / 2), Family.M: (0.0, 1.0), Family.THETA: (0.0, math.pi / 2)}


def alpha_closed(alpha: float) -> dict[str, float]:
    c, s = math.cos(alpha), math.sin(alpha)
    radicand = max(2.0 * (1.0 - c**4 - s**4), 0.0)
    return {
        "gmc": math.sqrt(radicand),
        "coherence": abs(math.cos(2.0 * alpha)),
        "fill": math.sin(2.0 * alpha) ** 2,
    }


def m_closed(m: float) -> dict[str, float]:
    if not 0.0 <= m <= 1.0:
        raise ParameterRangeError(f"m must lie in [0, 1], got {m!r}")
    m2 = m * m
    m4 = m2 * m2
    denom = 1.0 + m2
    fill = (1.0 - m2) * ((1.0 + 6.0 * m2 + m4) * (3.0 + 2.0 * m2 + 3.0 * m4)) ** 0.25 / (3.0**0.25 * denom**2)
    return {
        "gmc": (1.0 - m2) / denom,
        "coherence": 2.0 * m / (math.sqrt(3.0) * denom),
        "fill": fill,
        "steering": (1.0 + 10.0 * m2 + m4) / denom**2,
    }


def theta_closed(theta: float) -> dict[str, float]:
    c4 = math.cos(4.0 * theta)
    return {
        "gmc": 0.0,
        "fill": 0.0,
        "coherence": math.sqrt((2.0 + c4) / 3.0),
        "steering": 2.0 - c4,
    }


_CLOSED = {Family.ALPHA: alpha_closed, Family.M: m_closed, Family.THETA: theta_closed}


def family_values(family: Family | str, parameter: float) -> dict[str, float]:
    return _CLOSED[Family(family)](parameter)


def available_quantities(family: Family | str) -> tuple[str, ...]:
    family = Family(family)
    probe = DOMAIN[family][0]
    return tuple(q for q in QUANTITIES if q in _CLOSED[family](probe))


@dataclass(frozen=True)
class BoundaryCurve:
    family: Family
    x_quantity: str
    y_quantity: str
    parameters: np.ndarray
    x: np.ndarray
    y: np.ndarray

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.parameters.tolist(), self.x.tolist(), self.y.tolist()))


def boundary_curve(family: Family | str, x_quantity: str, y_quantity: str, n_points: int) -> BoundaryCurve:
    """Evenly spaced curve over the family's full parameter range, endpoints included."""
    family = Family(family)
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    supported = available_quantities(family)
    for q in (x_quantity, y_quantity):
        if q not in supported:
            raise ValueError(f"{q!r} has no closed form for family {family.value!r} (have {supported})")
    lo, hi = DOMAIN[family]
    params = np.linspace(lo, hi, n_points)
    params[-1] = hi
    values = [_CLOSED[family](float(p)) for p in params]
    x = np.array([v[x_quantity] for v in values])
    y = np.array([v[y_quantity] for v in values])
    return BoundaryCurve(family, x_quantity, y_quantity, params, x, y)
