"""Numerical tolerances shared by every module."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance record.

    structural
        Normalization, Hermiticity, trace and clamping windows.
    derived
        Identities between derived quantities (purity dualities and the like).
    theorem
        Signed slack allowed on the trade-off inequalities.
    """

    structural: float = 1e-12
    derived: float = 1e-10
    theorem: float = 1e-9

    def __post_init__(self):
        for name in ("structural", "derived", "theorem"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name!r} must be positive")

    def as_dict(self) -> dict[str, float]:
        return {"structural": self.structural, "derived": self.derived, "theorem": self.theorem}


DEFAULT_TOLERANCES = Tolerances()


def clamp(value: float, lo: float, hi: float, tol: float, what: str, exc: type[Exception]) -> float:
    """Clamp ``value`` into ``[lo, hi]`` when it lies within ``tol`` outside.

    Anything further out is treated as a bug and raises ``exc``.
    """
    if value < lo:
        if value < lo - tol:
            raise exc(f"{what} = {value!r} below {lo!r} by more than {tol:g}")
        return lo
    if value > hi:
        if value > hi + tol:
            raise exc(f"{what} = {value!r} above {hi!r} by more than {tol:g}")
        return hi
    return value
