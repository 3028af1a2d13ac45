"""The five resource measures of a three-qubit pure state.

Everything derives from the three single-qubit marginals except the steering
values, which are computed definitionally from Pauli correlation matrices of
the pair marginals. :func:`steering_pair_from_purities` is the pure-state
shortcut, kept as an independent cross-check.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from triresource import linalg
from triresource.config import DEFAULT_TOLERANCES, Tolerances, clamp
from triresource.errors import PositivityError, TriangleInequalityError

_COMPLEMENT = {"AB": "C", "AC": "B", "BC": "A"}


@dataclass(frozen=True)
class ResourceProfile:
    ggm: float
    gmc: float
    fill: float
    coherence: float
    steering_max: float
    sides: tuple[float, float, float]
    half_perimeter: float
    steering_pairs: tuple[float, float, float]
    purities: tuple[float, float, float]

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("sides", "steering_pairs", "purities"):
            d[key] = list(d[key])
        return d


def fill_from_sides(a: float, b: float, c: float, tol: float = DEFAULT_TOLERANCES.structural) -> float:
    """Concurrence fill ``[16/3 Q (Q-a)(Q-b)(Q-c)]^(1/4)`` from the squared concurrences."""
    q = 0.5 * (a + b + c)
    product = q
    for side in (a, b, c):
        product *= clamp(q - side, 0.0, math.inf, tol, "half-perimeter minus side", TriangleInequalityError)
    return clamp((16.0 / 3.0 * product) ** 0.25, 0.0, 1.0, tol, "concurrence fill", TriangleInequalityError)


def _single_marginals(state) -> dict[str, np.ndarray]:
    psi = linalg.amplitude_tensor(state)
    return {q: np.einsum(linalg._SINGLE[q], psi, psi.conj()) for q in linalg.QUBITS}


def _sides(state, tol: float) -> tuple[float, float, float]:
    return tuple(
        clamp(4.0 * linalg.cut_determinant(state, q), 0.0, 1.0, tol, f"4 det(rho_{q})", PositivityError)
        for q in linalg.QUBITS
    )


def ggm(state, tol: float = DEFAULT_TOLERANCES.structural) -> float:
    """Generalized geometric measure: the smallest minor eigenvalue over the three marginals."""
    marg = _single_marginals(state)
    return min(linalg.spectrum2(marg[q], tol, linalg.cut_determinant(state, q)).minor for q in linalg.QUBITS)


def gmc(state, tol: float = DEFAULT_TOLERANCES.structural) -> float:
    """Genuinely multipartite concurrence ``min_i sqrt(2 (1 - Tr rho_i^2))``.

    For a unit-trace qubit ``2 (1 - Tr rho^2) = 4 det(rho)``; the determinant
    form is evaluated because it stays accurate when a marginal is pure.
    """
    return math.sqrt(min(_sides(state, tol)))


def one_vs_rest_concurrences(state, tol: float = DEFAULT_TOLERANCES.structural) -> tuple[float, float, float]:
    """Squared concurrences ``(a, b, c) = 4 det(rho_A), 4 det(rho_B), 4 det(rho_C)``."""
    return _sides(state, tol)


def concurrence_fill(state) -> float:
    return fill_from_sides(*one_vs_rest_concurrences(state))


def first_order_coherence(state, tol: float = DEFAULT_TOLERANCES.structural) -> float:
    """Root-mean-square of the per-qubit values ``sqrt(2 Tr rho_i^2 - 1)``.

    ``2 Tr rho^2 - 1`` is evaluated as the discriminant ``(rho00 - rho11)^2 + 4 |rho01|^2``,
    its cancellation-free form for unit trace.
    """
    squares = [
        clamp(linalg.discriminant2(rho), 0.0, 1.0, tol, "2 purity - 1", PositivityError)
        for rho in _single_marginals(state).values()
    ]
    return math.sqrt(sum(squares) / 3.0)


def steering_pair(state, pair: str) -> float:
    """Three-setting linear steering value ``Tr(T^T T)`` of the pair marginal."""
    t = linalg.correlation_matrix(linalg.partial_trace_pair(state, pair))
    return float(np.sum(t * t))


def steering_pair_from_purities(state, pair: str) -> float:
    """``4 Tr rho_Z^2 - 2 Tr rho_X^2 - 2 Tr rho_Y^2 + 1`` for pair XY; valid for pure states only."""
    marg = _single_marginals(state)
    x, y = pair
    z = _COMPLEMENT[pair]
    p = {q: linalg.purity(rho) for q, rho in marg.items()}
    return 4.0 * p[z] - 2.0 * p[x] - 2.0 * p[y] + 1.0


def steering_max(state) -> float:
    return max(steering_pair(state, pair) for pair in linalg.PAIRS)


def profile(state, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ResourceProfile:
    """All measures in one pass over the marginals."""
    tol = tolerances.structural
    marg = linalg.reduced_states(state, tolerances)
    single = [marg[q] for q in linalg.QUBITS]
    purities = tuple(linalg.purity(rho) for rho in single)
    dets = [linalg.cut_determinant(state, q) for q in linalg.QUBITS]
    sides = tuple(clamp(4.0 * d, 0.0, 1.0, tol, "4 det(rho)", PositivityError) for d in dets)
    minors = [linalg.spectrum2(rho, tol, d).minor for rho, d in zip(single, dets)]
    gmc_value = math.sqrt(min(sides))
    coherence = math.sqrt(
        sum(clamp(linalg.discriminant2(rho), 0.0, 1.0, tol, "2 purity - 1", PositivityError) for rho in single) / 3.0
    )
    pairs = []
    for label in linalg.PAIRS:
        t = linalg.correlation_matrix(marg[label], tolerances.derived)
        pairs.append(float(np.sum(t * t)))
    return ResourceProfile(
        ggm=min(minors),
        gmc=gmc_value,
        fill=fill_from_sides(*sides, tol=tol),
        coherence=coherence,
        steering_max=max(pairs),
        sides=sides,
        half_perimeter=0.5 * sum(sides),
        steering_pairs=tuple(pairs),
        purities=purities,
    )
