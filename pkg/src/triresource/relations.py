"""Trade-off theorems and pure-state identities as signed slacks.

Sign convention: for inequalities a non-negative slack means satisfied; for
equalities the absolute residual is reported. The formula helpers
(``t1_residual`` ... ``t5_high``) accept scalars, numpy arrays or
``fractions.Fraction``, so the same expressions serve single states, whole
ensembles and exact arithmetic checks.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from triresource import kernels, linalg, measures
from triresource.config import DEFAULT_TOLERANCES
from triresource.kernels import COL
from triresource.states import RNG_ALGORITHM, SamplerConfig, haar_amplitudes

INV_SQRT3 = 1.0 / math.sqrt(3.0)
TOP_K = 10


class RelationId(str, Enum):
    T1_ellipse = "T1_ellipse"
    T2_upper = "T2_upper"
    T2_lower = "T2_lower"
    T3_upper = "T3_upper"
    T3_lower = "T3_lower"
    T4 = "T4"
    T5_low_D = "T5_low_D"
    T5_high_D = "T5_high_D"
    ID_side_duality = "ID_side_duality"
    ID_purity_duality = "ID_purity_duality"
    ID_sum_rule = "ID_sum_rule"
    ID_schmidt_purity = "ID_schmidt_purity"
    ID_gmc_shortest_side = "ID_gmc_shortest_side"
    ID_D_vs_Q = "ID_D_vs_Q"

    @property
    def kind(self) -> str:
        return "equality" if self in EQUALITIES else "inequality"


EQUALITIES = frozenset(
    {
        RelationId.T1_ellipse,
        RelationId.ID_side_duality,
        RelationId.ID_purity_duality,
        RelationId.ID_sum_rule,
        RelationId.ID_schmidt_purity,
        RelationId.ID_gmc_shortest_side,
        RelationId.ID_D_vs_Q,
    }
)


# --- formulas -----------------------------------------------------------------


def t1_residual(ggm, gmc):
    return (2 * ggm - 1) ** 2 + gmc**2 - 1


def t2_upper(gmc, coherence):
    return 1 - gmc**2 - coherence**2


def t2_lower(gmc, coherence):
    return gmc**2 + 3 * coherence**2 - 1


def t3_upper(fill, coherence):
    return 1 - fill - coherence**2


def t3_lower(fill, coherence):
    d2 = coherence**2
    return fill**4 + (3 * d2 - 1) ** 2 * (3 * d2**2 - 2 * d2 - 1)


def t4_slack_value(fill, steering):
    return -(48 * fill**4 + (steering - 3) ** 2 * (steering + 1) * (steering - 7))


def t5_low(coherence, steering):
    return 1 + 6 * coherence**2 - steering


def t5_high(coherence, steering):
    return 4 - 3 * coherence**2 - steering


# --- single states --------------------------------------------------------------


def _profile(state_or_profile) -> measures.ResourceProfile:
    if isinstance(state_or_profile, measures.ResourceProfile):
        return state_or_profile
    return measures.profile(state_or_profile)


def t1_slack(state) -> float:
    p = _profile(state)
    return t1_residual(p.ggm, p.gmc)


def t2_slacks(state) -> tuple[float, float]:
    p = _profile(state)
    return t2_upper(p.gmc, p.coherence), t2_lower(p.gmc, p.coherence)


def t3_slacks(state, tol: float = DEFAULT_TOLERANCES.theorem) -> tuple[float, float, bool]:
    """``(upper, lower, lower_applicable)``; the quartic lower bound only holds for D <= 1/sqrt(3)."""
    p = _profile(state)
    return t3_upper(p.fill, p.coherence), t3_lower(p.fill, p.coherence), p.coherence <= INV_SQRT3 + tol


def t4_slack(state) -> float:
    p = _profile(state)
    return t4_slack_value(p.fill, p.steering_max)


def t5_slacks(state, tol: float = DEFAULT_TOLERANCES.theorem) -> tuple[float, float, str]:
    """``(low_branch, high_branch, branch)`` where ``branch`` is the one the theorem assigns.

    D = 1/sqrt(3) belongs to the high branch; so does anything within ``tol``
    below it, where rounding decides the side and both bounds meet at S = 3.
    """
    p = _profile(state)
    branch = "high" if p.coherence >= INV_SQRT3 - tol else "low"
    return t5_low(p.coherence, p.steering_max), t5_high(p.coherence, p.steering_max), branch


def t5_effective(coherence, steering, tol: float = DEFAULT_TOLERANCES.theorem):
    """Branch-selected slack; inside the collar ``|D - 1/sqrt(3)| <= tol`` the larger one wins."""
    low, high = t5_low(coherence, steering), t5_high(coherence, steering)
    chosen = np.where(coherence >= INV_SQRT3, high, low)
    collar = np.abs(coherence - INV_SQRT3) <= tol
    return np.where(collar, np.maximum(low, high), chosen)


def identity_slacks(state) -> dict[RelationId, float]:
    """Absolute residuals of the pure-state identities (worst over the cyclic variants).

    ``ID_gmc_shortest_side`` compares the purity form of the squared GMC,
    ``min_i 2 (1 - Tr rho_i^2)``, with the shortest side ``min(a, b, c)``; the
    reported GMC itself is evaluated from the sides.
    """
    p = _profile(state)
    marg = linalg.reduced_states(state)
    a, b, c = p.sides
    pa, pb, pc = p.purities
    s_ab, s_ac, s_bc = p.steering_pairs
    side = max(abs(s_ab - (a + b - 2 * c + 1)), abs(s_ac - (a + c - 2 * b + 1)), abs(s_bc - (b + c - 2 * a + 1)))
    pur = max(
        abs(s_ab - (4 * pc - 2 * pa - 2 * pb + 1)),
        abs(s_ac - (4 * pb - 2 * pa - 2 * pc + 1)),
        abs(s_bc - (4 * pa - 2 * pb - 2 * pc + 1)),
    )
    schmidt = max(
        abs(pa - linalg.purity(marg["BC"])), abs(pb - linalg.purity(marg["AC"])), abs(pc - linalg.purity(marg["AB"]))
    )
    return {
        RelationId.ID_side_duality: side,
        RelationId.ID_purity_duality: pur,
        RelationId.ID_sum_rule: abs(s_ab + s_ac + s_bc - 3.0),
        RelationId.ID_schmidt_purity: schmidt,
        RelationId.ID_gmc_shortest_side: abs(2.0 * (1.0 - max(p.purities)) - min(p.sides)),
        RelationId.ID_D_vs_Q: abs(p.coherence**2 - (1.0 - 2.0 / 3.0 * p.half_perimeter)),
    }


# --- tables (ensembles) ---------------------------------------------------------


def table_relations(table: np.ndarray, tol: float = DEFAULT_TOLERANCES.theorem) -> dict[RelationId, tuple[np.ndarray, np.ndarray]]:
    """Per-sample slack (inequalities) or residual (equalities) and an applicability mask.

    ``table`` has the columns of :data:`triresource.kernels.COLUMNS`.
    """
    col = {name: table[:, i] for name, i in COL.items()}
    g, cm, f, d, s = col["ggm"], col["gmc"], col["fill"], col["coherence"], col["s_max"]
    a, b, c, q = col["a"], col["b"], col["c"], col["q"]
    pa, pb, pc = col["p_a"], col["p_b"], col["p_c"]
    s_ab, s_ac, s_bc = col["s_ab"], col["s_ac"], col["s_bc"]
    every = np.ones(len(table), dtype=bool)
    low_ok = d < INV_SQRT3 + tol
    high_ok = d >= INV_SQRT3 - tol
    t5 = t5_effective(d, s, tol)
    return {
        RelationId.T1_ellipse: (np.abs(t1_residual(g, cm)), every),
        RelationId.T2_upper: (t2_upper(cm, d), every),
        RelationId.T2_lower: (t2_lower(cm, d), every),
        RelationId.T3_upper: (t3_upper(f, d), every),
        RelationId.T3_lower: (t3_lower(f, d), d <= INV_SQRT3 + tol),
        RelationId.T4: (t4_slack_value(f, s), every),
        RelationId.T5_low_D: (t5, low_ok),
        RelationId.T5_high_D: (t5, high_ok),
        RelationId.ID_side_duality: (
            np.max(
                np.abs([s_ab - (a + b - 2 * c + 1), s_ac - (a + c - 2 * b + 1), s_bc - (b + c - 2 * a + 1)]), axis=0
            ),
            every,
        ),
        RelationId.ID_purity_duality: (
            np.max(
                np.abs(
                    [
                        s_ab - (4 * pc - 2 * pa - 2 * pb + 1),
                        s_ac - (4 * pb - 2 * pa - 2 * pc + 1),
                        s_bc - (4 * pa - 2 * pb - 2 * pc + 1),
                    ]
                ),
                axis=0,
            ),
            every,
        ),
        RelationId.ID_sum_rule: (np.abs(s_ab + s_ac + s_bc - 3.0), every),
        RelationId.ID_schmidt_purity: (
            np.max(np.abs([pa - col["p_bc"], pb - col["p_ac"], pc - col["p_ab"]]), axis=0),
            every,
        ),
        RelationId.ID_gmc_shortest_side: (
            np.abs(2.0 * (1.0 - np.maximum(np.maximum(pa, pb), pc)) - np.minimum(np.minimum(a, b), c)),
            every,
        ),
        RelationId.ID_D_vs_Q: (np.abs(d**2 - (1.0 - 2.0 / 3.0 * q)), every),
    }


@dataclass
class RelationSummary:
    """Running extreme of one relation over an ensemble.

    ``worst`` holds up to :data:`TOP_K` ``(badness, index, amplitudes)`` with
    ``badness = -slack`` for inequalities and ``residual`` for equalities.
    """

    id: RelationId
    n_applicable: int = 0
    extreme: float = math.nan
    worst: list = field(default_factory=list)

    def statistic_name(self) -> str:
        return "max_residual" if self.id.kind == "equality" else "min_slack"

    def merge(self, other: "RelationSummary") -> "RelationSummary":
        if other.n_applicable:
            if not self.n_applicable:
                self.extreme = other.extreme
            elif self.id.kind == "equality":
                self.extreme = max(self.extreme, other.extreme)
            else:
                self.extreme = min(self.extreme, other.extreme)
        self.n_applicable += other.n_applicable
        self.worst = sorted(self.worst + other.worst, key=lambda w: (-w[0], w[1]))[:TOP_K]
        return self


def summarize_table(
    table: np.ndarray,
    amps: np.ndarray,
    tol: float = DEFAULT_TOLERANCES.theorem,
    offset: int = 0,
    k: int = TOP_K,
) -> dict[RelationId, RelationSummary]:
    out = {}
    for rid, (values, mask) in table_relations(table, tol).items():
        summary = RelationSummary(rid)
        idx = np.flatnonzero(mask)
        if idx.size:
            vals = values[idx]
            badness = vals if rid.kind == "equality" else -vals
            summary.n_applicable = int(idx.size)
            summary.extreme = float(vals.max() if rid.kind == "equality" else vals.min())
            top = idx[np.lexsort((idx, -badness))[:k]]
            bad_by_idx = dict(zip(idx.tolist(), badness.tolist()))
            summary.worst = [(bad_by_idx[int(i)], offset + int(i), amps[i].copy()) for i in top]
        out[rid] = summary
    return out


@dataclass
class TheoremReport:
    relations: dict[RelationId, RelationSummary]
    n_samples: int
    seed: int | None
    tol: float
    equality_tol: float
    rng_algorithm: str = RNG_ALGORITHM
    ggm_domain_violations: int = 0
    metadata: dict = field(default_factory=dict)

    def passed(self, rid: RelationId) -> bool:
        s = self.relations[rid]
        if rid is RelationId.T1_ellipse and self.ggm_domain_violations:
            return False
        if not s.n_applicable:
            return True
        if rid.kind == "equality":
            return s.extreme <= self.equality_tol
        return s.extreme >= -self.tol

    @property
    def all_passed(self) -> bool:
        return all(self.passed(rid) for rid in self.relations)

    def worst_state(self, rid: RelationId) -> np.ndarray | None:
        worst = self.relations[rid].worst
        return worst[0][2] if worst else None

    def to_dict(self) -> dict:
        rows = []
        for rid, s in self.relations.items():
            row = {
                "id": rid.value,
                "kind": rid.kind,
                s.statistic_name(): None if not s.n_applicable else s.extreme,
                "pass": self.passed(rid),
                "n_applicable": s.n_applicable,
                "worst_state": None,
                "worst_states": [
                    {
                        "index": i,
                        "slack" if rid.kind == "inequality" else "residual": -b if rid.kind == "inequality" else b,
                        "amplitudes": [[float(z.real), float(z.imag)] for z in amps],
                    }
                    for b, i, amps in s.worst
                ],
                "n_samples": self.n_samples,
                "seed": self.seed,
                "rng_algorithm": self.rng_algorithm,
                "tol": self.equality_tol if rid.kind == "equality" else self.tol,
            }
            if s.worst:
                row["worst_state"] = row["worst_states"][0]["amplitudes"]
            if rid is RelationId.T1_ellipse:
                row["ggm_domain_violations"] = self.ggm_domain_violations
            rows.append(row)
        return {"pass": self.all_passed, "relations": rows, "metadata": self.metadata}


def _chunk_summary(args):
    seed, start, count, tol, struct_tol, backend = args
    amps = haar_amplitudes(seed, start, count)
    table = kernels.profile_table(amps, struct_tol, backend=backend)
    ggm = table[:, COL["ggm"]]
    domain_bad = int(np.count_nonzero((ggm < -struct_tol) | (ggm > 0.5 + struct_tol)))
    return summarize_table(table, amps, tol, offset=start), domain_bad


def verify_table(
    table: np.ndarray,
    amps: np.ndarray,
    tol: float = DEFAULT_TOLERANCES.theorem,
    equality_tol: float | None = None,
    seed: int | None = None,
) -> TheoremReport:
    """Verify every relation on precomputed kernel rows (no sampling)."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    eq_tol = min(tol, DEFAULT_TOLERANCES.derived) if equality_tol is None else equality_tol
    ggm = table[:, COL["ggm"]]
    bad = int(np.count_nonzero((ggm < -DEFAULT_TOLERANCES.structural) | (ggm > 0.5 + DEFAULT_TOLERANCES.structural)))
    return TheoremReport(summarize_table(table, amps, tol), len(table), seed, tol, eq_tol, ggm_domain_violations=bad)


def verify_ensemble(
    config: SamplerConfig,
    tol: float = DEFAULT_TOLERANCES.theorem,
    equality_tol: float | None = None,
    workers: int = 1,
    chunk: int = 50_000,
    backend: str | None = None,
) -> TheoremReport:
    """Sample ``config.count`` Haar states and check all relations.

    Equalities use ``equality_tol`` (default ``min(tol, 1e-10)``). The result
    is independent of ``workers`` and ``chunk``: each chunk owns a disjoint
    slice of the random stream and summaries merge by min/max.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    eq_tol = min(tol, DEFAULT_TOLERANCES.derived) if equality_tol is None else equality_tol
    jobs = [
        (config.seed, start, min(chunk, config.count - start), tol, DEFAULT_TOLERANCES.structural, backend or kernels.BACKEND)
        for start in range(0, config.count, chunk)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk_summary, jobs))
    else:
        parts = [_chunk_summary(job) for job in jobs]
    merged = {rid: RelationSummary(rid) for rid in RelationId}
    domain_bad = 0
    for summaries, bad in parts:
        domain_bad += bad
        for rid, s in summaries.items():
            merged[rid].merge(s)
    return TheoremReport(merged, config.count, config.seed, tol, eq_tol, ggm_domain_violations=domain_bad)
