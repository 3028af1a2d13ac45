import math

import numpy as np
import pytest

from triresource import closed_forms as cf
from triresource import kernels, measures, relations
from triresource.closed_forms import Family
from triresource.errors import ParameterRangeError
from triresource.states import psi_alpha, psi_m, psi_theta

SQRT3 = math.sqrt(3)
GRID = 1000


def _grid(family):
    lo, hi = cf.DOMAIN[Family(family)]
    return np.linspace(lo, hi, GRID)


def _table(ctor, params):
    return kernels.profile_table(np.array([ctor(float(p)).amplitudes for p in params]))


def test_alpha_examples():
    v = cf.alpha_closed(math.pi / 4)
    assert (v["gmc"], v["coherence"], v["fill"]) == pytest.approx((1, 0, 1), abs=1e-15)
    v = cf.alpha_closed(0.0)
    assert (v["gmc"], v["coherence"], v["fill"]) == (0.0, 1.0, 0.0)
    v = cf.alpha_closed(math.pi / 8)
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    assert v["gmc"] == pytest.approx(math.sqrt(2 * (1 - c**4 - s**4)), abs=1e-15)
    assert v["coherence"] == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    assert v["fill"] == pytest.approx(0.5, abs=1e-15)
    p = measures.profile(psi_alpha(math.pi / 8))
    assert (p.gmc, p.coherence, p.fill) == pytest.approx((v["gmc"], v["coherence"], v["fill"]), abs=1e-10)


def test_m_examples():
    v = cf.m_closed(0.0)
    assert (v["gmc"], v["coherence"], v["fill"], v["steering"]) == pytest.approx((1, 0, 1, 1), abs=1e-15)
    v = cf.m_closed(1.0)
    assert (v["gmc"], v["coherence"], v["fill"], v["steering"]) == pytest.approx((0, 1 / SQRT3, 0, 3), abs=1e-15)
    v = cf.m_closed(0.5)
    assert v["gmc"] == pytest.approx(0.6, abs=1e-15)
    assert v["coherence"] == pytest.approx(4 / (5 * SQRT3), abs=1e-15)
    assert v["steering"] == pytest.approx((1 + 2.5 + 0.0625) / 1.5625, abs=1e-15)
    p = measures.profile(psi_m(0.5))
    assert (p.gmc, p.coherence, p.fill, p.steering_max) == pytest.approx(
        (v["gmc"], v["coherence"], v["fill"], v["steering"]), abs=1e-10
    )


@pytest.mark.parametrize("m", [-0.01, 1.01, math.nan])
def test_m_out_of_range(m):
    with pytest.raises(ParameterRangeError):
        cf.m_closed(m)


def test_theta_examples():
    v = cf.theta_closed(0.0)
    assert (v["coherence"], v["steering"]) == (1.0, 1.0)
    v = cf.theta_closed(math.pi / 4)
    assert (v["coherence"], v["steering"]) == pytest.approx((1 / SQRT3, 3), abs=1e-15)
    v = cf.theta_closed(math.pi / 8)
    assert (v["coherence"], v["steering"]) == pytest.approx((math.sqrt(2 / 3), 2), abs=1e-15)
    assert v["gmc"] == 0.0 and v["fill"] == 0.0


@pytest.mark.parametrize(
    "family, ctor, quantities",
    [
        (Family.ALPHA, psi_alpha, ("gmc", "coherence", "fill")),
        (Family.M, psi_m, ("gmc", "coherence", "fill", "steering")),
        (Family.THETA, psi_theta, ("gmc", "coherence", "fill", "steering")),
    ],
)
def test_grid_agrees_with_measures(family, ctor, quantities):
    params = _grid(family)
    table = _table(ctor, params)
    col = {"gmc": "gmc", "coherence": "coherence", "fill": "fill", "steering": "s_max"}
    closed = [cf.family_values(family, float(p)) for p in params]
    for q in quantities:
        expected = np.array([v[q] for v in closed])
        got = table[:, kernels.COL[col[q]]]
        np.testing.assert_allclose(got, expected, atol=1e-10, rtol=0, err_msg=q)


def test_alpha_saturations():
    v = [cf.alpha_closed(float(a)) for a in _grid(Family.ALPHA)]
    assert max(abs(x["gmc"] ** 2 + x["coherence"] ** 2 - 1) for x in v) <= 1e-10
    assert max(abs(x["fill"] + x["coherence"] ** 2 - 1) for x in v) <= 1e-10


def test_m_saturations():
    v = [cf.m_closed(float(m)) for m in _grid(Family.M)]
    g, d, f, s = (np.array([x[k] for x in v]) for k in ("gmc", "coherence", "fill", "steering"))
    assert np.max(np.abs(g**2 + 3 * d**2 - 1)) <= 1e-10
    assert np.max(np.abs(relations.t3_lower(f, d))) <= 1e-10
    assert np.max(np.abs(relations.t4_slack_value(f, s))) <= 1e-10
    assert np.max(np.abs(s - 6 * d**2 - 1)) <= 1e-10


def test_theta_saturation():
    v = [cf.theta_closed(float(t)) for t in _grid(Family.THETA)]
    assert max(abs(x["steering"] + 3 * x["coherence"] ** 2 - 4) for x in v) <= 1e-10


def test_available_quantities():
    assert set(cf.available_quantities("alpha")) == {"gmc", "coherence", "fill"}
    assert set(cf.available_quantities("m")) == {"gmc", "coherence", "fill", "steering"}
    assert set(cf.available_quantities("theta")) == {"gmc", "coherence", "fill", "steering"}


def test_boundary_curve_alpha():
    c = cf.boundary_curve(Family.ALPHA, "gmc", "coherence", 3)
    np.testing.assert_allclose(c.parameters, [0, math.pi / 4, math.pi / 2])
    np.testing.assert_allclose(c.x, [0, 1, 0], atol=1e-7)
    np.testing.assert_allclose(c.y, [1, 0, 1], atol=1e-15)


def test_boundary_curve_m():
    c = cf.boundary_curve("m", "coherence", "steering", 2)
    assert c.samples == [(0.0, 0.0, 1.0), (1.0, pytest.approx(1 / SQRT3, abs=1e-15), pytest.approx(3.0, abs=1e-15))]


@pytest.mark.parametrize("n", [2, 7, 100])
def test_boundary_curve_theta_on_axis(n):
    c = cf.boundary_curve(Family.THETA, "fill", "steering", n)
    assert np.all(c.x == 0)
    assert len(c.samples) == n
    assert np.all(np.diff(c.parameters) > 0)
    assert np.all(np.isfinite(c.x)) and np.all(np.isfinite(c.y))


def test_boundary_curve_errors():
    with pytest.raises(ValueError):
        cf.boundary_curve(Family.ALPHA, "gmc", "steering", 10)
    with pytest.raises(ValueError):
        cf.boundary_curve(Family.M, "ggm", "gmc", 10)
    with pytest.raises(ValueError):
        cf.boundary_curve(Family.M, "gmc", "fill", 1)
    with pytest.raises(ValueError):
        cf.boundary_curve("beta", "gmc", "fill", 10)
