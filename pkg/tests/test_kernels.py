import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import pure_states
from triresource import kernels, measures
from triresource.errors import NormalizationError
from triresource.kernels import COL, COLUMNS
from triresource.states import GHZ, haar_amplitudes, psi_m, psi_theta


def test_columns():
    assert len(COLUMNS) == 18 and len(set(COLUMNS)) == 18
    assert COLUMNS[:12] == ("ggm", "gmc", "fill", "coherence", "s_ab", "s_ac", "s_bc", "s_max", "a", "b", "c", "q")


def test_python_backend_always_available():
    assert "python" in kernels.BACKENDS
    assert kernels.BACKEND in kernels.BACKENDS


def test_use_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_use_backend_switches_default():
    previous = kernels.BACKEND
    try:
        kernels.use_backend("python")
        assert kernels.BACKEND == "python"
    finally:
        kernels.use_backend(previous)


def test_shape_validation(backend):
    with pytest.raises(ValueError):
        kernels.profile_table(np.zeros((3, 7)), backend=backend)
    with pytest.raises(ValueError):
        kernels.profile_table(np.zeros(8), backend=backend)


def test_empty_input(backend):
    assert kernels.profile_table(np.zeros((0, 8), complex), backend=backend).shape == (0, 18)


def test_backends_agree_on_haar_states(backend):
    amps = haar_amplitudes(123, 0, 20_000)
    ref = kernels.profile_table(amps, backend="python")
    np.testing.assert_allclose(kernels.profile_table(amps, backend=backend), ref, atol=1e-14, rtol=0)


@settings(max_examples=150)
@given(st.lists(pure_states(), min_size=1, max_size=6))
def test_backends_agree_with_single_state_profile(states):
    amps = np.array([s.amplitudes for s in states])
    for name in kernels.BACKENDS:
        table = kernels.profile_table(amps, backend=name)
        for row, state in zip(table, states):
            p = measures.profile(state)
            expected = [p.ggm, p.gmc, p.fill, p.coherence, *p.steering_pairs, p.steering_max, *p.sides, p.half_perimeter, *p.purities]
            np.testing.assert_allclose(row[:15], expected, atol=1e-13, rtol=0)
            np.testing.assert_allclose(row[[COL["p_bc"], COL["p_ac"], COL["p_ab"]]], p.purities, atol=1e-13, rtol=0)


def test_special_states(backend):
    amps = np.array([GHZ.amplitudes, psi_m(1.0).amplitudes, psi_theta(np.pi / 4).amplitudes])
    t = kernels.profile_table(amps, backend=backend)
    np.testing.assert_allclose(t[0, [COL["ggm"], COL["gmc"], COL["fill"], COL["coherence"], COL["s_max"]]], [0.5, 1, 1, 0, 1], atol=1e-12)
    np.testing.assert_allclose(t[1, [COL["gmc"], COL["fill"], COL["coherence"], COL["s_max"]]], [0, 0, 1 / np.sqrt(3), 3], atol=1e-12)
    np.testing.assert_allclose(t[2, [COL["gmc"], COL["fill"], COL["coherence"], COL["s_max"]]], [0, 0, 1 / np.sqrt(3), 3], atol=1e-12)


def test_product_cut_is_exactly_zero(backend):
    # B factors out, so its determinant is a sum of squared minors that vanish to ~1e-33
    amps = np.array([psi_theta(t).amplitudes for t in np.linspace(0.1, 1.4, 50)])
    t = kernels.profile_table(amps, backend=backend)
    assert np.all(t[:, COL["b"]] <= 1e-30)
    assert np.all(t[:, COL["gmc"]] <= 1e-15)


def test_unnormalized_rows_raise(backend):
    amps = haar_amplitudes(1, 0, 10)
    amps[3] *= 1 + 1e-7
    with pytest.raises(NormalizationError) as info:
        kernels.profile_table(amps, backend=backend)
    assert info.value.deviation == pytest.approx(2e-7, rel=1e-3)
    # a looser tolerance admits the row
    kernels.profile_table(amps, tol=1e-6, backend=backend)


def test_nonfinite_rows_raise(backend):
    amps = haar_amplitudes(1, 0, 4)
    amps[2, 5] = np.nan
    with pytest.raises(NormalizationError):
        kernels.profile_table(amps, backend=backend)


def test_fallback_selected_when_extension_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['triresource.kernels._core'] = None\n"
        "from triresource import kernels, relations\n"
        "from triresource.states import SamplerConfig\n"
        "assert kernels.BACKEND == 'python' and set(kernels.BACKENDS) == {'python'}\n"
        "assert relations.verify_ensemble(SamplerConfig(1, 1000)).all_passed\n"
    )
    subprocess.run([sys.executable, "-c", code], check=True)
