"""Cross-checks between the compiled kernels and the numpy fallback.

Every public kernel must produce the same numbers from both backends;
the compiled extension is an optimization, never a behavior change.
"""

import os
import subprocess
import sys

import numpy as np
import pytest

from ngfisk._kernels import _fallback

try:
    from ngfisk._kernels import _core
except ImportError:
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled extension not built")

PARAMS = (1.5, 2.0, 2.5, 0.25)


def _draws(rng, n):
    return (
        float(rng.uniform(0.3, 5.0)),
        float(rng.uniform(0.5, 4.0)),
        float(rng.uniform(0.2, 5.0)),
        float(rng.uniform(0.05, 0.9)),
    )


@needs_core
def test_backend_labels():
    assert _fallback.BACKEND == "python"
    assert _core.BACKEND == "compiled"


@needs_core
@pytest.mark.parametrize("name", ["cdf", "sf", "pdf", "hazard", "chf"])
def test_pointwise_kernels_agree(name):
    rng = np.random.default_rng(7)
    for _ in range(30):
        a, b, th, d = _draws(rng, 1)
        x = np.asarray(rng.lognormal(0.0, 1.0, size=64))
        got_c = getattr(_core, name)(x, a, b, th, d)
        got_p = getattr(_fallback, name)(x, a, b, th, d)
        np.testing.assert_allclose(got_c, got_p, rtol=1e-12, atol=1e-300)


@needs_core
def test_quantile_agrees():
    rng = np.random.default_rng(11)
    p = np.linspace(0.001, 0.999, 200)
    for _ in range(20):
        a, b, th, d = _draws(rng, 1)
        np.testing.assert_allclose(
            _core.quantile(p, a, b, th, d),
            _fallback.quantile(p, a, b, th, d),
            rtol=1e-12,
        )


@needs_core
def test_nll_and_score_agree():
    rng = np.random.default_rng(13)
    for _ in range(30):
        a, b, th, d = _draws(rng, 1)
        x = np.asarray(rng.lognormal(0.0, 0.7, size=101))
        assert _core.nll(x, a, b, th, d) == pytest.approx(
            _fallback.nll(x, a, b, th, d), rel=1e-12
        )
        np.testing.assert_allclose(
            _core.score(x, a, b, th, d),
            _fallback.score(x, a, b, th, d),
            rtol=1e-9,
        )


@needs_core
def test_infeasible_point_is_plus_inf_in_both():
    x = np.array([1.0, 2.0])
    for bad in [(-1.0, 2.0, 2.5, 0.25), (1.5, 0.0, 2.5, 0.25), (1.5, 2.0, 2.5, 1.0)]:
        assert _fallback.nll(x, *bad) == np.inf
        assert _core.nll(x, *bad) == np.inf


def test_env_var_forces_fallback():
    code = "import ngfisk; print(ngfisk.BACKEND)"
    env = dict(os.environ, NGFISK_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "python"
