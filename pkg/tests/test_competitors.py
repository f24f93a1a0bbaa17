"""The five comparison families: closed forms, domains, and fits."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from ngfisk import (
    COMPETITORS,
    CompetitorModel,
    competitor_cdf,
    competitor_from_fit,
    competitor_pdf,
    fit_competitor,
    get_family,
)

# moderate positive parameter draws keep finite differences well conditioned
_PARAM_RANGES = {
    "nexfw": (0.3, 3.0),
    "fw": (0.3, 2.0),
    "kuw": (0.3, 3.0),
    "zw": (0.3, 3.0),
    "kwp": (0.3, 2.5),
}


def _random_model(rng, key):
    lo, hi = _PARAM_RANGES[key]
    fam = COMPETITORS[key]
    return CompetitorModel(key, tuple(float(rng.uniform(lo, hi)) for _ in fam.param_names))


def test_registry_contents():
    assert set(COMPETITORS) == {"nexfw", "fw", "kuw", "zw", "kwp"}
    assert COMPETITORS["kuw"].param_names == ("a", "b", "gamma", "theta")
    assert get_family("Ku-W").key == "kuw"
    assert get_family("NEx_FW").key == "nexfw"
    with pytest.raises(KeyError):
        get_family("weibull")


def test_kuw_unit_params_is_exponential():
    m = CompetitorModel("kuw", (1.0, 1.0, 1.0, 1.0))
    x = np.linspace(0.05, 6.0, 60)
    np.testing.assert_allclose(competitor_pdf(m, x), np.exp(-x), rtol=1e-12)
    assert competitor_cdf(m, 1.0) == pytest.approx(1.0 - math.exp(-1.0), rel=1e-12)


def test_values_at_zero():
    # NEx-FW and FW put 1 - 1/e at the origin when their exponent terms
    # vanish there; the printed formulas are evaluated literally.
    one = 1.0 - math.exp(-1.0)
    assert competitor_cdf(CompetitorModel("nexfw", (1.0, 1.0, 1.0)), 0.0) == pytest.approx(one)
    assert competitor_cdf(CompetitorModel("fw", (1.0, 1.0, 1.0, 1.0)), 0.0) == pytest.approx(one)
    for key, pars in [("kuw", (1.0, 1.0, 1.0, 1.0)), ("zw", (1.0, 1.0, 1.0)),
                      ("kwp", (1.0, 1.0, 1.0, 1.0, 1.0))]:
        assert competitor_cdf(CompetitorModel(key, pars), 0.0) == 0.0


def test_kwp_small_lambda_reduces_to_kuw():
    # KWP(a, b, c, beta, lam->0) -> Ku-W(a, b, beta^c, c); the gap shrinks
    # linearly in lam, so 1e-6 gives agreement at the 1e-6 level.
    a, b, c, beta = 1.3, 0.8, 1.6, 0.9
    kuw = CompetitorModel("kuw", (a, b, beta ** c, c))
    x = np.linspace(0.01, 8.0, 200)

    def gap(lam):
        kwp = CompetitorModel("kwp", (a, b, c, beta, lam))
        return float(np.max(np.abs(competitor_cdf(kwp, x) - competitor_cdf(kuw, x))))

    assert gap(1e-6) < 1e-6
    assert gap(1e-7) < 0.5 * gap(1e-6)  # actual rate is linear in lam


def test_pdf_matches_cdf_derivative():
    # x is placed where the model actually has mass (cdf near a uniform draw)
    # so the finite difference always carries signal above its noise floor
    rng = np.random.default_rng(61)
    grid = np.geomspace(1e-3, 50.0, 600)
    for key in COMPETITORS:
        for _ in range(20):
            m = _random_model(rng, key)
            u = float(rng.uniform(0.1, 0.9))
            x = float(grid[np.argmin(np.abs(competitor_cdf(m, grid) - u))])
            h = 1e-6 * max(1.0, x)
            fd = (competitor_cdf(m, x + h) - competitor_cdf(m, x - h)) / (2 * h)
            assert competitor_pdf(m, x) == pytest.approx(fd, rel=1e-6), (key, m.params, x)


def test_zw_reference_point():
    m = CompetitorModel("zw", (1.539, 2.177, 0.558))
    x = 1.0
    h = 1e-6
    fd = (competitor_cdf(m, x + h) - competitor_cdf(m, x - h)) / (2 * h)
    assert competitor_pdf(m, x) == pytest.approx(fd, rel=1e-6)


@pytest.mark.parametrize("key", sorted(COMPETITORS))
def test_pdf_mass_equals_cdf_mass(key):
    rng = np.random.default_rng(67)
    m = _random_model(rng, key)
    hi = 30.0
    mass, _ = quad(lambda t: float(competitor_pdf(m, t)), 1e-12, hi, limit=300)
    expect = float(competitor_cdf(m, hi) - competitor_cdf(m, 1e-12))
    assert mass == pytest.approx(expect, abs=1e-6)


@pytest.mark.parametrize("key", sorted(COMPETITORS))
def test_cdf_monotone_and_bounded(key):
    rng = np.random.default_rng(71)
    for _ in range(5):
        m = _random_model(rng, key)
        grid = np.linspace(0.0, 25.0, 400)
        vals = competitor_cdf(m, grid)
        assert np.all(vals >= 0.0) and np.all(vals <= 1.0)
        assert np.all(np.diff(vals) >= -1e-12)


def test_model_validation():
    with pytest.raises(ValueError):
        CompetitorModel("kuw", (1.0, 1.0, 1.0))  # wrong arity
    with pytest.raises(ValueError):
        CompetitorModel("zw", (1.0, -2.0, 1.0))  # non-positive
    with pytest.raises(KeyError):
        CompetitorModel("burr", (1.0, 1.0))


def test_domain_checks():
    m = CompetitorModel("kuw", (1.0, 1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        competitor_cdf(m, -0.5)
    with pytest.raises(ValueError):
        competitor_pdf(m, 0.0)  # density only defined for x > 0


def test_fit_reference_data(dataft):
    kuw = fit_competitor("kuw", dataft)
    assert kuw.converged
    assert abs(kuw.nll - 103.54) < 1.0
    assert kuw.nll == pytest.approx(102.622, abs=5e-3)
    zw = fit_competitor("zw", dataft)
    assert zw.nll == pytest.approx(102.369, abs=5e-3)


def test_fit_deterministic(dataft):
    a = fit_competitor("zw", dataft, seed=2)
    b = fit_competitor("zw", dataft, seed=2)
    assert a.estimates == b.estimates


def test_fit_dominates_reference_point():
    rng = np.random.default_rng(73)
    x = rng.exponential(1.0, size=200)
    fit = fit_competitor("kuw", x, starts=6, seed=0)
    ref = CompetitorModel("kuw", (1.0, 1.0, 1.0, 1.0))
    nll_ref = -float(np.sum(np.log(competitor_pdf(ref, x))))
    assert fit.nll <= nll_ref + 1e-9


def test_fw_fit_is_canonical(dataft):
    fit = fit_competitor("fw", dataft, starts=6, seed=0)
    assert fit.estimate("gamma") <= fit.estimate("alpha") + 1e-12


def test_competitor_from_fit_round_trip(dataft):
    fit = fit_competitor("kuw", dataft, starts=4, seed=1)
    model = competitor_from_fit(fit)
    assert model.name == "kuw"
    assert model.params == fit.estimates
    nll = -float(np.sum(np.log(competitor_pdf(model, dataft))))
    assert nll == pytest.approx(fit.nll, rel=1e-9)
