"""NG-X transform against a pluggable baseline.

Oracle values below were derived by hand from the transform
G = 1 - [(1-F)/(1-delta*F)]^theta with the Fisk baseline, then
cross-checked by quadrature and finite differences.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import expon

from ngfisk import (
    Baseline,
    FamilyParams,
    fisk_baseline,
    ngx_cdf,
    ngx_chf,
    ngx_hazard,
    ngx_pdf,
    ngx_quantile,
    ngx_rhr,
    ngx_sf,
)

FISK = fisk_baseline(1.5, 2.0)
PARS = FamilyParams(theta=2.5, delta=0.25)

EXPON = Baseline(
    name="expon",
    cdf=lambda x: expon.cdf(x),
    pdf=lambda x: expon.pdf(x),
    quantile=lambda p: expon.ppf(p),
)


def _random_pars(rng, n):
    return [
        FamilyParams(theta=float(rng.uniform(0.2, 5.0)), delta=float(rng.uniform(0.05, 0.9)))
        for _ in range(n)
    ]


def test_fisk_point_oracles():
    # F(1.5) = 1/2 exactly for Fisk(1.5, 2), f(1.5) = 1/3, so with
    # theta=2.5, delta=0.25:  S = (4/7)^2.5,  h = (2.5*0.75/3)/(0.5*0.875) = 10/7
    x = 1.5
    sf_exact = (4.0 / 7.0) ** 2.5
    assert ngx_sf(FISK, PARS, x) == pytest.approx(sf_exact, rel=1e-12)
    assert ngx_cdf(FISK, PARS, x) == pytest.approx(1.0 - sf_exact, rel=1e-12)
    assert ngx_hazard(FISK, PARS, x) == pytest.approx(10.0 / 7.0, rel=1e-12)
    assert ngx_pdf(FISK, PARS, x) == pytest.approx(10.0 / 7.0 * sf_exact, rel=1e-12)
    assert ngx_chf(FISK, PARS, x) == pytest.approx(-math.log(sf_exact), rel=1e-12)
    assert ngx_rhr(FISK, PARS, x) == pytest.approx(
        10.0 / 7.0 * sf_exact / (1.0 - sf_exact), rel=1e-12
    )
    # four decimal places for the record: cdf 0.7532, pdf 0.3526
    assert ngx_cdf(FISK, PARS, x) == pytest.approx(0.7532, abs=5e-5)
    assert ngx_pdf(FISK, PARS, x) == pytest.approx(0.3526, abs=5e-5)


def test_theta_one_tiny_delta_recovers_baseline():
    pars = FamilyParams(theta=1.0, delta=1e-12)
    x = np.linspace(0.1, 8.0, 40)
    np.testing.assert_allclose(ngx_cdf(FISK, pars, x), FISK.cdf(x), rtol=1e-9)
    np.testing.assert_allclose(ngx_pdf(FISK, pars, x), FISK.pdf(x), rtol=1e-9)


def test_pdf_normalizes():
    # theta below ~0.5 pushes real tail mass past the double-precision cdf
    # horizon of the generic path; the log-space kernels cover that regime
    # and are tested in test_distribution.
    rng = np.random.default_rng(3)
    for _ in range(20):
        pars = FamilyParams(
            theta=float(rng.uniform(0.5, 5.0)), delta=float(rng.uniform(0.05, 0.9))
        )
        med = float(ngx_quantile(FISK, pars, 0.5))
        lo, _ = quad(lambda t: ngx_pdf(FISK, pars, t), 0.0, med, limit=200)
        hi, _ = quad(lambda t: ngx_pdf(FISK, pars, t), med, np.inf, limit=200)
        assert lo + hi == pytest.approx(1.0, abs=1e-6)


def test_pdf_matches_cdf_derivative():
    rng = np.random.default_rng(4)
    for pars in _random_pars(rng, 10):
        for x in rng.uniform(0.3, 4.0, size=5):
            h = 1e-5 * max(1.0, x)
            fd = (ngx_cdf(FISK, pars, x + h) - ngx_cdf(FISK, pars, x - h)) / (2 * h)
            assert ngx_pdf(FISK, pars, x) == pytest.approx(fd, rel=1e-5)


def test_definitional_identities():
    rng = np.random.default_rng(5)
    x = np.asarray(rng.lognormal(0.0, 0.8, size=100))
    for pars in _random_pars(rng, 10):
        g = ngx_pdf(FISK, pars, x)
        G = ngx_cdf(FISK, pars, x)
        S = ngx_sf(FISK, pars, x)
        np.testing.assert_allclose(G + S, 1.0, atol=1e-12)
        np.testing.assert_allclose(ngx_hazard(FISK, pars, x) * S, g, rtol=1e-10)
        np.testing.assert_allclose(ngx_rhr(FISK, pars, x) * G, g, rtol=1e-10)
        np.testing.assert_allclose(np.exp(-ngx_chf(FISK, pars, x)), S, atol=1e-12)


def test_chf_is_integrated_hazard():
    for x in (0.8, 2.0):
        integral, _ = quad(lambda t: ngx_hazard(FISK, PARS, t), 0.0, x)
        assert ngx_chf(FISK, PARS, x) == pytest.approx(integral, abs=1e-6)


def test_quantile_round_trip():
    p = np.arange(0.01, 1.0, 0.01)
    rng = np.random.default_rng(6)
    for pars in _random_pars(rng, 10):
        x = ngx_quantile(FISK, pars, p)
        np.testing.assert_allclose(ngx_cdf(FISK, pars, x), p, atol=1e-9)


def test_quantile_rejects_endpoints():
    for bad in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            ngx_quantile(FISK, PARS, bad)


def test_params_validation():
    with pytest.raises(ValueError):
        FamilyParams(theta=0.0, delta=0.25)
    with pytest.raises(ValueError):
        FamilyParams(theta=1.0, delta=0.0)
    with pytest.raises(ValueError):
        FamilyParams(theta=1.0, delta=1.0)


def test_support_is_enforced():
    with pytest.raises(ValueError):
        ngx_cdf(FISK, PARS, -0.5)


def test_rhr_rejects_zero_cdf():
    with pytest.raises(ValueError):
        ngx_rhr(FISK, PARS, 0.0)


def test_works_with_non_fisk_baseline():
    # exponential baseline: the transform has closed form through F = 1-e^{-x}
    pars = FamilyParams(theta=2.0, delta=0.5)
    x = 1.3
    F = 1.0 - math.exp(-x)
    expect = 1.0 - ((1.0 - F) / (1.0 - 0.5 * F)) ** 2.0
    assert ngx_cdf(EXPON, pars, x) == pytest.approx(expect, rel=1e-12)
    mass, _ = quad(lambda t: ngx_pdf(EXPON, pars, t), 0.0, np.inf)
    assert mass == pytest.approx(1.0, abs=1e-6)


def test_cdf_monotone():
    rng = np.random.default_rng(8)
    grid = np.linspace(0.01, 12.0, 300)
    for pars in _random_pars(rng, 10):
        vals = ngx_cdf(FISK, pars, grid)
        assert np.all(np.diff(vals) >= 0)
