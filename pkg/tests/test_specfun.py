import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from rdfourier.errors import DomainError
from rdfourier.specfun import (BESSEL_SERIES_MAX_X, SeriesPolicy, bessel_j, bessel_j_ladder,
                               bessel_j_series, bessel_j_with_error, chebyshev_u, gegenbauer,
                               gegenbauer_table, mittag_leffler, prabhakar, prabhakar_with_error)


def test_bessel_examples():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(0.5, math.pi / 2) == pytest.approx(2 / math.pi, abs=1e-15)
    # partial sums of the defining series with an explicit remainder bound
    x, total = 2.0, 0.0
    for k in range(30):
        total += (-1) ** k * (x / 2) ** (2 * k + 3) / (math.factorial(k) * math.factorial(k + 3))
    val, err = bessel_j_with_error(3, x)
    assert abs(val - total) < 1e-12
    assert err < 1e-14


def test_bessel_frozen(oracle):
    for nu, x, ref in oracle["bessel_j"]:
        assert bessel_j(nu, x) == pytest.approx(ref, abs=2e-14), (nu, x)


def test_bessel_paths_agree_in_overlap():
    rng = np.random.default_rng(0)
    nu = rng.uniform(0, 10, 1000)
    x = rng.uniform(0, 20, 1000)
    for v, xv in zip(nu, x):
        assert abs(bessel_j(v, xv) - special.jv(v, xv)) < 1e-10


def test_bessel_ladder_matches_single_orders():
    x = np.array([0.0, 0.3, 5.0, 11.9, 12.1, 40.0, 150.0])
    vals, errs = bessel_j_ladder(0.5, 25, x)
    for k in range(25):
        np.testing.assert_allclose(vals[k], special.jv(0.5 + k, x), atol=1e-14)
    assert np.all(errs >= 0)


def test_bessel_series_error_bounds_truth():
    x = np.linspace(0.1, BESSEL_SERIES_MAX_X, 40)
    val, err = bessel_j_series(2.5, x)
    truth = np.array([float(mp.besselj(2.5, xv)) for xv in x])
    assert np.all(np.abs(val - truth) <= err + 1e-16)


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_j(-1, 1.0)
    with pytest.raises(DomainError):
        bessel_j(1, -1.0)


def test_gegenbauer_examples():
    assert gegenbauer(0, 1.5, 0.3) == 1.0
    assert gegenbauer(1, 1.5, 0.3) == pytest.approx(0.9)
    assert gegenbauer(2, 1.0, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_gegenbauer_frozen(oracle):
    for k, lam, w, ref in oracle["gegenbauer"]:
        assert gegenbauer(k, lam, w) == pytest.approx(ref, rel=1e-12, abs=1e-15)


def _defining_sum(k, lam, w):
    """Explicit Gamma-ratio sum, at 40 digits because its terms cancel."""
    with mp.workdps(40):
        lam, w = mp.mpf(lam), mp.mpf(w)
        return float(mp.fsum((-1) ** j * mp.gamma(k - j + lam) / (mp.gamma(lam) * mp.factorial(j)
                             * mp.factorial(k - 2 * j)) * (2 * w) ** (k - 2 * j) for j in range(k // 2 + 1)))


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5, 2.0])
def test_gegenbauer_recurrence_equals_defining_sum(lam):
    for w in np.round(np.arange(-0.9, 0.91, 0.1), 12):
        table = gegenbauer_table(30, lam, w)
        for k in range(31):
            ref = _defining_sum(k, lam, w)
            assert abs(table[k] - ref) <= 1e-11 * max(abs(ref), 1e-300) + 1e-15, (k, lam, w)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_generating_function(alpha):
    for t in (-0.5, 0.2, 0.5):
        for w in (-0.9, 0.0, 0.7):
            K = 80
            c = gegenbauer_table(K, alpha, w)
            partial = math.fsum(c * t ** np.arange(K + 1))
            bound = gegenbauer_table(K + 1, alpha, 1.0)[K + 1] * abs(t) ** (K + 1) / (1 - abs(t)) * 10
            assert abs(partial - (1 - 2 * w * t + t * t) ** (-alpha)) <= bound + 1e-14


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_poisson_kernel(lam):
    for t in (-0.5, 0.3, 0.5):
        for w in (-0.9, 0.1, 0.9):
            K = 80
            k = np.arange(K + 1)
            partial = math.fsum((k + lam) / lam * gegenbauer_table(K, lam, w) * t ** k)
            assert partial == pytest.approx((1 - t * t) / (1 - 2 * w * t + t * t) ** (lam + 1), abs=1e-13)


def test_gegenbauer_domain():
    with pytest.raises(DomainError):
        gegenbauer(2, 0.0, 0.3)
    with pytest.raises(DomainError):
        gegenbauer(2, 1.0, 1.5)


def test_chebyshev_examples(oracle):
    assert chebyshev_u(0, 0.37) == 1.0
    assert chebyshev_u(2, 1.0) == 3.0
    assert chebyshev_u(3, 0.5) == pytest.approx(-1.0, abs=1e-15)
    for k, w, ref in oracle["chebyshev_u"]:
        assert chebyshev_u(k, w) == pytest.approx(ref, rel=1e-13)


def test_mittag_leffler_examples():
    assert mittag_leffler(1, 1, 1 + 0j) == pytest.approx(math.e, rel=1e-15)
    for a, b in [(0.5, 1.0), (3.0, 2.5), (1.0, 0.2)]:
        assert mittag_leffler(a, b, 0j) == pytest.approx(1 / math.gamma(b), rel=1e-15)
    assert abs(mittag_leffler(2, 1, -math.pi ** 2 / 4)) < 1e-15


def test_prabhakar_examples(oracle):
    assert prabhakar(2, 1, 1, 1 + 0j) == pytest.approx(2 * math.e, rel=1e-15)
    assert prabhakar(1.7, 2.0, 3.0, 0j) == pytest.approx(1 / math.gamma(3.0), rel=1e-15)
    for d, a, b, z, ref in oracle["prabhakar"]:
        got = prabhakar(d, a, b, complex(*z))
        assert abs(got - complex(*ref)) <= 1e-13 * max(1.0, abs(complex(*ref))), (d, a, b, z)


def test_prabhakar_error_bounds_truth(oracle):
    for d, a, b, z, ref in oracle["prabhakar"]:
        val, err = prabhakar_with_error(d, a, b, complex(*z))
        assert abs(val - complex(*ref)) <= err + 4e-16 * abs(complex(*ref))


@given(st.floats(0.6, 4), st.floats(0.2, 6), st.complex_numbers(max_magnitude=8, allow_nan=False,
                                                                    allow_infinity=False))
def test_prabhakar_delta_one_is_mittag_leffler(alpha, beta, z):
    assert prabhakar(1.0, alpha, beta, z) == mittag_leffler(alpha, beta, z)


@given(st.floats(-20, 20), st.floats(-20, 20))
def test_mittag_leffler_exponential(x, y):
    z = complex(x, y)
    assert abs(mittag_leffler(1, 1, z) - cmath.exp(z)) <= 1e-13 * max(1.0, abs(cmath.exp(z)), math.exp(abs(z)) * 1e-3)


def test_mittag_leffler_vectorised():
    z = np.linspace(-5, 5, 11) + 1j
    np.testing.assert_allclose(mittag_leffler(1.0, 1.0, z), np.exp(z), rtol=1e-13)


def test_prabhakar_domain():
    with pytest.raises(DomainError):
        prabhakar(0.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        prabhakar(1.0, 1.0, 1.0, 1e5)


def test_series_policy_validation():
    with pytest.raises(ValueError):
        SeriesPolicy(max_terms=2)
    with pytest.raises(ValueError):
        SeriesPolicy(tail_tol=0.0)


@pytest.mark.parametrize("nu", [-0.9, -0.5, -1 / 6])
def test_bessel_negative_fractional_order(nu):
    import mpmath as mp
    x = np.array([0.3, 5.0, 30.0])
    v, e = bessel_j_with_error(nu, x)
    ref = np.array([float(mp.besselj(nu, xi)) for xi in x])
    assert np.all(np.abs(v - ref) <= np.maximum(e, 1e-15))
    with pytest.raises(DomainError):
        bessel_j(nu, 0.0)
    with pytest.raises(DomainError):
        bessel_j(-1.0, 1.0)
