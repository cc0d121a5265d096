import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rdfourier.errors import QuadratureFailure
from rdfourier.quadrature import QuadratureSpec, adaptive_gk, jacobi_rule


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rule="simpson")
    with pytest.raises(ValueError):
        QuadratureSpec(base_nodes=4)
    with pytest.raises(ValueError):
        QuadratureSpec(tol=1e-14)


def test_legendre_exact_for_polynomials():
    x, w = jacobi_rule(10, a=-1.0, b=3.0)
    assert np.sum(w * x ** 19) == pytest.approx((3 ** 20 - 1) / 20, rel=1e-14)


@given(st.floats(-0.9, 3), st.floats(-0.9, 3))
def test_jacobi_weight_integrates_beta_function(left, right):
    x, w = jacobi_rule(20, left, right, 0.0, 2.0)
    exact = 2 ** (1 + left + right) * math.gamma(1 + left) * math.gamma(1 + right) / math.gamma(2 + left + right)
    assert np.sum(w) == pytest.approx(exact, rel=1e-12)
    exact_x = 2 ** (2 + left + right) * math.gamma(2 + left) * math.gamma(1 + right) / math.gamma(3 + left + right)
    # scipy's weights lose a few digits as an endpoint exponent approaches -1 (2e-12 at -0.9)
    assert np.sum(w * x) == pytest.approx(exact_x, rel=1e-11)


def test_adaptive_gk_smooth_and_peaked():
    val, err = adaptive_gk(np.cos, 0.0, 10.0, 1e-12)
    assert abs(val - math.sin(10.0)) < 1e-12
    assert err < 1e-12
    val, _ = adaptive_gk(lambda x: 1 / (1e-4 + (x - 0.3) ** 2), 0.0, 1.0, 1e-10)
    exact = (math.atan(0.7 / 1e-2) + math.atan(0.3 / 1e-2)) / 1e-2
    assert abs(val - exact) < 1e-8


def test_adaptive_gk_vector_valued():
    val, _ = adaptive_gk(lambda x: np.stack([x, x * x + 0j], axis=-1), 0.0, 2.0, 1e-12)
    np.testing.assert_allclose(val, [2.0, 8 / 3], rtol=1e-14)


def test_adaptive_gk_failure():
    with pytest.raises(QuadratureFailure):
        adaptive_gk(lambda x: np.sign(np.sin(1 / np.maximum(x, 1e-300))), 0.0, 1.0, 1e-12, max_intervals=64)
