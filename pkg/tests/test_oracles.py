import math

import numpy as np
import pytest

from rdfourier.closedform2d import closed_form_kernel_m2
from rdfourier.errors import TailUnbounded
from rdfourier.kernel_core import DeformParams, PairGeometry
from rdfourier.laplace_domain import laplace_kernel_m2
from rdfourier.oracles import (convolution, identity_suite, numeric_laplace_forward,
                               numeric_laplace_forward_with_error, numeric_laplace_inverse, run_identities,
                               term_by_term_bound, truncation_horizon, verify_convolution, verify_shift_inversion,
                               verify_trig_sums)
from rdfourier.quadrature import QuadratureSpec
from rdfourier.specfun import bessel_j, prabhakar


def test_forward_examples():
    assert abs(numeric_laplace_forward(lambda t: np.exp(-t), 2.0) - 1 / 3) < 1e-10
    assert abs(numeric_laplace_forward(lambda t: bessel_j(0, t), 2.0) - 1 / math.sqrt(5)) < 1e-10
    f = lambda t: t ** 5 * prabhakar(2.0, 3.0, 6.0, 0.5 * t ** 3)
    exact = 2.0 ** -6 * (1 - 0.5 * 2.0 ** -3) ** -2
    assert abs(numeric_laplace_forward(f, 2.0) - exact) < 1e-10


def test_forward_complex_s_and_adaptive_rule():
    s = 1.5 + 2j
    exact = 1 / (s + 1)
    assert abs(numeric_laplace_forward(lambda t: np.exp(-t), s) - exact) < 1e-10
    gk = QuadratureSpec(rule="adaptive_gk", tol=1e-11)
    res = numeric_laplace_forward_with_error(lambda t: np.exp(-t), s, gk)
    assert abs(res.value - exact) <= max(res.error, 1e-12)


def test_forward_error_estimate_and_horizon():
    res = numeric_laplace_forward_with_error(lambda t: t * np.exp(-2 * t), 1.0)
    assert abs(res.value - 1 / 9) <= max(res.error, 1e-13)
    T = truncation_horizon(lambda t: np.exp(-t), 1.0, 1e-10)
    assert math.exp(-2 * T) < 1e-11
    with pytest.raises(TailUnbounded), np.errstate(over="ignore"):
        numeric_laplace_forward(lambda t: np.exp(2 * t), 1.0)


def test_inverse_examples():
    res = numeric_laplace_inverse(lambda s: 1 / (s + 1), 1.0)
    assert abs(res.value - math.exp(-1)) < 1e-8 and res.error < 1e-7
    p, g = DeformParams(2, 3), PairGeometry(1.0, 0.2)
    F = lambda s: laplace_kernel_m2(p, g, s)[0]
    res = numeric_laplace_inverse(F, 1.0, abscissa=g.z)
    assert abs(res.value - closed_form_kernel_m2(p, g).scalar) < 1e-5


def test_inverse_rejects_bad_time():
    with pytest.raises(ValueError):
        numeric_laplace_inverse(lambda s: 1 / (s + 1), 0.0)


@pytest.mark.parametrize("f,F", [
    (lambda t: np.exp(-t), lambda s: 1 / (s + 1)),
    (lambda t: bessel_j(0, t), lambda s: 1 / np.sqrt(s * s + 1)),
    (lambda t: t * np.exp(-2 * t), lambda s: 1 / (s + 2) ** 2),
])
def test_round_trip(f, F):
    for t in (0.5, 1.0, 2.0):
        fwd = lambda s: numeric_laplace_forward(f, s)
        assert abs(numeric_laplace_inverse(F, t, abscissa=0.0).value - f(t)) < 1e-5
        # the forward oracle itself is the transform being inverted
        assert abs(fwd(1.0 + 0.5j) - F(1.0 + 0.5j)) < 1e-9


def test_round_trip_through_forward_oracle():
    f = lambda t: t * np.exp(-2 * t)
    F = lambda s: numeric_laplace_forward(f, s, QuadratureSpec(tol=1e-11))
    G = np.vectorize(F, otypes=[complex])
    for t in (0.5, 1.0, 2.0):
        assert abs(numeric_laplace_inverse(G, t, abscissa=0.0).value - f(t)) < 1e-5


def test_trig_sums():
    assert verify_trig_sums(0.0, 1.3) == (0.0, 0.0)
    assert max(verify_trig_sums(0.5, math.pi / 3)) <= 1e-12
    assert max(verify_trig_sums(0.9, 0.1)) <= 1e-10
    with pytest.raises(ValueError):
        verify_trig_sums(0.99, 0.1)


def test_convolution():
    t = np.array([0.3, 1.0, 2.5])
    got = convolution(lambda u: np.exp(-u), lambda u: np.exp(-2 * u), t)
    assert np.max(np.abs(got - (np.exp(-t) - np.exp(-2 * t)))) < 1e-14
    for a, b, s in [(1.0, 2.5, 1.5), (0.5, 0.5, 2.0), (3.0, 0.2, 0.7)]:
        assert verify_convolution(a, b, s) < 1e-7


def test_shift_inversion_examples():
    assert verify_shift_inversion(0.0, 1.0, 1.0, 1.0) <= 1e-5
    assert verify_shift_inversion(1.0, 2.0, 0.5, 0.5) <= 1e-5


def test_shift_inversion_at_a_zero():
    # with a = 0 both sides equal the constant 1/alpha (the left side is 1/(s alpha))
    assert verify_shift_inversion(0.0, 0.0, 1.0, 1.0) <= 1e-8
    res = numeric_laplace_inverse(lambda s: 1 / (s * 1.0), 1.0)
    assert abs(res.value - 1.0) < 1e-8


def test_term_by_term_bound():
    for n in (3, 5, 7):
        for z in (0.5, 2.0, 6.0):
            b = term_by_term_bound(DeformParams(2, n), z)
            assert b.converges
            tail = b.partial_sums[-1] - b.partial_sums[-2]
            assert tail <= 1e-12 * b.partial_sums[-1]
    with pytest.raises(ValueError):
        term_by_term_bound(DeformParams(3, 3), 1.0)


def test_identity_suite_passes():
    rows = run_identities()
    assert len(rows) == len(identity_suite())
    assert len({r["anchor"] for r in rows}) == len(rows)
    failing = [r for r in rows if not r["pass"]]
    assert not failing, failing
