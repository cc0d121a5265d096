import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rdfourier.closedform2d import closed_form_grid
from rdfourier.errors import DomainError, NonFiniteResult
from rdfourier.kernel_core import (DeformParams, GeneralDeformParams, KernelEvalPoint, KernelValue,
                                   PairGeometry, series_general_grid, series_grid, series_kernel,
                                   series_kernel_general, series_kernel_m2, series_kernel_n,
                                   series_m2_grid, series_n_grid)
from rdfourier.mlkernel import kernel_integral_general
from rdfourier.specfun import SeriesPolicy


def _pt(z, w, t=1.0):
    return KernelEvalPoint(PairGeometry(z, w), t)


def test_derived_constants():
    p = DeformParams(4, 3)
    assert p.c == pytest.approx(-2 / 3)
    assert p.lam == 1.0
    assert p.mu == pytest.approx(1 + (p.m - 1) / (1 + p.c))
    assert p.n_tilde == 1
    assert DeformParams(3, 1).classical
    g = GeneralDeformParams(4, p.c)
    assert g.mu == pytest.approx(p.mu)


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, -1), (2.5, 3)])
def test_invalid_params(m, n):
    with pytest.raises(DomainError):
        DeformParams(m, n)


def test_geometry():
    g = PairGeometry.from_vectors([1.0, 0.0], [0.0, 2.0])
    assert (g.z, g.w) == (2.0, 0.0)
    assert g.theta == pytest.approx(math.pi / 2)
    with pytest.raises(DomainError):
        PairGeometry(1.0, 1.2)
    with pytest.raises(DomainError):
        PairGeometry(-1.0, 0.0)
    with pytest.raises(NonFiniteResult):
        KernelValue(complex("nan"), 0j)


def test_m2_frozen(oracle):
    for n, z, w, s, b in oracle["kernel_m2"]:
        v = series_kernel_m2(DeformParams(2, n), _pt(z, w))
        assert abs(v.scalar - complex(*s)) <= max(v.error, 1e-15), (n, z, w)
        assert abs(v.bivector - complex(*b)) <= max(v.error, 1e-15), (n, z, w)
        assert v.error < 1e-12


def test_n_frozen(oracle):
    for m, n, z, w, s, b in oracle["kernel_n"]:
        v = series_kernel_n(DeformParams(m, n), _pt(z, w))
        assert abs(v.scalar - complex(*s)) <= max(v.error, 1e-15), (m, n, z, w)
        assert abs(v.bivector - complex(*b)) <= max(v.error, 1e-15), (m, n, z, w)


def test_general_frozen(oracle):
    for m, c, z, w, s, b in oracle["kernel_general"]:
        v = series_kernel_general(GeneralDeformParams(m, c), _pt(z, w))
        assert abs(v.scalar - complex(*s)) <= max(v.error, 1e-15), (m, c, z, w)
        assert abs(v.bivector - complex(*b)) <= max(v.error, 1e-15), (m, c, z, w)


def test_general_classical_example():
    v = series_kernel_general(GeneralDeformParams(4, 0.0), _pt(2.0, 0.5))
    assert abs(v.scalar - cmath.exp(-1j) / 2) < 1e-14
    assert abs(v.bivector) < 1e-14


def test_general_matches_n_form():
    a = series_kernel_general(GeneralDeformParams(4, 1 / 3 - 1), _pt(1.0, 0.2))
    b = series_kernel_n(DeformParams(4, 3), _pt(1.0, 0.2))
    assert a.max_abs_diff(b) < 1e-10


def test_n_form_matches_integral_route():
    p, g = DeformParams(3, 3), PairGeometry(0.5, -0.4)
    assert series_kernel_n(p, KernelEvalPoint(g)).max_abs_diff(kernel_integral_general(p, g)) < 1e-6


def test_z_zero_limits():
    v = series_kernel_m2(DeformParams(2, 3), _pt(0.0, 0.3))
    assert v.scalar == pytest.approx(0.5)
    for params in (DeformParams(2, 5), DeformParams(4, 3), DeformParams(3, 5)):
        at0 = series_kernel(params, _pt(0.0, 0.4))
        near = series_kernel(params, _pt(1e-7, 0.4))
        assert at0.max_abs_diff(near) < 1e-6
        t0 = series_kernel(params, _pt(0.0, 0.4, t=0.0))
        assert math.isfinite(abs(t0.scalar)) and math.isfinite(abs(t0.bivector))
    with pytest.raises(DomainError):
        series_kernel_general(GeneralDeformParams(3, 0.5), _pt(0.0, 0.2))


def test_bivector_continuous_at_theta_zero():
    p = DeformParams(2, 5)
    a = series_kernel_m2(p, _pt(2.0, 0.999999))
    b = series_kernel_m2(p, _pt(2.0, 1.0))
    assert abs(a.bivector - b.bivector) <= 1e-6


@pytest.mark.parametrize("params", [DeformParams(2, 3), DeformParams(2, 7), DeformParams(4, 5),
                                    DeformParams(3, 3)])
def test_truncation_certificate(params):
    z = np.array([0.3, 1.0, 4.0, 8.0])
    w = np.array([-0.9, 0.1, 0.5, 1.0])
    base = series_grid(params, z, w)
    doubled = series_grid(params, z, w, terms=2 * base.terms)
    change = np.maximum(np.abs(base.scalar - doubled.scalar), np.abs(base.bivector - doubled.bivector))
    assert np.all(change <= base.error)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_classical_reduction(m):
    params = DeformParams(m, 1)
    z, w = np.meshgrid(np.linspace(0.0, 4.0, 9), np.linspace(-1, 1, 9))
    res = series_grid(params, z, w)
    lam = (m - 2) / 2
    expected = np.exp(-1j * z * w) / (2 ** lam * math.gamma(lam + 1))
    assert np.max(np.abs(res.scalar - expected)) < 1e-9
    assert np.max(np.abs(res.bivector)) < 1e-9


def test_random_scalar_matches_closed_form():
    rng = np.random.default_rng(0)
    z = rng.uniform(0.01, 8, 200)
    w = rng.uniform(-1, 1, 200)
    for n in (3, 5, 7):
        s = series_m2_grid(DeformParams(2, n), z, w).scalar
        c, _, _ = closed_form_grid(DeformParams(2, n), z, w)
        assert np.max(np.abs(s - c)) < 1e-8


@given(st.floats(0.0, 8.0), st.floats(-1.0, 1.0), st.floats(0.0, 3.0))
def test_grid_and_point_agree(z, w, t):
    params = DeformParams(2, 5)
    v = series_kernel_m2(params, _pt(z, w, t))
    g = series_m2_grid(params, np.array([z, 1.0]), np.array([w, 0.0]), t)
    # the grid truncates at the depth of its worst point, so agreement is to the certified error
    assert abs(v.scalar - g.scalar[0]) <= v.error and abs(v.bivector - g.bivector[0]) <= v.error


@given(st.floats(0.05, 6.0), st.floats(-1.0, 1.0))
def test_n_form_and_general_agree(z, w):
    a = series_n_grid(DeformParams(4, 3), z, w)
    b = series_general_grid(GeneralDeformParams(4, 1 / 3 - 1), z, w)
    assert abs(complex(a.scalar) - complex(b.scalar)) <= a.error + b.error + 1e-15
    assert abs(complex(a.bivector) - complex(b.bivector)) <= a.error + b.error + 1e-15


def test_policy_controls_terms():
    loose = series_grid(DeformParams(2, 3), 5.0, 0.3, policy=SeriesPolicy(tail_tol=1e-6))
    tight = series_grid(DeformParams(2, 3), 5.0, 0.3)
    assert loose.terms < tight.terms
    assert abs(complex(loose.scalar) - complex(tight.scalar)) <= float(loose.error)
