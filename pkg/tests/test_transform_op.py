import math

import numpy as np
import pytest

from rdfourier.errors import DomainError, EnvelopeMissing
from rdfourier.kernel_core import DeformParams
from rdfourier.quadrature import QuadratureSpec
from rdfourier.transform_op import WeightedMeasure, apply_transform_2d, truncation_radius


def gaussian(a):
    return (lambda x: np.exp(-a * np.sum(x * x, axis=-1))), (lambda r: math.exp(-a * r * r))


def test_measure():
    m = WeightedMeasure.from_params(DeformParams(2, 1))
    assert m.exponent == 0 and m.normalization == pytest.approx(1 / (2 * math.pi))
    m3 = WeightedMeasure.from_params(DeformParams(2, 3))
    assert m3.exponent == pytest.approx(1 - (1 + 2 * (1 / 3 - 1)) / (1 / 3))
    assert m3.exponent == pytest.approx(2.0)
    assert WeightedMeasure.from_params(DeformParams(4, 1)).exponent == 0


def test_truncation_radius():
    _, env = gaussian(0.5)
    R = truncation_radius(env, WeightedMeasure(0.0, 1.0), 1e-10)
    assert env(R) * R < 1e-11 and env(R - 0.25) * (R - 0.25) >= 1e-11


@pytest.mark.parametrize("y", [(0.0, 0.0), (1.0, 0.0), (0.6, -1.2), (-1.4, 1.4)])
def test_classical_gaussian_fixed_point(y):
    f, env = gaussian(0.5)
    res = apply_transform_2d(f, y, DeformParams(2, 1), "series", envelope=env)
    assert abs(res.scalar - math.exp(-0.5 * (y[0] ** 2 + y[1] ** 2))) < 1e-6
    assert abs(res.bivector) < 1e-6


def test_linearity():
    f, env_f = gaussian(1.0)
    g = lambda x: x[..., 0] * np.exp(-0.7 * np.sum(x * x, axis=-1))
    env_g = lambda r: r * math.exp(-0.7 * r * r)
    p, y = DeformParams(2, 3), (0.8, 0.3)
    a, b = 0.7 - 0.2j, -1.3
    combo = lambda x: a * f(x) + b * g(x)
    env = lambda r: abs(a) * env_f(r) + abs(b) * env_g(r)
    # a shared truncation radius keeps the three quadratures on the same nodes
    tf = apply_transform_2d(f, y, p, envelope=env)
    tg = apply_transform_2d(g, y, p, envelope=env)
    tc = apply_transform_2d(combo, y, p, envelope=env)
    assert abs(tc.scalar - (a * tf.scalar + b * tg.scalar)) < 1e-10
    assert abs(tc.bivector - (a * tf.bivector + b * tg.bivector)) < 1e-10


def test_series_vs_closed_form():
    f, env = gaussian(1.0)
    p = DeformParams(2, 3)
    for y in [(0.5, 0.0), (1.0, 1.0)]:
        a = apply_transform_2d(f, y, p, "series", envelope=env)
        b = apply_transform_2d(f, y, p, "closed_form", envelope=env)
        assert abs(a.scalar - b.scalar) < 1e-6 and abs(a.bivector - b.bivector) < 1e-6


def test_method_independence_random_cases():
    rng = np.random.default_rng(0)
    for _ in range(10):
        a = rng.uniform(0.5, 1.2)
        c = rng.uniform(-1, 1, 2)
        n = int(rng.choice([3, 5]))
        y = rng.uniform(-1.5, 1.5, 2)
        f = lambda x, a=a, c=c: (1 + x @ c) * np.exp(-a * np.sum(x * x, axis=-1))
        env = lambda r, a=a, c=c: (1 + np.hypot(*c) * r) * math.exp(-a * r * r)
        p = DeformParams(2, n)
        s = apply_transform_2d(f, y, p, "series", envelope=env)
        k = apply_transform_2d(f, y, p, "closed_form", envelope=env)
        assert abs(s.scalar - k.scalar) <= 1e-6 and abs(s.bivector - k.bivector) <= 1e-6


def test_rotation_covariance():
    f, env = gaussian(0.8)
    p = DeformParams(2, 5)
    ring = [1.1 * np.array([math.cos(a), math.sin(a)]) for a in np.linspace(0, 2 * math.pi, 7)[:-1]]
    vals = [apply_transform_2d(f, y, p, "closed_form", envelope=env).scalar for y in ring]
    assert max(abs(v - vals[0]) for v in vals) < 1e-7


def test_errors():
    f, env = gaussian(1.0)
    with pytest.raises(EnvelopeMissing):
        apply_transform_2d(f, (0.0, 0.0), DeformParams(2, 3))
    with pytest.raises(DomainError):
        apply_transform_2d(f, (0.0, 0.0), DeformParams(3, 3), envelope=env)
    with pytest.raises(DomainError):
        apply_transform_2d(f, (0.0, 0.0), DeformParams(2, 3), "residues", envelope=env)
    with pytest.raises(ValueError):
        apply_transform_2d(lambda x: 1.0, (0.0, 0.0), DeformParams(2, 3), envelope=env)


@pytest.mark.slow
def test_ml_integral_method():
    f, env = gaussian(1.0)
    p, y = DeformParams(2, 3), (0.7, 0.2)
    q = QuadratureSpec(base_nodes=16, tol=1e-7)
    a = apply_transform_2d(f, y, p, "ml_integral", q, env)
    b = apply_transform_2d(f, y, p, "closed_form", q, env)
    assert abs(a.scalar - b.scalar) < 1e-6 and abs(a.bivector - b.bivector) < 1e-6


def test_error_estimate_covers_classical_fixed_point():
    f, env = gaussian(0.5)
    for y in [(0.0, 0.0), (1.0, 0.5), (2.0, 0.0)]:
        res = apply_transform_2d(f, y, DeformParams(2, 1), envelope=env)
        exact = math.exp(-0.5 * (y[0] ** 2 + y[1] ** 2))
        assert abs(res.scalar - exact) <= res.error
