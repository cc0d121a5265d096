"""The deformed transform on the plane by polar quadrature against the kernel."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, EnvelopeMissing, QuadratureFailure
from .kernel_core import DeformParams
from .methods import KernelMethod, kernel_grid
from .quadrature import QuadratureSpec, jacobi_rule

ANGULAR_NODES = 256
_MAX_RADIUS = 1e3


@dataclass(frozen=True)
class WeightedMeasure:
    """Weight h(r) = r^exponent and normalisation Gamma(m/2)/(2 pi^{m/2})."""

    exponent: float
    normalization: float

    @classmethod
    def from_params(cls, params: DeformParams) -> "WeightedMeasure":
        m, c = params.m, params.c
        exponent = 1 - (1 + m * c) / (1 + c)
        if params.classical:
            exponent = 0.0
        return cls(exponent, math.gamma(m / 2) / (2 * math.pi ** (m / 2)))

    def weight(self, r):
        return np.asarray(r, float) ** self.exponent


class TransformResult(NamedTuple):
    scalar: complex
    bivector: complex
    error: float
    radius: float


def truncation_radius(envelope: Callable[[float], float], measure: WeightedMeasure, tol: float) -> float:
    """Smallest R on a 1/4 grid with envelope(R) R^{1+exponent} < tol/10."""
    R = 0.25
    while R <= _MAX_RADIUS:
        if envelope(R) * R ** (1 + measure.exponent) < tol / 10:
            return R
        R += 0.25
    raise QuadratureFailure(f"envelope does not fall below tol/10 before r = {_MAX_RADIUS:g}")


def _polar_sum(f, y, params, method, quadrature, measure, R, radial_nodes):
    ry = float(np.hypot(*y))
    phi_y = math.atan2(y[1], y[0]) if ry > 0 else 0.0
    r, wr = jacobi_rule(radial_nodes, 0.0, 0.0, 0.0, R)
    j = np.arange(ANGULAR_NODES)
    rel = 2 * np.pi * j / ANGULAR_NODES
    phi = phi_y + rel
    # w = cos(phi - phi_y) takes ANGULAR_NODES/2 + 1 distinct values: evaluate those only
    half = ANGULAR_NODES // 2 + 1
    zz = np.multiply.outer(r * ry, np.ones(half))
    ww = np.broadcast_to(np.clip(np.cos(rel[:half]), -1.0, 1.0), zz.shape)
    ks, kb, ke = kernel_grid(params, method, zz, ww, quadrature)
    mirror = np.concatenate([np.arange(half), ANGULAR_NODES - np.arange(half, ANGULAR_NODES)])
    ks, kb, ke = ks[:, mirror], kb[:, mirror], ke[:, mirror]
    x = np.stack([np.multiply.outer(r, np.cos(phi)), np.multiply.outer(r, np.sin(phi))], axis=-1)
    fx = np.asarray(f(x), complex)
    if fx.shape != x.shape[:-1]:
        raise ValueError("f must map an array of points (..., 2) to values of shape (...)")
    # x ^ y coefficient: |x||y| sin(phi_y - phi)
    wedge = np.multiply.outer(r * ry, np.sin(-rel))
    jac = (wr * r * measure.weight(r))[:, None] * (2 * np.pi / ANGULAR_NODES) * measure.normalization
    scal = np.sum(jac * ks * fx)
    biv = np.sum(jac * kb * wedge * fx)
    kerr = np.sum(np.abs(jac * fx) * ke * (1 + np.abs(wedge)))
    return complex(scal), complex(biv), float(kerr)


def apply_transform_2d(f: Callable, y, params: DeformParams, kernel_method: KernelMethod | str = "series",
                       quadrature: QuadratureSpec = QuadratureSpec(tol=1e-10),
                       envelope: Callable[[float], float] | None = None) -> TransformResult:
    """Deformed transform of ``f`` at ``y`` for m = 2.

    ``f`` maps an array of points of shape (..., 2) to values of shape (...);
    ``envelope(r)`` bounds |f| on the circle of radius r and fixes the
    truncation radius.  The radial Gauss-Legendre rule is doubled until the
    change falls below ``quadrature.tol``; the angular rule is the
    ``ANGULAR_NODES``-point trapezoid rule.  The error adds the refinement
    change, the propagated kernel error and envelope(R) R^{1+exponent}.
    """
    if params.m != 2:
        raise DomainError("apply_transform_2d covers m = 2 only")
    if envelope is None:
        raise EnvelopeMissing("a decay envelope for f is required to truncate the radial integral")
    y = np.asarray(y, float)
    if y.shape != (2,):
        raise DomainError("y must be a point in the plane")
    kernel_method = KernelMethod(kernel_method)
    if kernel_method is KernelMethod.RESIDUES:
        raise DomainError("residue reconstruction degenerates at w = +-1; use series, closed_form or ml_integral")
    measure = WeightedMeasure.from_params(params)
    R = truncation_radius(envelope, measure, quadrature.tol)
    tail = envelope(R) * R ** (1 + measure.exponent)
    nodes = quadrature.base_nodes
    prev = _polar_sum(f, y, params, kernel_method, quadrature, measure, R, nodes)
    for _ in range(quadrature.max_refinements):
        nodes *= 2
        cur = _polar_sum(f, y, params, kernel_method, quadrature, measure, R, nodes)
        diff = max(abs(cur[0] - prev[0]), abs(cur[1] - prev[1]))
        if diff <= quadrature.tol:
            return TransformResult(cur[0], cur[1], diff + cur[2] + tail, R)
        prev = cur
    raise QuadratureFailure(f"radial quadrature did not reach tol={quadrature.tol}")
