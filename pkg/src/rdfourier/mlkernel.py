"""Mittag-Leffler integral representations of the kernel.

In the variable q = s + r the Laplace form is a combination of
R^nu / (r q^{2 beta}) (1 - d+ q^-n)^-delta (1 - d- q^-n)^-delta with
d_pm = (-iz)^n e^{+-i theta} = -b_pm, delta = lambda + 1 and
beta = (n lambda + n_tilde)/2.  The q-part inverts to the Prabhakar
convolution g(tau) (``h_function`` with these parameters), and the shift pair

    L^-1[R^nu e^{-tau q} / r](t) = z^nu ((t-2tau)/t)^{nu/2} J_nu(z sqrt(t^2-2 t tau)) H(t-2tau)

turns the kernel at t = 1 into four integrals over tau in [0, 1/2]:

    scalar   = T_0 + (-1)^nt T_{2nt+2} + i w ((-1)^nt T_{2nt+1} - T_1)
    bivector = i ((-1)^nt T_{2nt+1} - T_1) / z
    T_nu     = int_0^{1/2} (1-2tau)^{nu/2} J_nu(z sqrt(1-2tau)) g(tau) dtau.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureFailure
from .kernel_core import DeformParams, KernelValue, PairGeometry
from .laplace_domain import MLParams
from .quadrature import QuadratureSpec, adaptive_gk, jacobi_rule
from .specfun import bessel_j_with_error, prabhakar_with_error

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class HFunctionSpec:
    """Convolution of two Prabhakar kernels t^{beta-1} E^delta_{n,beta}(b t^n).

    ``beta`` defaults to ``n * delta``.
    """

    delta: float
    n: int
    b_plus: complex
    b_minus: complex
    quadrature: QuadratureSpec = QuadratureSpec()
    beta: float | None = None

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError("delta must be positive")
        if self.n < 1:
            raise DomainError("n must be a positive integer")
        if self.beta is not None and not self.beta > 0:
            raise DomainError("beta must be positive")

    @property
    def beta_value(self) -> float:
        return self.n * self.delta if self.beta is None else self.beta


def _inner(spec: HFunctionSpec, tau: np.ndarray, nodes: int):
    """G(tau) = tau^{1-2beta} g(tau) on an N-point Gauss-Jacobi rule in v."""
    beta, n, delta = spec.beta_value, spec.n, spec.delta
    v, wv = jacobi_rule(nodes, beta - 1, beta - 1)
    tn = tau[..., None] ** n
    ep, errp = prabhakar_with_error(delta, n, beta, spec.b_plus * tn * v ** n)
    em, errm = prabhakar_with_error(delta, n, beta, spec.b_minus * tn * (1 - v) ** n)
    val = np.sum(wv * ep * em, axis=-1)
    err = np.sum(wv * (errp * np.abs(em) + errm * np.abs(ep)), axis=-1)
    scale = np.sum(wv * np.abs(ep * em), axis=-1)
    return val, err + 10 * _EPS * scale


def _inner_gk(spec: HFunctionSpec, tau: float):
    beta, n, delta = spec.beta_value, spec.n, spec.delta

    def f(u):
        sv = np.sin(np.pi * u / 2) ** 2
        jac = np.pi * (np.sin(np.pi * u / 2) * np.cos(np.pi * u / 2)) ** (2 * beta - 1)
        ep, _ = prabhakar_with_error(delta, n, beta, spec.b_plus * (tau * sv) ** n)
        em, _ = prabhakar_with_error(delta, n, beta, spec.b_minus * (tau * (1 - sv)) ** n)
        return jac * ep * em

    return adaptive_gk(f, 0.0, 1.0, spec.quadrature.tol / 4, initial=4)


def h_function_with_error(spec: HFunctionSpec, t):
    """h(t) and an absolute error estimate, vectorised over ``t``."""
    beta = spec.beta_value
    q = spec.quadrature
    ta = np.asarray(t, dtype=float)
    if np.any(ta < 0):
        raise DomainError("t must be non-negative")
    if 2 * beta < 1 and np.any(ta == 0):
        raise DomainError("h is singular at t = 0 when 2*beta < 1")
    with np.errstate(divide="ignore"):
        power = np.where(ta > 0, ta, 1.0) ** (2 * beta - 1)
    power = np.where(ta > 0, power, 1.0 if 2 * beta == 1 else 0.0)
    if q.rule == "adaptive_gk":
        flat = ta.ravel()
        out = np.empty(flat.shape, complex)
        errs = np.empty(flat.shape)
        for i, tv in enumerate(flat):
            out[i], errs[i] = _inner_gk(spec, tv)
        return (power * out.reshape(ta.shape), power * errs.reshape(ta.shape))
    nodes = q.base_nodes
    prev, _ = _inner(spec, ta, nodes)
    for _ in range(q.max_refinements):
        nodes *= 2
        cur, rnd = _inner(spec, ta, nodes)
        est = np.abs(cur - prev) + rnd
        if np.all(power * est <= q.tol):
            return power * cur, power * est
        prev = cur
    raise QuadratureFailure(f"h_function did not reach tol={q.tol} with {nodes} nodes")


def h_function(spec: HFunctionSpec, t):
    """Prabhakar convolution h(t) = int_0^t e(zeta) e'(t - zeta) d zeta."""
    val, _ = h_function_with_error(spec, t)
    return val.item() if np.ndim(t) == 0 else val


# ------------------------------------------------------------- kernel route

def _route_spec(n: int, lam: float, z: float, theta: float, quadrature: QuadratureSpec) -> HFunctionSpec:
    d = (-1j * z) ** n
    return HFunctionSpec(lam + 1, n, d * np.exp(1j * theta), d * np.exp(-1j * theta), quadrature,
                         beta=(n * lam + (n - 1) / 2) / 2)


def _tau_integrals(spec: HFunctionSpec, z: float, orders, nodes: int):
    """T_nu for each order on an N-node rule with weight tau^{2beta-1} on [0, 1/2]."""
    beta = spec.beta_value
    tau, wt = jacobi_rule(nodes, 2 * beta - 1, 0.0, 0.0, 0.5)
    inner_nodes = max(spec.quadrature.base_nodes, nodes // 2)
    g, gerr = _inner(spec, tau, inner_nodes)
    g2, gerr2 = _inner(spec, tau, 2 * inner_nodes)
    gdiff = np.abs(g2 - g) + gerr2
    x = z * np.sqrt(1 - 2 * tau)
    vals, errs = [], []
    for nu in orders:
        j, je = bessel_j_with_error(nu, x)
        base = (1 - 2 * tau) ** (nu / 2)
        vals.append(np.sum(wt * base * j * g2))
        errs.append(np.sum(wt * base * (je * np.abs(g2) + np.abs(j) * gdiff))
                    + 10 * _EPS * np.sum(np.abs(wt * base * j * g2)))
    return np.array(vals), np.array(errs)


def _integral_route(n: int, lam: float, geometry: PairGeometry, quadrature: QuadratureSpec) -> KernelValue:
    z, w = geometry.z, geometry.w
    if z <= 0:
        raise DomainError("the integral representation needs z > 0; use the series at z = 0")
    nt = (n - 1) // 2
    if n * lam + nt <= 0:
        raise DomainError("the integral representation needs n*lambda + n_tilde > 0")
    spec = _route_spec(n, lam, z, geometry.theta, quadrature)
    orders = (0, 1, 2 * nt + 1, 2 * nt + 2)
    sign = (-1) ** nt
    nodes = quadrature.base_nodes

    def assemble(t):
        t0, t1, t3, t4 = t
        return t0 + sign * t4 + 1j * w * (sign * t3 - t1), 1j * (sign * t3 - t1) / z

    prev, _ = _tau_integrals(spec, z, orders, nodes)
    for _ in range(quadrature.max_refinements):
        nodes *= 2
        cur, rnd = _tau_integrals(spec, z, orders, nodes)
        diff = np.abs(cur - prev) + rnd
        err_s = diff[0] + diff[3] + abs(w) * (diff[1] + diff[2])
        err_b = (diff[1] + diff[2]) / z
        if max(err_s, err_b) <= quadrature.tol:
            scal, biv = assemble(cur)
            return KernelValue(complex(scal), complex(biv), float(max(err_s, err_b)))
        prev = cur
    raise QuadratureFailure(f"kernel integral did not reach tol={quadrature.tol}")


def kernel_integral_m2(params: DeformParams, geometry: PairGeometry,
                       quadrature: QuadratureSpec = QuadratureSpec()) -> KernelValue:
    """m = 2 kernel from the Prabhakar convolution with delta = 1, beta = n_tilde/2."""
    if params.m != 2:
        raise DomainError("kernel_integral_m2 requires m = 2")
    return _integral_route(params.n, 0.0, geometry, quadrature)


def kernel_integral_general(params: DeformParams, geometry: PairGeometry,
                            quadrature: QuadratureSpec = QuadratureSpec(),
                            lam: float | None = None) -> KernelValue:
    """m > 2 kernel from the Prabhakar convolution with delta = lambda + 1.

    ``lam`` overrides the dimension-derived lambda (``lam = 0`` reproduces
    the m = 2 route).
    """
    lam = params.lam if lam is None else lam
    if lam < 0:
        raise DomainError("lambda must be non-negative")
    return _integral_route(params.n, lam, geometry, quadrature)


def integral_grid(params: DeformParams, z, w, quadrature: QuadratureSpec = QuadratureSpec()):
    """Integral route over arrays of (z, w).  Returns ``(scalar, bivector, error)``."""
    z, w = np.broadcast_arrays(np.asarray(z, float), np.asarray(w, float))
    scal = np.empty(z.shape, complex)
    biv = np.empty(z.shape, complex)
    err = np.empty(z.shape)
    for idx in np.ndindex(z.shape):
        v = _integral_route(params.n, params.lam, PairGeometry(z[idx], w[idx]), quadrature)
        scal[idx], biv[idx], err[idx] = v.scalar, v.bivector, v.error
    return scal, biv, err


def kernel_integral_rs_form(params: DeformParams, geometry: PairGeometry, nodes: int = 64) -> KernelValue:
    """Integral representation in the variable r - s, kept for comparison only.

    Uses h with beta = n(lambda+1), arguments b_pm, tau over [0, 1] and Bessel
    factors (1+2tau)^{-nu/2} J_nu(z sqrt(1+2tau)) with the constant
    e^{i pi n (lambda+1)}.  It does not reproduce the kernel: the r - s
    transform of h diverges because h grows like exp(z tau).
    """
    n, nt, lam = params.n, params.n_tilde, params.lam
    z, w = geometry.z, geometry.w
    b = MLParams.from_geometry(params, geometry)
    spec = HFunctionSpec(lam + 1, n, b.b_plus, b.b_minus, QuadratureSpec(base_nodes=nodes))
    tau, wt = jacobi_rule(nodes)
    hv = h_function(spec, tau)
    c3 = np.exp(1j * np.pi * n * (lam + 1))

    def part(nu):
        j, _ = bessel_j_with_error(nu, z * np.sqrt(1 + 2 * tau))
        return np.sum(wt * (1 + 2 * tau) ** (-nu / 2) * j * hv)

    nl = n * lam
    sign = (-1) ** nt
    scal = c3 * z ** (nl + 3 * nt + 2) * (part(nl + nt) + 1j * w * sign * part(nl + n + nt)
                                          - 1j * w * part(nl + nt + 1) + sign * part(nl + 3 * nt + 2))
    biv = -1j * c3 * z ** (nl + 3 * nt + 1) * (part(nl + nt + 1) - sign * part(nl + 3 * nt + 1))
    return KernelValue(complex(scal), complex(biv))
