"""Independent numerical ground truth: forward and inverse Laplace transforms by
quadrature, and residual checks for the standalone identities the kernel
derivations rely on."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import binom

from .errors import QuadratureFailure, TailUnbounded
from .kernel_core import DeformParams
from .quadrature import QuadratureSpec, adaptive_gk, jacobi_rule
from .specfun import bessel_j, gegenbauer_table, mittag_leffler, prabhakar


class OracleResult(NamedTuple):
    value: complex
    error: float


def _vectorised(f: Callable) -> Callable:
    """Call ``f`` on an array, falling back to element-wise evaluation."""

    def g(t):
        t = np.asarray(t, float)
        try:
            out = np.asarray(f(t), complex)
            if out.shape == t.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([complex(f(float(x))) for x in t.ravel()]).reshape(t.shape)

    return g


# ------------------------------------------------------------ forward

_ENVELOPE_SAMPLES = 64
_MAX_HORIZON = 2.0 ** 14
_GROWTH = 1.25


def _envelope(f, sigma: float, lo: float, hi: float) -> float:
    tt = np.linspace(lo, hi, _ENVELOPE_SAMPLES)
    with np.errstate(over="ignore", invalid="ignore"):
        return float(np.max(np.abs(f(tt)) * np.exp(-sigma * tt)))


def _horizon_and_tail(f: Callable, sigma: float, tol: float) -> tuple[float, float]:
    f = _vectorised(f)
    T = 0.5
    prev = _envelope(f, sigma, T, _GROWTH * T)
    while T < _MAX_HORIZON:
        step = (_GROWTH - 1) * T
        T *= _GROWTH
        cur = _envelope(f, sigma, T, _GROWTH * T)
        if not math.isfinite(cur):
            raise TailUnbounded(f"|f(t) e^(-st)| is not finite near t = {T:g}")
        if cur == 0.0:
            return T, 0.0
        if prev > 0 and cur < prev:
            kappa = math.log(prev / cur) / step
            if cur / kappa < tol / 10:
                return T, cur / kappa
        prev = cur
    raise TailUnbounded(f"no exponential decay of |f(t) e^(-st)| detected up to t = {_MAX_HORIZON:g}")


def truncation_horizon(f: Callable, sigma: float, tol: float) -> float:
    """Smallest T on a geometric ladder with the fitted exponential tail beyond T below tol/10.

    The envelope E(T) = max |f e^{-sigma t}| over [T, g T] is fitted as
    e^{a - kappa T} from consecutive windows; the tail is bounded by E(T)/kappa.
    """
    return _horizon_and_tail(f, sigma, tol)[0]


def numeric_laplace_forward_with_error(f: Callable, s: complex,
                                       quadrature: QuadratureSpec = QuadratureSpec(),
                                       horizon: float | None = None) -> OracleResult:
    """Integral of e^{-st} f(t) over [0, inf) truncated at an envelope-fitted horizon.

    The error is the quadrature refinement change plus twice the fitted tail;
    with an explicit ``horizon`` the tail is the caller's responsibility.
    """
    f = _vectorised(f)
    s = complex(s)
    if horizon is None:
        T, tail = _horizon_and_tail(f, s.real, quadrature.tol)
    else:
        T, tail = float(horizon), 0.0
    tail *= 2

    def g(t):
        return np.exp(-s * t) * f(t)

    if quadrature.rule == "adaptive_gk":
        val, err = adaptive_gk(g, 0.0, T, quadrature.tol, initial=max(1, int(math.ceil(T))))
        return OracleResult(complex(val), float(err) + tail)
    x, w = jacobi_rule(quadrature.base_nodes)
    panels = max(1, int(math.ceil(T)))

    def composite(p):
        edges = np.linspace(0.0, T, p + 1)
        width = np.diff(edges)[:, None]
        nodes = edges[:-1, None] + width * x
        return complex(np.sum(g(nodes) * w * width))

    prev = composite(panels)
    for _ in range(quadrature.max_refinements):
        panels *= 2
        cur = composite(panels)
        err = abs(cur - prev)
        if err <= quadrature.tol:
            return OracleResult(cur, err + tail)
        prev = cur
    raise QuadratureFailure(f"forward Laplace quadrature did not reach tol={quadrature.tol}")


def numeric_laplace_forward(f: Callable, s: complex, quadrature: QuadratureSpec = QuadratureSpec(),
                            horizon: float | None = None) -> complex:
    return numeric_laplace_forward_with_error(f, s, quadrature, horizon).value


# ------------------------------------------------------------ inverse

_EULER_ORDER = 11
_MAX_NODES = 2 ** 14
_ALIAS_EXPONENT = 40.0


def numeric_laplace_inverse(F: Callable, t: float, contour: QuadratureSpec = QuadratureSpec(),
                            abscissa: float = 0.0) -> OracleResult:
    """Bromwich integral on Re s = abscissa + 1 by the trapezoid rule.

    The step h = pi/(L t) puts the aliasing error near e^{-40}; the
    conjugate-paired terms alternate in sign from one block of L terms to the
    next and the block partial sums are Euler-averaged.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    Fv = _vectorised_complex(F)
    c = abscissa + 1.0
    L = max(1, math.ceil(_ALIAS_EXPONENT / (2 * (c - abscissa) * t)))
    h = math.pi / (L * t)
    blocks = 16
    while True:
        count = (blocks + _EULER_ORDER + 2) * L
        if 2 * count + 1 > _MAX_NODES:
            raise QuadratureFailure(f"Bromwich sum needs more than {_MAX_NODES} nodes")
        k = np.arange(1, count + 1)
        y = k * h
        phase = np.exp(1j * y * t)
        a = Fv(c + 1j * y) * phase + Fv(c - 1j * y) / phase
        partial = complex(Fv(np.array([c + 0j]))[0]) + np.concatenate([[0], np.cumsum(a.reshape(-1, L).sum(axis=1))])
        e_now = _euler(partial, blocks)
        e_next = _euler(partial, blocks + 1)
        scale = math.exp(c * t) * h / (2 * math.pi)
        err = scale * abs(e_next - e_now) + math.exp(-_ALIAS_EXPONENT) * scale * abs(e_now)
        if err <= contour.tol or blocks >= 2 ** 10:
            if err > contour.tol:
                raise QuadratureFailure(f"Bromwich sum did not reach tol={contour.tol}")
            return OracleResult(complex(scale * e_next), float(err))
        blocks *= 2


def _euler(partial: np.ndarray, j: int) -> complex:
    weights = binom(_EULER_ORDER, np.arange(_EULER_ORDER + 1)) / 2 ** _EULER_ORDER
    return complex(np.sum(weights * partial[j:j + _EULER_ORDER + 1]))


def _vectorised_complex(F: Callable) -> Callable:
    def g(s):
        s = np.asarray(s, complex)
        try:
            out = F(s)
            if isinstance(out, tuple):
                out = out[0]
            out = np.asarray(out, complex)
            if out.shape == s.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([complex(F(complex(x))) for x in s.ravel()]).reshape(s.shape)

    return g


# ------------------------------------------------------------ identity checks

def _geometric_terms(r: float, tol: float = 1e-17) -> int:
    r = abs(r)
    if r == 0:
        return 0
    return max(1, math.ceil(math.log(tol * (1 - r)) / math.log(r)))


def verify_trig_sums(r: float, x: float) -> tuple[float, float]:
    """Residuals of sum r^k cos kx = (1 - r cos x)/(1 - 2r cos x + r^2) and of
    sum r^k sin kx = r sin x/(1 - 2r cos x + r^2)."""
    if abs(r) > 0.95:
        raise ValueError("|r| must be at most 0.95")
    K = _geometric_terms(r)
    k = np.arange(K + 1)
    rk = r ** k
    cos_sum = math.fsum(rk * np.cos(k * x))
    sin_sum = math.fsum(rk * np.sin(k * x))
    den = 1 - 2 * r * math.cos(x) + r * r
    return abs(cos_sum - (1 - r * math.cos(x)) / den), abs(sin_sum - r * math.sin(x) / den)


def verify_poisson_kernel(lam: float, w: float, r: float) -> float:
    """Residual of (1 - r^2)/(1 - 2wr + r^2)^{lam+1} = sum (k+lam)/lam C_k^lam(w) r^k."""
    K = _geometric_terms(r) + 40
    c = gegenbauer_table(K, lam, w)
    k = np.arange(K + 1)
    series = math.fsum((k + lam) / lam * c * r ** k)
    return abs(series - (1 - r * r) / (1 - 2 * w * r + r * r) ** (lam + 1))


def verify_generating_function(lam: float, w: float, r: float) -> float:
    """Residual of (1 - 2wr + r^2)^{-lam} = sum C_k^lam(w) r^k."""
    K = _geometric_terms(r) + 40
    c = gegenbauer_table(K, lam, w)
    series = math.fsum(c * r ** np.arange(K + 1))
    return abs(series - (1 - 2 * w * r + r * r) ** (-lam))


def verify_gegenbauer_definition(k: int, lam: float, w: float) -> float:
    """Recurrence table against the explicit finite sum over Gamma ratios."""
    total = math.fsum((-1) ** j * math.gamma(k - j + lam) / (math.gamma(lam) * math.factorial(j)
                      * math.factorial(k - 2 * j)) * (2 * w) ** (k - 2 * j) for j in range(k // 2 + 1))
    return abs(gegenbauer_table(k, lam, w)[k] - total) / max(1.0, abs(total))


def verify_prabhakar_reduction(alpha: float, beta: float, z: complex) -> float:
    """E^1_{alpha,beta} against a plain term-by-term sum of z^k / Gamma(alpha k + beta)."""
    total, k, term = 0j, 0, 1.0
    while True:
        term = z ** k / math.gamma(alpha * k + beta)
        total += term
        if k > 5 and abs(term) < 1e-18 * max(1.0, abs(total)):
            break
        k += 1
    return abs(prabhakar(1.0, alpha, beta, z) - total) / max(1.0, abs(total))


def verify_exponential_pair(alpha: float, s: float, quadrature: QuadratureSpec = QuadratureSpec()) -> float:
    return abs(numeric_laplace_forward(lambda t: np.exp(-alpha * t), s, quadrature) - 1 / (s + alpha))


def verify_bessel_pair(nu: float, b: float, s: float, quadrature: QuadratureSpec = QuadratureSpec()) -> float:
    """L[J_nu(bt)] = b^{-nu} (sqrt(s^2+b^2) - s)^nu / sqrt(s^2+b^2)."""
    r = math.sqrt(s * s + b * b)
    exact = b ** (-nu) * (r - s) ** nu / r
    return abs(numeric_laplace_forward(lambda t: bessel_j(nu, b * t), s, quadrature) - exact)


def verify_prabhakar_pair(delta: float, alpha: float, beta: float, b: complex, s: float,
                          quadrature: QuadratureSpec = QuadratureSpec()) -> float:
    """L[t^{beta-1} E^delta_{alpha,beta}(b t^alpha)] = s^{-beta}(1 - b s^{-alpha})^{-delta}."""
    exact = s ** (-beta) * (1 - b * s ** (-alpha)) ** (-delta)

    def f(t):
        return t ** (beta - 1) * prabhakar(delta, alpha, beta, b * t ** alpha)

    return abs(numeric_laplace_forward(f, s, quadrature) - exact)


def verify_mittag_leffler_exponential(z: complex) -> float:
    return abs(mittag_leffler(1.0, 1.0, z) - cmath.exp(z)) / max(1.0, abs(cmath.exp(z)))


def convolution(f: Callable, g: Callable, t, nodes: int = 48):
    """int_0^t f(tau) g(t - tau) d tau by Gauss-Legendre, vectorised over t."""
    x, w = jacobi_rule(nodes)
    t = np.asarray(t, float)
    tau = t[..., None] * x
    return np.sum(w * f(tau) * g(t[..., None] - tau), axis=-1) * t


def verify_convolution(alpha: float, beta: float, s: float,
                       quadrature: QuadratureSpec = QuadratureSpec()) -> float:
    """Forward transform of e^{-alpha t} * e^{-beta t} against F G."""
    conv = lambda t: convolution(lambda u: np.exp(-alpha * u), lambda u: np.exp(-beta * u), t)
    return abs(numeric_laplace_forward(conv, s, quadrature) - 1 / ((s + alpha) * (s + beta)))


def verify_shift_inversion(nu: float, a: float, alpha: float, t: float,
                           contour: QuadratureSpec = QuadratureSpec()) -> float:
    """Residual of the shift pair with f = e^{-alpha t}, F = 1/(s + alpha):

    L^{-1}[(sqrt(s^2+a^2) - s)^nu / sqrt(s^2+a^2) F(sqrt(s^2+a^2) - s)](t)
        = (a^2 t)^{nu/2} int_0^inf (t + 2tau)^{-nu/2} J_nu(a sqrt(t^2 + 2 tau t)) f(tau) dtau.

    The left side uses the Bromwich oracle; the right side is itself a
    Laplace integral in tau at s = alpha and uses the forward oracle.
    """

    def lhs(s):
        r = np.sqrt(s * s + a * a)
        u = r - s
        return u ** nu / r / (u + alpha)

    left = numeric_laplace_inverse(lhs, t, contour).value

    def rhs(tau):
        return (a * a * t) ** (nu / 2) * (t + 2 * tau) ** (-nu / 2) * bessel_j(nu, a * np.sqrt(t * t + 2 * tau * t))

    right = numeric_laplace_forward(rhs, alpha, contour)
    return abs(left - right)


# ------------------------------------------------------------ term-by-term bound

@dataclass(frozen=True)
class TermBound:
    partial_sums: np.ndarray
    ratio: float

    @property
    def converges(self) -> bool:
        return self.ratio < 1 and bool(np.isfinite(self.partial_sums[-1]))


def term_by_term_bound(params: DeformParams, z: float, x0: float | None = None, terms: int = 60) -> TermBound:
    """Majorant of sum_k int_0^inf e^{-x0 t} |term_k(t)| dt for the m = 2 series.

    Uses |J_nu(zt)| <= (zt/2)^nu / Gamma(nu+1), whose transform is
    (z/2)^nu / x0^{nu+1}; the asymptotic ratio is (z/(2 x0))^n.
    """
    if params.m != 2:
        raise ValueError("term_by_term_bound covers the m = 2 series")
    x0 = z + 1.0 if x0 is None else x0
    n, nt = params.n, params.n_tilde

    def g(nu):
        return math.exp(nu * math.log(z / 2) - (nu + 1) * math.log(x0)) if nu >= 0 else 0.0

    terms_v = []
    for k in range(terms + 1):
        weight = z ** (-nt) * (1 + k / z)
        terms_v.append(weight * (g(k * n + nt) + (g(k * n - nt) if k else 0.0)))
    return TermBound(np.cumsum(terms_v), (z / (2 * x0)) ** n)


# ------------------------------------------------------------ registry

@dataclass(frozen=True)
class Identity:
    anchor: str
    check: Callable[[], float]
    tol: float

    def run(self) -> dict:
        residual = float(self.check())
        return {"anchor": self.anchor, "residual": residual, "pass": residual <= self.tol}


def identity_suite(quadrature: QuadratureSpec = QuadratureSpec(tol=1e-11)) -> list[Identity]:
    """Every standalone identity with its declared tolerance."""
    return [
        Identity("trig_sums_r0.5", lambda: max(verify_trig_sums(0.5, math.pi / 3)), 1e-12),
        Identity("trig_sums_r0.9", lambda: max(verify_trig_sums(0.9, 0.1)), 1e-10),
        Identity("poisson_kernel", lambda: verify_poisson_kernel(1.5, 0.3, 0.5), 1e-12),
        Identity("gegenbauer_generating_function", lambda: verify_generating_function(1.0, -0.4, 0.6), 1e-12),
        Identity("gegenbauer_definition", lambda: verify_gegenbauer_definition(9, 0.5, 0.7), 1e-12),
        Identity("prabhakar_reduction", lambda: verify_prabhakar_reduction(3.0, 2.0, 1.5 - 0.5j), 1e-14),
        Identity("mittag_leffler_exponential", lambda: verify_mittag_leffler_exponential(2.0 + 1.0j), 1e-13),
        Identity("laplace_pair_exponential", lambda: verify_exponential_pair(1.0, 2.0, quadrature), 1e-9),
        Identity("laplace_pair_bessel", lambda: verify_bessel_pair(0.0, 1.0, 2.0, quadrature), 1e-9),
        Identity("laplace_pair_prabhakar", lambda: verify_prabhakar_pair(2.0, 3.0, 6.0, 0.5, 2.0, quadrature), 1e-9),
        Identity("convolution", lambda: verify_convolution(1.0, 2.5, 1.5, quadrature), 1e-7),
        Identity("shift_inversion_nu0", lambda: verify_shift_inversion(0.0, 1.0, 1.0, 1.0), 1e-5),
        Identity("shift_inversion_nu1", lambda: verify_shift_inversion(1.0, 2.0, 0.5, 0.5), 1e-5),
        Identity("term_by_term_bound", lambda: term_by_term_bound(DeformParams(2, 3), 4.0).ratio, 1.0 - 1e-12),
    ]


def run_identities(quadrature: QuadratureSpec = QuadratureSpec(tol=1e-11)) -> list[dict]:
    return [identity.run() for identity in identity_suite(quadrature)]
