"""Special functions: Bessel J of real order, Gegenbauer and Chebyshev-U
polynomials, two-parameter and Prabhakar Mittag-Leffler functions.

Series are accumulated in ``np.longdouble`` and every evaluation can report an
error bound (certified truncation tail plus a rounding estimate).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergence

LD_EPS = float(np.finfo(np.longdouble).eps)

# Above this argument the Bessel power series loses too much to cancellation
# and the Miller backward recurrence takes over.
BESSEL_SERIES_MAX_X = 12.0

# Practical Mittag-Leffler domain, measured as |z|**(1/alpha).  Beyond it the
# series cancellation exceeds double precision for arguments on the negative axis.
ML_SCALE_MAX = 40.0


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation controls for power series."""

    max_terms: int = 2000
    tail_tol: float = 1e-16
    overflow_guard: float = 1e300

    def __post_init__(self):
        if self.max_terms < 8:
            raise ValueError("max_terms must be at least 8")
        if not 0 < self.tail_tol < 1:
            raise ValueError("tail_tol must lie in (0, 1)")
        if self.overflow_guard <= 0:
            raise ValueError("overflow_guard must be positive")


DEFAULT_POLICY = SeriesPolicy()


def _scalar_or_array(value, like):
    return value.item() if np.ndim(like) == 0 else value


# ---------------------------------------------------------------- Bessel J

def _check_order(nu: float) -> None:
    if not (nu > -1 and math.isfinite(nu)):
        raise DomainError(f"order must be finite and > -1, got {nu}")


def bessel_j_series(nu: float, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Power series for J_nu(x) with the alternating tail bound.

    Returns ``(value, error)`` arrays with the shape of ``x``.  The error is
    the first omitted term (valid once terms decrease), a rounding estimate
    proportional to the sum of absolute terms, and the double-precision
    rounding of the leading Gamma factor and of the returned value.
    """
    _check_order(nu)
    xa = np.asarray(x, dtype=np.longdouble)
    if np.any(xa < 0) or not np.all(np.isfinite(xa)):
        raise DomainError("argument must be finite and non-negative")
    if nu < 0 and np.any(xa == 0):
        raise DomainError(f"J_nu is singular at x = 0 for nu = {nu} < 0")
    half = xa / 2
    h2 = half * half
    term = np.power(half, np.longdouble(nu)) / np.longdouble(math.gamma(nu + 1))
    total = term.copy()
    abs_total = np.abs(term)
    for k in range(1, policy.max_terms + 1):
        ratio = h2 / (k * (k + np.longdouble(nu)))
        term = -term * ratio
        if np.all((ratio < 1) & (np.abs(term) < policy.tail_tol)):
            break
        total += term
        abs_total += np.abs(term)
    else:
        raise NonConvergence(f"Bessel series for nu={nu} did not converge")
    err = (np.abs(term) + 4 * LD_EPS * abs_total * (1 + np.sqrt(np.longdouble(k)))
           + 2 * np.finfo(float).eps * np.abs(total))
    return total.astype(float), err.astype(float)


def _miller_start(count: int, xmax: float) -> int:
    top = max(count, math.ceil(xmax))
    return top + 20 + math.ceil(12 * (max(top, 1) / 2) ** (1 / 3))


def _bessel_miller(nu0: float, count: int, x: np.ndarray) -> np.ndarray:
    """Backward recurrence for J_{nu0+k}(x), k < count, with nu0 in [0, 1).

    Normalised by the Neumann-type identity
    sum_j (nu0+2j) Gamma(nu0+j)/j! J_{nu0+2j}(x) = (x/2)**nu0.
    """
    x = np.asarray(x, dtype=np.longdouble)
    top = _miller_start(count, float(np.max(x)))
    out = np.zeros((count,) + x.shape, dtype=np.longdouble)
    f_next = np.zeros_like(x)
    f = np.full_like(x, np.longdouble(1e-300))
    norm = np.zeros_like(x)
    big = np.longdouble(1e250)
    for k in range(top, -1, -1):
        if k % 2 == 0:
            j = k // 2
            if j == 0:
                a = math.gamma(nu0 + 1)
            else:
                a = (nu0 + 2 * j) * math.exp(math.lgamma(nu0 + j) - math.lgamma(j + 1))
            norm += np.longdouble(a) * f
        if k < count:
            out[k] = f
        if k == 0:
            break
        f_prev = (2 * (nu0 + k) / x) * f - f_next
        f_next, f = f, f_prev
        over = np.abs(f) > big
        if np.any(over):
            scale = np.where(over, 1 / big, np.longdouble(1))
            f = f * scale
            f_next = f_next * scale
            norm = norm * scale
            out[min(k, count):] *= scale
    return out * (np.power(x / 2, np.longdouble(nu0)) / norm)


def bessel_j_ladder(nu0: float, count: int, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """J_{nu0+k}(x) for k = 0..count-1 as an array of shape ``(count,) + x.shape``.

    Small arguments use the certified power series order by order; larger
    ones share a single Miller recurrence.  Returns ``(values, errors)``.
    """
    if count < 1:
        raise ValueError("count must be positive")
    shape = np.shape(x)
    xa = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if np.any(xa < 0) or not np.all(np.isfinite(xa)):
        raise DomainError("argument must be finite and non-negative")
    vals = np.zeros((count,) + xa.shape)
    errs = np.zeros((count,) + xa.shape)
    small = xa <= BESSEL_SERIES_MAX_X
    if np.any(small):
        xs = xa[small]
        for k in range(count):
            v, e = bessel_j_series(nu0 + k, xs, policy)
            vals[k, small] = v
            errs[k, small] = e
    if np.any(~small):
        base = nu0 if nu0 >= 0 else nu0 + 1
        frac = base - math.floor(base)
        shift = int(round(base - frac))
        xl = xa[~small]
        ladder = _bessel_miller(frac, count + shift + 1, xl)[shift:]
        if nu0 < 0:
            # one downward step J_{nu-1} = (2 nu / x) J_nu - J_{nu+1}, stable for J
            below = (2 * (nu0 + 1) / xl) * ladder[0] - ladder[1]
            ladder = np.concatenate([below[None], ladder])
        vals[:, ~small] = ladder[:count].astype(float)
        errs[:, ~small] = 64 * np.finfo(float).eps * np.maximum(np.abs(vals[:, ~small]), 1e-3)
    return vals.reshape((count,) + shape), errs.reshape((count,) + shape)


def bessel_j_with_error(nu: float, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """J_nu(x) and an absolute error estimate, vectorised over ``x``."""
    _check_order(nu)
    frac = nu - math.floor(nu)
    count = int(round(nu - frac)) + 1
    if nu < 0:
        frac, count = nu, 1
    xa = np.asarray(x, dtype=float)
    small = xa <= BESSEL_SERIES_MAX_X
    if np.all(small):
        return bessel_j_series(nu, xa, policy)
    shape = xa.shape
    xa = np.atleast_1d(xa)
    small = np.atleast_1d(small)
    vals = np.empty(xa.shape)
    errs = np.empty(xa.shape)
    v, e = bessel_j_series(nu, np.where(small, xa, 1.0), policy)
    vals[...] = v
    errs[...] = e
    lv, le = bessel_j_ladder(frac, count, xa[~small], policy)
    vals[~small] = lv[-1]
    errs[~small] = le[-1]
    return vals.reshape(shape), errs.reshape(shape)


def bessel_j(nu: float, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Bessel function of the first kind J_nu(x) for nu > -1, x >= 0 (x > 0 when nu < 0)."""
    val, _ = bessel_j_with_error(nu, x, policy)
    return _scalar_or_array(val, x)


# ------------------------------------------------------------ polynomials

def _check_w(w):
    wa = np.asarray(w, dtype=float)
    if np.any(np.abs(wa) > 1) or not np.all(np.isfinite(wa)):
        raise DomainError("w must lie in [-1, 1]")
    return wa


def gegenbauer_table(kmax: int, lam: float, w) -> np.ndarray:
    """C_k^lam(w) for k = 0..kmax, shape ``(kmax+1,) + w.shape``."""
    if lam == 0 or lam <= -0.5:
        raise DomainError("lambda must be > -1/2 and nonzero; use chebyshev_u for lambda = 0")
    wa = _check_w(w)
    out = np.empty((kmax + 1,) + wa.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 2 * lam * wa
    for k in range(2, kmax + 1):
        out[k] = (2 * wa * (k + lam - 1) * out[k - 1] - (k + 2 * lam - 2) * out[k - 2]) / k
    return out


def gegenbauer(k: int, lam: float, w):
    """Gegenbauer polynomial C_k^lam(w) by the three-term recurrence."""
    if k < 0:
        raise DomainError("degree must be non-negative")
    return _scalar_or_array(gegenbauer_table(k, lam, w)[k], w)


def chebyshev_u_table(kmax: int, w) -> np.ndarray:
    """U_k(w) for k = 0..kmax; U_k(cos t) = sin((k+1)t)/sin t, regular at w = +-1."""
    wa = _check_w(w)
    out = np.empty((kmax + 1,) + wa.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 2 * wa
    for k in range(2, kmax + 1):
        out[k] = 2 * wa * out[k - 1] - out[k - 2]
    return out


def chebyshev_u(k: int, w):
    """Chebyshev polynomial of the second kind U_k(w)."""
    if k < 0:
        raise DomainError("degree must be non-negative")
    return _scalar_or_array(chebyshev_u_table(k, w)[k], w)


# ------------------------------------------------------- Mittag-Leffler

def _gamma_step(alpha: float, beta: float, k: int) -> float:
    """Gamma(alpha*k+beta) / Gamma(alpha*(k+1)+beta)."""
    x = alpha * k + beta
    if float(alpha).is_integer() and alpha <= 16:
        return 1.0 / math.prod(x + j for j in range(int(alpha)))
    return math.exp(math.lgamma(x) - math.lgamma(x + alpha))


def prabhakar_with_error(delta: float, alpha: float, beta: float, z,
                         policy: SeriesPolicy = DEFAULT_POLICY):
    """Prabhakar function E^delta_{alpha,beta}(z) and a certified error bound.

    The series sum (delta)_k z^k / (k! Gamma(alpha k + beta)) is truncated
    once the geometric majorant |z| max(1, (delta+k)/(k+1)) Gamma ratio,
    which is non-increasing in k, has dropped below 1/2 and bounds the tail
    below ``policy.tail_tol``.  Vectorised over ``z``.
    """
    for name, val in (("delta", delta), ("alpha", alpha), ("beta", beta)):
        if not (val > 0 and math.isfinite(val)):
            raise DomainError(f"{name} must be a positive real, got {val}")
    za = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(za)):
        raise DomainError("argument must be finite")
    zmax = float(np.max(np.abs(za))) if za.size else 0.0
    if zmax ** (1 / alpha) > ML_SCALE_MAX:
        raise DomainError(
            f"|z|**(1/alpha) = {zmax ** (1 / alpha):.3g} exceeds the series domain {ML_SCALE_MAX}")
    zl = za.astype(np.clongdouble)
    term = np.full(za.shape, np.longdouble(1) / np.longdouble(math.gamma(beta)), dtype=np.clongdouble)
    total = term.copy()
    abs_total = np.abs(term)
    for k in range(policy.max_terms):
        g = _gamma_step(alpha, beta, k)
        majorant = zmax * max(1.0, (delta + k) / (k + 1)) * g
        if majorant < 0.5:
            tail = 2 * np.abs(term) * majorant
            if np.all(tail < policy.tail_tol):
                err = tail + 8 * LD_EPS * abs_total * (1 + math.sqrt(k + 1))
                return total.astype(complex), err.astype(float)
        term = term * zl * np.longdouble((delta + k) / (k + 1) * g)
        if np.any(np.abs(term) > policy.overflow_guard):
            raise NonConvergence("Mittag-Leffler series overflowed")
        total += term
        abs_total += np.abs(term)
    raise NonConvergence(f"Mittag-Leffler series did not converge in {policy.max_terms} terms")


def prabhakar(delta: float, alpha: float, beta: float, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """Prabhakar generalised Mittag-Leffler function E^delta_{alpha,beta}(z)."""
    val, _ = prabhakar_with_error(delta, alpha, beta, z, policy)
    return _scalar_or_array(val, z)


def mittag_leffler(alpha: float, beta: float, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z)."""
    return prabhakar(1.0, alpha, beta, z, policy)
