"""Parameter records and the Bessel-Gegenbauer series of the deformed kernel.

The kernel is split as ``scalar + (x ^ y) * bivector``.  Every series takes
the auxiliary variable ``t`` inside the Bessel arguments (``t = 1`` gives the
kernel itself) and reports a certified truncation bound plus a rounding
estimate as ``KernelValue.error``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NonConvergence, NonFiniteResult
from .specfun import (DEFAULT_POLICY, LD_EPS, SeriesPolicy, bessel_j_ladder,
                      chebyshev_u_table, gegenbauer_table)


@dataclass(frozen=True)
class DeformParams:
    """Dimension ``m`` and odd ``n`` with 1 + c = 1/n; ``n = 1`` is the classical case."""

    m: int
    n: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"dimension m must be an integer >= 2, got {self.m}")
        if int(self.n) != self.n or self.n < 1 or self.n % 2 == 0:
            raise DomainError(f"n must be an odd positive integer, got {self.n}")

    @property
    def c(self) -> float:
        return 1.0 / self.n - 1.0

    @property
    def lam(self) -> float:
        return (self.m - 2) / 2

    @property
    def mu(self) -> float:
        return 1.0 + (self.m - 1) * self.n

    @property
    def n_tilde(self) -> int:
        return (self.n - 1) // 2

    @property
    def classical(self) -> bool:
        return self.n == 1


@dataclass(frozen=True)
class GeneralDeformParams:
    """Dimension ``m`` and an arbitrary deformation ``c > -1``."""

    m: int
    c: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"dimension m must be an integer >= 2, got {self.m}")
        if not (self.c > -1 and math.isfinite(self.c)):
            raise DomainError(f"c must be a finite real > -1, got {self.c}")

    @property
    def lam(self) -> float:
        return (self.m - 2) / 2

    @property
    def mu(self) -> float:
        return 1.0 + (self.m - 1) / (1 + self.c)

    def alpha(self, k: int) -> complex:
        """alpha_k = exp(-i pi k / (2(1+c))), with alpha_{-1} = 0."""
        if k == -1:
            return 0j
        angle = math.fmod(-math.pi * k / (2 * (1 + self.c)), 2 * math.pi)
        return cmath.exp(1j * angle)

    def gamma(self, k: int) -> float:
        return (2 / (1 + self.c)) * (k + self.lam) + (self.c + 2) / (1 + self.c)

    def order(self, k: int) -> float:
        """Bessel order gamma_k/2 - 1."""
        return self.gamma(k) / 2 - 1


@dataclass(frozen=True)
class PairGeometry:
    """Reduced arguments z = |x||y| and w = <x, y>/z."""

    z: float
    w: float

    def __post_init__(self):
        if not (math.isfinite(self.z) and self.z >= 0):
            raise DomainError(f"z must be finite and non-negative, got {self.z}")
        if not (-1 <= self.w <= 1):
            raise DomainError(f"w must lie in [-1, 1], got {self.w}")

    @property
    def theta(self) -> float:
        return math.acos(self.w)

    @classmethod
    def from_vectors(cls, x, y) -> "PairGeometry":
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        z = float(np.linalg.norm(x) * np.linalg.norm(y))
        w = float(np.clip(x @ y / z, -1, 1)) if z > 0 else 1.0
        return cls(z, w)


@dataclass(frozen=True)
class KernelEvalPoint:
    geometry: PairGeometry
    t: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.t) and self.t >= 0):
            raise DomainError(f"t must be finite and non-negative, got {self.t}")


@dataclass(frozen=True)
class KernelValue:
    """Scalar part and bivector coefficient of the kernel, with an error estimate."""

    scalar: complex
    bivector: complex
    error: float = 0.0

    def __post_init__(self):
        if not (cmath.isfinite(self.scalar) and cmath.isfinite(self.bivector)):
            raise NonFiniteResult(f"non-finite kernel value {self.scalar}, {self.bivector}")

    def max_abs_diff(self, other: "KernelValue") -> float:
        return max(abs(self.scalar - other.scalar), abs(self.bivector - other.bivector))


class SeriesResult(NamedTuple):
    scalar: np.ndarray
    bivector: np.ndarray
    error: np.ndarray
    terms: int


# ----------------------------------------------------------------- helpers

def _phase(k: int, n: int) -> complex:
    """(-i)**(k n) without rounding drift."""
    return (1, -1j, -1, 1j)[(k * n) % 4]


def _log_bessel_bound(nu, logz, logt):
    """log of (z t/2)**nu / Gamma(nu+1), the majorant of |J_nu(z t)|."""
    return nu * (logz + logt - math.log(2)) - math.lgamma(nu + 1)


def _broadcast(z, w, t):
    z, w, t = np.broadcast_arrays(np.asarray(z, float), np.asarray(w, float), np.asarray(t, float))
    if np.any(z < 0) or np.any(t < 0) or not np.all(np.isfinite(z * t)):
        raise DomainError("z and t must be finite and non-negative")
    if np.any(np.abs(w) > 1):
        raise DomainError("w must lie in [-1, 1]")
    return z, w, t


class _Tail:
    """Truncation selection from per-k term majorants given in log space."""

    def __init__(self, policy: SeriesPolicy):
        self.policy = policy

    def pick(self, log_bound, k0: int = 1) -> tuple[int, np.ndarray]:
        """Smallest K with majorants below tolerance and decaying by 1/2 per step.

        ``log_bound(k)`` returns the log-majorant of term k.  Returns K (last
        included term) and the tail bound 2*B_{K+1}.
        """
        tol = self.policy.tail_tol
        prev = log_bound(k0)
        for k in range(k0 + 1, self.policy.max_terms):
            cur = log_bound(k)
            with np.errstate(invalid="ignore"):
                ratio_ok = np.all((cur - prev <= -math.log(2)) | (cur == -np.inf))
            if ratio_ok and np.all(cur < math.log(tol / 4)):
                return k - 1, 2 * np.exp(cur)
            prev = cur
        raise NonConvergence(f"series did not reach tail_tol within {self.policy.max_terms} terms")


_ORIGIN_ZT = 1e-17


def _near_origin(z, t):
    """Points where the leading-order limit is exact to double rounding.

    The first correction is relative O(z t); below 1e-17 it is invisible while
    the prefactor z^{-p} would overflow against underflowing Bessel values.
    """
    return (z == 0) | (z * t < _ORIGIN_ZT)


def _safe_logs(z, t):
    with np.errstate(divide="ignore"):
        return np.log(np.where(z > 0, z, 1.0)), np.log(t)


# --------------------------------------------------------------- m = 2

def series_m2_grid(params: DeformParams, z, w, t=1.0, policy: SeriesPolicy = DEFAULT_POLICY,
                   terms: int | None = None):
    """Vectorised m = 2 series.  Returns ``(scalar, bivector, error)`` arrays."""
    if params.m != 2:
        raise DomainError("series_m2_grid requires m = 2")
    z, w, t = _broadcast(z, w, t)
    n, nt = params.n, params.n_tilde
    zero = _near_origin(z, t)
    zs = np.where(zero, 1.0, z)
    logz, logt = _safe_logs(zs, t)

    def log_bound(k):
        lead = _log_bessel_bound(k * n + nt, logz, logt)
        low = _log_bessel_bound(k * n - nt, logz, logt)
        pair = np.logaddexp(lead, low) - nt * logz
        return pair + np.maximum(0.0, math.log(k) - logz)

    kmax, tail = _Tail(policy).pick(log_bound)
    if terms is not None:
        kmax = max(kmax, terms)
    x = zs * t
    ladder, lerr = bessel_j_ladder(0.0, kmax * n + nt + 1, x, policy)
    theta = np.arccos(w)
    u = chebyshev_u_table(max(kmax - 1, 0), w)
    sign = (-1) ** nt
    scal = np.zeros(z.shape, complex)
    biv = np.zeros(z.shape, complex)
    absum = np.zeros(z.shape)
    jerr = np.zeros(z.shape)
    for k in range(kmax + 1):
        ph = _phase(k, n)
        jp = ladder[k * n + nt]
        ep = lerr[k * n + nt]
        ck = np.cos(k * theta)
        if k == 0:
            scal += ph * jp
            absum += np.abs(jp)
            jerr += ep
            continue
        jm = ladder[k * n - nt]
        em = lerr[k * n - nt]
        scal += ph * (jp + sign * jm) * ck
        term_b = ph * (jp - sign * jm) * u[k - 1]
        biv += term_b
        absum += np.abs(jp) + np.abs(jm) + np.abs(term_b) / zs
        jerr += (ep + em) * (1 + np.abs(u[k - 1]) / zs)
    scal *= zs ** (-nt)
    biv *= -zs ** (-nt - 1)
    err = tail + (4 * LD_EPS + 2 * np.finfo(float).eps) * absum * zs ** (-nt) * (kmax + 1) \
        + jerr * zs ** (-nt)
    if np.any(zero):
        scal = np.where(zero, t ** nt / (2 ** nt * math.factorial(nt)), scal)
        lead = -1j * (t / 2) ** (nt + 1) / math.factorial(nt + 1)
        biv = np.where(zero, 0.0 if nt == 0 and params.n == 1 else lead, biv)
        err = np.where(zero, (2 * z * t + 4 * np.finfo(float).eps) * (np.abs(scal) + np.abs(biv)), err)
    return SeriesResult(scal, biv, err, kmax)


# ------------------------------------------------------- m > 2, 1+c = 1/n

def series_n_grid(params: DeformParams, z, w, t=1.0, policy: SeriesPolicy = DEFAULT_POLICY,
                  terms: int | None = None):
    """Vectorised series for m > 2 with Bessel orders nk + n lam +- n_tilde."""
    if params.m <= 2:
        raise DomainError("series_n_grid requires m > 2; use series_m2_grid")
    z, w, t = _broadcast(z, w, t)
    n, nt, lam = params.n, params.n_tilde, params.lam
    p = n * lam + nt
    base = n * lam - nt
    zero = _near_origin(z, t)
    zs = np.where(zero, 1.0, z)
    logz, logt = _safe_logs(zs, t)
    i_n1 = 1j ** (n - 1)
    lg_c = lambda a, k: math.lgamma(k + 2 * a) - math.lgamma(2 * a) - math.lgamma(k + 1)

    def log_bound(k):
        scal_b = np.logaddexp(math.log((k + 2 * lam) / (2 * lam)) + _log_bessel_bound(n * k + p, logz, logt),
                              math.log(max(k, 1) / (2 * lam)) + _log_bessel_bound(n * k + base, logz, logt))
        biv_b = np.logaddexp(_log_bessel_bound(n * k + n * lam + 3 * nt + 1, logz, logt),
                             _log_bessel_bound(n * k + p + 1, logz, logt))
        return np.logaddexp(scal_b + lg_c(lam, k) - p * logz, biv_b + lg_c(lam + 1, k) - (p + 1) * logz)

    kmax, tail = _Tail(policy).pick(log_bound)
    if terms is not None:
        kmax = max(kmax, terms)
    count = n * kmax + 4 * nt + 3
    ladder, lerr = bessel_j_ladder(base, count, zs * t, policy)
    geg = gegenbauer_table(kmax, lam, w)
    geg1 = gegenbauer_table(kmax, lam + 1, w)
    scal = np.zeros(z.shape, complex)
    biv = np.zeros(z.shape, complex)
    abs_s = np.zeros(z.shape)
    abs_b = np.zeros(z.shape)
    err_s = np.zeros(z.shape)
    err_b = np.zeros(z.shape)
    ph_n = _phase(1, n)
    for k in range(kmax + 1):
        ph = _phase(k, n)
        off = n * k
        jp, ep = ladder[off + 2 * nt], lerr[off + 2 * nt]
        jm, em = ladder[off], lerr[off]
        j1, e1 = ladder[off + 2 * nt + 1], lerr[off + 2 * nt + 1]
        j3, e3 = ladder[off + 4 * nt + 1], lerr[off + 4 * nt + 1]
        a = (k + 2 * lam) / (2 * lam)
        b = k / (2 * lam)
        ts = ph * geg[k] * (a * jp + b * i_n1 * jm)
        tb = ph * geg1[k] * (ph_n * j3 + 1j * j1)
        scal += ts
        biv += tb
        abs_s += np.abs(geg[k]) * (a * np.abs(jp) + b * np.abs(jm))
        abs_b += np.abs(geg1[k]) * (np.abs(j3) + np.abs(j1))
        err_s += np.abs(geg[k]) * (a * ep + b * em)
        err_b += np.abs(geg1[k]) * (e3 + e1)
    scal *= zs ** (-p)
    biv *= -zs ** (-p - 1)
    rnd = (4 * LD_EPS + 2 * np.finfo(float).eps) * (kmax + 1)
    err = tail + (rnd * abs_s + err_s) * zs ** (-p) + (rnd * abs_b + err_b) * zs ** (-p - 1)
    if np.any(zero):
        scal = np.where(zero, (t / 2) ** p / math.gamma(p + 1), scal)
        coef = 1j + (ph_n if nt == 0 else 0)
        biv = np.where(zero, -coef * (t / 2) ** (p + 1) / math.gamma(p + 2), biv)
        err = np.where(zero, (2 * z * t + 4 * np.finfo(float).eps) * (np.abs(scal) + np.abs(biv)), err)
    return SeriesResult(scal, biv, err, kmax)


# ------------------------------------------------------------- general c

def series_general_grid(params: GeneralDeformParams, z, w, t=1.0,
                        policy: SeriesPolicy = DEFAULT_POLICY, terms: int | None = None):
    """Vectorised general-c series (any c > -1) for m > 2."""
    if params.m <= 2:
        raise DomainError("series_general_grid requires m > 2; use the m = 2 limit form")
    z, w, t = _broadcast(z, w, t)
    lam = params.lam
    nu0 = params.order(0)
    zero = z == 0
    zs = np.where(zero, 1.0, z)
    logz, logt = _safe_logs(z, t)
    lg_c = lambda a, k: math.lgamma(k + 2 * a) - math.lgamma(2 * a) - math.lgamma(k + 1)

    def log_bound(k):
        ak = _log_bessel_bound(params.order(k), logz, logt)
        bk = _log_bessel_bound(params.order(k - 1) + 1, logz, logt)
        scal_b = np.logaddexp(math.log((k + 2 * lam) / (2 * lam)) + ak, math.log(k / (2 * lam)) + bk)
        biv_b = np.logaddexp(ak, bk) + lg_c(lam + 1, k - 1)
        return np.logaddexp(scal_b + lg_c(lam, k) - nu0 * logz, biv_b - (nu0 + 1) * logz)

    kmax, tail = _Tail(policy).pick(log_bound)
    if terms is not None:
        kmax = max(kmax, terms)
    x = zs * t
    geg = gegenbauer_table(kmax, lam, w)
    geg1 = gegenbauer_table(kmax, lam + 1, w)
    scal = np.zeros(z.shape, complex)
    biv = np.zeros(z.shape, complex)
    absum = np.zeros(z.shape)
    jerr = np.zeros(z.shape)
    prev_j1 = np.zeros(z.shape)
    prev_e1 = np.zeros(z.shape)
    for k in range(kmax + 1):
        pair, perr = bessel_j_ladder(params.order(k), 2, x, policy)
        a_k = params.alpha(k) * pair[0]
        b_k = params.alpha(k - 1) * prev_j1
        scal += geg[k] * (a_k * (k + 2 * lam) / (2 * lam) - 1j * b_k * k / (2 * lam))
        if k >= 1:
            biv += (a_k + 1j * b_k) * geg1[k - 1]
            absum += np.abs(geg1[k - 1]) * (np.abs(pair[0]) + np.abs(prev_j1)) / zs
            jerr += np.abs(geg1[k - 1]) * (perr[0] + prev_e1) / zs
        weight = np.abs(geg[k]) * (k + 2 * lam) / (2 * lam)
        absum += weight * (np.abs(pair[0]) + np.abs(prev_j1))
        jerr += weight * (perr[0] + prev_e1)
        prev_j1, prev_e1 = pair[1], perr[1]
    scal *= zs ** (-nu0)
    biv *= -zs ** (-nu0 - 1)
    err = tail + ((4 * LD_EPS + 2 * np.finfo(float).eps) * (kmax + 1) * absum + jerr) * zs ** (-nu0)
    if np.any(zero):
        step = 1 / (1 + params.c)
        scal = np.where(zero, (t / 2) ** nu0 / math.gamma(nu0 + 1), scal)
        if step < 1 and np.any(zero & (t > 0)):
            raise DomainError("bivector part diverges at z = 0 for c > 0")
        coef = 1j + (params.alpha(1) if step == 1 else 0)
        biv = np.where(zero, -coef * (t / 2) ** (nu0 + 1) / math.gamma(nu0 + 2), biv)
        err = np.where(zero, 4 * np.finfo(float).eps * (np.abs(scal) + np.abs(biv)), err)
    return SeriesResult(scal, biv, err, kmax)


# ---------------------------------------------------------- point wrappers

def _pack(res) -> KernelValue:
    s, b, e, _ = res
    return KernelValue(complex(s), complex(b), float(e))


def series_kernel_m2(params: DeformParams, point: KernelEvalPoint,
                     policy: SeriesPolicy = DEFAULT_POLICY, terms: int | None = None) -> KernelValue:
    """m = 2 kernel from its Bessel series with cos(k theta) and U_{k-1}(w) weights."""
    g = point.geometry
    return _pack(series_m2_grid(params, g.z, g.w, point.t, policy, terms))


def series_kernel_n(params: DeformParams, point: KernelEvalPoint,
                    policy: SeriesPolicy = DEFAULT_POLICY, terms: int | None = None) -> KernelValue:
    """m > 2 kernel from the series specialised to 1 + c = 1/n."""
    g = point.geometry
    return _pack(series_n_grid(params, g.z, g.w, point.t, policy, terms))


def series_kernel_general(params: GeneralDeformParams, point: KernelEvalPoint,
                          policy: SeriesPolicy = DEFAULT_POLICY, terms: int | None = None) -> KernelValue:
    """m > 2 kernel for arbitrary c > -1 from the alpha_k, gamma_k series."""
    g = point.geometry
    return _pack(series_general_grid(params, g.z, g.w, point.t, policy, terms))


def series_kernel(params: DeformParams | GeneralDeformParams, point: KernelEvalPoint,
                  policy: SeriesPolicy = DEFAULT_POLICY, terms: int | None = None) -> KernelValue:
    """Dispatch to the m = 2, the 1+c = 1/n or the general-c series."""
    return _pack(series_grid(params, point.geometry.z, point.geometry.w, point.t, policy, terms))


def series_grid(params: DeformParams | GeneralDeformParams, z, w, t=1.0,
                policy: SeriesPolicy = DEFAULT_POLICY, terms: int | None = None):
    if isinstance(params, GeneralDeformParams):
        return series_general_grid(params, z, w, t, policy, terms)
    if params.m == 2:
        return series_m2_grid(params, z, w, t, policy, terms)
    return series_n_grid(params, z, w, t, policy, terms)
