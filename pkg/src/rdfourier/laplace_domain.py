"""Laplace-domain (in the auxiliary variable t) forms of the kernel.

Notation: r = sqrt(s^2 + z^2) (principal branch), q = s + r, R = r - s
(evaluated as z^2/q to avoid cancellation) and
D = q^n - 2 w (-i z)^n + (-1)^n R^n.  All operations require Re s > z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRoots, DomainError
from .kernel_core import DeformParams, KernelValue, PairGeometry


@dataclass(frozen=True)
class LaplacePoint:
    s: complex

    def r(self, z: float) -> complex:
        return complex(np.sqrt(complex(self.s) ** 2 + z * z))


@dataclass(frozen=True)
class MLParams:
    """b_pm = i^n e^{+-i theta} z^n."""

    b_plus: complex
    b_minus: complex

    @classmethod
    def from_geometry(cls, params: DeformParams, geometry: PairGeometry) -> "MLParams":
        base = (1j ** params.n) * geometry.z ** params.n
        return cls(base * np.exp(1j * geometry.theta), base * np.exp(-1j * geometry.theta))


def _as_s(s):
    return complex(s.s) if isinstance(s, LaplacePoint) else s


def _check_region(s, z):
    if np.any(np.real(s) <= z):
        raise DomainError(f"Laplace forms are evaluated for Re s > z = {z}")


class _Pieces:
    """Shared building blocks of the rational forms at one (n, z, w, s)."""

    def __init__(self, n: int, z: float, w: float, s):
        s = np.asarray(s, dtype=complex)
        _check_region(s, z)
        self.n, self.nt, self.z, self.w = n, (n - 1) // 2, z, w
        self.s = s
        self.r = np.sqrt(s * s + z * z)
        self.q = s + self.r
        self.R = z * z / self.q
        self.D = self.q ** n - 2 * w * (-1j * z) ** n + (-1) ** n * self.R ** n

    def dpow(self, delta: float):
        """D**delta; non-integer powers are split into principal factors."""
        if float(delta).is_integer():
            return self.D ** int(delta)
        theta = math.acos(self.w)
        u = (-1j * self.z / self.q) ** self.n
        return (self.q ** (self.n * delta) * (1 - u * np.exp(1j * theta)) ** delta
                * (1 - u * np.exp(-1j * theta)) ** delta)

    @property
    def q_num(self):
        """(s+r)^{nt+1} + (-1)^nt (r-s)^{nt+1}."""
        return self.q ** (self.nt + 1) + (-1) ** self.nt * self.R ** (self.nt + 1)

    @property
    def o_num(self):
        """(-1)^nt (r-s)^nt - (s+r)^nt."""
        return (-1) ** self.nt * self.R ** self.nt - self.q ** self.nt


def _pack(scal, biv) -> KernelValue | tuple:
    if np.ndim(scal) == 0:
        return KernelValue(complex(scal), complex(biv))
    return scal, biv


def laplace_kernel_m2(params: DeformParams, geometry: PairGeometry, s) -> KernelValue:
    """Laplace transform in t of the m = 2 kernel, in terms of r = sqrt(s^2+z^2).

    ``s`` may be a scalar, a ``LaplacePoint`` or an array; arrays return a
    ``(scalar, bivector)`` pair of arrays.
    """
    if params.m != 2:
        raise DomainError("laplace_kernel_m2 requires m = 2")
    p = _Pieces(params.n, geometry.z, geometry.w, _as_s(s))
    denom = p.r * p.dpow(1)
    scal = p.q_num / denom + 1j * geometry.w * geometry.z * p.o_num / denom
    biv = 1j * p.o_num / denom
    return _pack(scal, biv)


def laplace_kernel_general(params: DeformParams, geometry: PairGeometry, s) -> KernelValue:
    """Compact Laplace form for any m >= 2, with D raised to lambda + 1.

    The bivector carries i (O-numerator) / (r D^{lambda+1}), the sign that
    matches -L(z^{-mu/2} C_lambda) and the m = 2 form at lambda = 0.
    """
    p = _Pieces(params.n, geometry.z, geometry.w, _as_s(s))
    denom = p.r * p.dpow(params.lam + 1)
    scal = p.q_num / denom + 1j * geometry.w * geometry.z * p.o_num / denom
    biv = 1j * p.o_num / denom
    return _pack(scal, biv)


def laplace_terms_split(params: DeformParams, geometry: PairGeometry, s) -> dict:
    """The three transformed pieces: (1/2lam) z^.. A, (1/2) z^.. B and z^{-mu/2} C."""
    if params.lam <= 0:
        raise DomainError("the A/B/C split requires m > 2")
    p = _Pieces(params.n, geometry.z, geometry.w, _as_s(s))
    n, nt = p.n, p.nt
    d1 = p.dpow(params.lam + 1)
    d0 = p.dpow(params.lam)
    a = ((p.q ** n - (-1) ** n * p.R ** n) * (p.q ** (-nt) + (-1) ** nt * p.R ** (-nt))) / (2 * p.r * d1)
    b = (p.q ** (-nt) - (-1) ** nt * p.R ** (-nt)) / (2 * p.r * d0)
    c = 1j * (p.q ** nt - (-1) ** nt * p.R ** nt) / (p.r * d1)
    return {"A": a, "B": b, "C": c}


def laplace_terms_rewritten(params: DeformParams, geometry: PairGeometry, s) -> dict:
    """The same pieces with negative powers of q, R cleared via qR = z^2."""
    if params.lam <= 0:
        raise DomainError("the A/B/C split requires m > 2")
    p = _Pieces(params.n, geometry.z, geometry.w, _as_s(s))
    nt, z = p.nt, p.z
    d1 = p.dpow(params.lam + 1)
    d0 = p.dpow(params.lam)
    z2 = z ** (2 * nt)
    a = (((-1) ** nt * p.q ** (3 * nt + 1) + p.R ** (3 * nt + 1)) / (2 * p.r * z2 * d1)
         + p.q_num / (2 * p.r * d1))
    b = (p.R ** nt - (-1) ** nt * p.q ** nt) / (2 * p.r * z2 * d0)
    c = 1j * (p.q ** nt - (-1) ** nt * p.R ** nt) / (p.r * d1)
    return {"A": a, "B": b, "C": c}


def laplace_b_term_expanded(params: DeformParams, geometry: PairGeometry, s):
    """B-piece written over D^{lambda+1}; summed with A it gives the compact scalar."""
    p = _Pieces(params.n, geometry.z, geometry.w, _as_s(s))
    nt, z, w = p.nt, p.z, p.w
    d1 = p.dpow(params.lam + 1)
    return (p.q_num / (2 * p.r * d1) + 1j * w * z * p.o_num / (p.r * d1)
            - z ** (-2 * nt) * ((-1) ** nt * p.q ** (3 * nt + 1) + p.R ** (3 * nt + 1)) / (2 * p.r * d1))


# ------------------------------------------------------------ factorisation

def denominator_roots(n: int, z: float, w: float) -> np.ndarray:
    """Roots -i z cos((theta + 2 pi l)/n) of P_n."""
    theta = math.acos(w)
    return -1j * z * np.cos((theta + 2 * np.pi * np.arange(n)) / n)


def scalar_numerator_roots(n: int, z: float) -> np.ndarray:
    """Roots of Q_nt (degree nt), split by the parity of nt.

    For odd nt the roots are i z sin(l pi/(nt+1)) over the symmetric range
    |l| <= (nt-1)/2; indexing l = 0..nt instead repeats roots once nt >= 3.
    """
    nt = (n - 1) // 2
    if nt % 2 == 1:
        ls = np.arange(-(nt - 1) // 2, (nt - 1) // 2 + 1)
        return 1j * z * np.sin(ls * np.pi / (nt + 1))
    return 1j * z * np.cos(np.arange(1, nt + 1) * np.pi / (nt + 1))


def bivector_numerator_roots(n: int, z: float) -> np.ndarray:
    """Roots of O_{nt-1} (degree nt-1)."""
    nt = (n - 1) // 2
    if nt == 0:
        return np.zeros(0, complex)
    if nt % 2 == 1:
        return 1j * z * np.cos(np.arange(1, nt) * np.pi / nt)
    ls = np.arange(-(nt // 2 - 1), nt // 2)
    return 1j * z * np.sin(ls * np.pi / nt)


def leading_coefficients(n: int) -> tuple[int, int, int]:
    """Leading coefficients of P_n, Q_nt and O_{nt-1}: 2^n, 2^{nt+1}, -2^nt."""
    nt = (n - 1) // 2
    return 2 ** n, 2 ** (nt + 1), (-(2 ** nt) if nt > 0 else 0)


def _poly(lead, roots, s):
    s = np.asarray(s, dtype=complex)
    return lead * np.prod(s[..., None] - roots, axis=-1)


def laplace_kernel_m2_factored(params: DeformParams, geometry: PairGeometry, s) -> KernelValue:
    """m = 2 Laplace form as ratios of products of linear factors."""
    if params.m != 2:
        raise DomainError("laplace_kernel_m2_factored requires m = 2")
    n, z, w = params.n, geometry.z, geometry.w
    s = _as_s(s)
    _check_region(np.asarray(s), z)
    lp, lq, lo = leading_coefficients(n)
    den = _poly(lp, denominator_roots(n, z, w), s)
    qn = _poly(lq, scalar_numerator_roots(n, z), s)
    on = _poly(lo, bivector_numerator_roots(n, z), s)
    return _pack((qn + 1j * w * z * on) / den, 1j * on / den)


@dataclass(frozen=True)
class RationalKernelRep:
    """Partial-fraction data of the m = 2 Laplace form."""

    n: int
    z: float
    w: float
    denominator_roots: tuple
    numerator_scalar_roots: tuple
    numerator_bivector_roots: tuple
    leading_denominator: int
    leading_scalar: int
    leading_bivector: int
    residues_scalar: tuple
    residues_bivector: tuple

    def __post_init__(self):
        if len(self.denominator_roots) != self.n:
            raise ValueError("need exactly n denominator roots")

    def evaluate(self, s) -> KernelValue:
        """Sum of simple fractions c_l / (s - s_l)."""
        s = complex(s)
        roots = np.array(self.denominator_roots)
        scal = np.sum(np.array(self.residues_scalar) / (s - roots))
        biv = np.sum(np.array(self.residues_bivector) / (s - roots))
        return KernelValue(complex(scal), complex(biv))


def partial_fractions_m2(params: DeformParams, geometry: PairGeometry) -> RationalKernelRep:
    """Residues of the scalar and bivector rational functions at the n simple poles."""
    if params.m != 2:
        raise DomainError("partial fractions are available for m = 2")
    n, z, w = params.n, geometry.z, geometry.w
    roots = denominator_roots(n, z, w)
    gaps = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(gaps, np.inf)
    if n > 1 and np.min(gaps) <= 1e-9 * max(z, 1e-300):
        raise DegenerateRoots(f"denominator roots coincide at theta = {geometry.theta:.3g}")
    lp, lq, lo = leading_coefficients(n)
    qr = scalar_numerator_roots(n, z)
    orr = bivector_numerator_roots(n, z)
    deriv = np.array([lp * np.prod(roots[l] - np.delete(roots, l)) for l in range(n)])
    qv = _poly(lq, qr, roots)
    ov = _poly(lo, orr, roots)
    res_s = (qv + 1j * w * z * ov) / deriv
    res_b = 1j * ov / deriv
    return RationalKernelRep(n, z, w, tuple(roots), tuple(qr), tuple(orr), lp, lq, lo,
                             tuple(res_s), tuple(res_b))


def reconstruct_time_kernel(rep: RationalKernelRep, t) -> KernelValue:
    """Inverse transform of the partial fractions: sum_l c_l exp(s_l t)."""
    roots = np.array(rep.denominator_roots)
    ta = np.asarray(t, dtype=float)
    ex = np.exp(np.multiply.outer(ta, roots))
    scal = ex @ np.array(rep.residues_scalar)
    biv = ex @ np.array(rep.residues_bivector)
    if np.ndim(t) == 0:
        return KernelValue(complex(scal), complex(biv))
    return scal, biv


def residue_grid(params: DeformParams, z, w, t=1.0):
    """Residue reconstruction over arrays of (z, w).

    Returns ``(scalar, bivector, error)``; the error is the rounding bound
    of the exponential sum, which cancels heavily only for small z.
    """
    z, w = np.broadcast_arrays(np.asarray(z, float), np.asarray(w, float))
    scal = np.empty(z.shape, complex)
    biv = np.empty(z.shape, complex)
    err = np.empty(z.shape)
    eps = np.finfo(float).eps
    for idx in np.ndindex(z.shape):
        rep = partial_fractions_m2(params, PairGeometry(z[idx], w[idx]))
        val = reconstruct_time_kernel(rep, t)
        scal[idx], biv[idx] = val.scalar, val.bivector
        err[idx] = 10 * eps * rep.n * np.abs(np.array(rep.residues_scalar + rep.residues_bivector)).sum()
    return scal, biv, err
