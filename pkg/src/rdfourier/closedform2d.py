"""Exact m = 2 kernel as a weighted sum of n plane waves."""
from __future__ import annotations

import warnings

import numpy as np

from .errors import DomainError, PrecisionWarning
from .kernel_core import (DeformParams, KernelEvalPoint, KernelValue, PairGeometry,
                          series_m2_grid)

# Below this z the z**(-n_tilde) prefactor amplifies cancellation in the
# plane-wave sum beyond usefulness and the series is used instead.
SERIES_HANDOFF_Z = 1e-6
PRECISION_WARN_Z = 1e-3

# sin(theta) below which the bivector uses the theta-derivative of the sum.
_SIN_LIMIT = 1e-6


def closed_form_grid(params: DeformParams, z, w, t=1.0):
    """Vectorised closed form.  Returns ``(scalar, bivector, error)`` arrays.

    ``t`` enters the exponentials only: the prefactors keep ``z``, which makes
    the result equal to the auxiliary-variable series at the same ``t``.
    """
    if params.m != 2:
        raise DomainError("the closed form exists for m = 2 only")
    z, w, t = np.broadcast_arrays(np.asarray(z, float), np.asarray(w, float), np.asarray(t, float))
    if np.any(np.abs(w) > 1):
        raise DomainError("w must lie in [-1, 1]")
    if np.any(z < 0):
        raise DomainError("z must be non-negative")
    n, nt = params.n, params.n_tilde
    tiny = z < SERIES_HANDOFF_Z
    zs = np.where(tiny, 1.0, z)
    theta = np.arccos(w)[..., None]
    phi = (theta + 2 * np.pi * np.arange(n)) / n
    wave = np.exp(-1j * (zs * t)[..., None] * np.cos(phi))
    pref = 1j ** nt / n
    scal = pref * zs ** (-nt) * np.sum(np.cos(nt * phi) * wave, axis=-1)
    sin_sum = np.sum(np.sin(nt * phi) * wave, axis=-1)
    # d/dtheta of the sin-sum; it is odd about theta = 0 and theta = pi
    d_sum = np.sum((nt * np.cos(nt * phi) + 1j * (zs * t)[..., None] * np.sin(phi) * np.sin(nt * phi))
                   * wave, axis=-1) / n
    sin_t = np.sin(theta[..., 0])
    cos_t = np.cos(theta[..., 0])
    near = sin_t < _SIN_LIMIT
    ratio = np.where(near, d_sum / np.where(near, cos_t, 1.0), sin_sum / np.where(near, 1.0, sin_t))
    biv = pref * zs ** (-nt - 1) * ratio
    eps = np.finfo(float).eps
    err = 4 * eps * n * (zs ** (-nt) + zs ** (-nt - 1) / np.maximum(sin_t, 1e-3))
    if np.any(tiny):
        res = series_m2_grid(params, np.where(tiny, z, 0.0), w, t)
        scal = np.where(tiny, res.scalar, scal)
        biv = np.where(tiny, res.bivector, biv)
        err = np.where(tiny, res.error, err)
    return scal, biv, err


def closed_form_kernel_m2(params: DeformParams, geometry: PairGeometry, t: float = 1.0) -> KernelValue:
    """m = 2 kernel from the finite plane-wave sum.

    Regular at w = +-1 (the 1/sin(theta) factor is resolved analytically) and
    delegated to the series for z below ``SERIES_HANDOFF_Z``.
    """
    z = geometry.z
    if SERIES_HANDOFF_Z <= z < PRECISION_WARN_Z and params.n_tilde > 0:
        loss = np.finfo(float).eps * z ** (-params.n_tilde - 1)
        warnings.warn(f"closed form at z={z:.3g} may lose accuracy (~{loss:.1e})", PrecisionWarning,
                      stacklevel=2)
    s, b, e = closed_form_grid(params, geometry.z, geometry.w, t)
    return KernelValue(complex(s), complex(b), float(e))


def closed_form_at(params: DeformParams, point: KernelEvalPoint) -> KernelValue:
    return closed_form_kernel_m2(params, point.geometry, point.t)
