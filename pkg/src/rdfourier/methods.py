"""Uniform grid evaluation across the independent kernel routes."""
from __future__ import annotations

from enum import Enum

import numpy as np

from .closedform2d import closed_form_grid
from .errors import DomainError
from .kernel_core import DeformParams, series_grid
from .laplace_domain import residue_grid
from .mlkernel import integral_grid
from .quadrature import QuadratureSpec


class KernelMethod(str, Enum):
    SERIES = "series"
    CLOSED_FORM = "closed_form"
    ML_INTEGRAL = "ml_integral"
    RESIDUES = "residues"

    @property
    def m2_only(self) -> bool:
        return self in (KernelMethod.CLOSED_FORM, KernelMethod.RESIDUES)


def kernel_grid(params: DeformParams, method: KernelMethod | str, z, w,
                quadrature: QuadratureSpec = QuadratureSpec()):
    """Kernel at t = 1 over broadcast (z, w).  Returns ``(scalar, bivector, error)``.

    The integral and residue routes are undefined at z = 0; those points take
    the exact series limit.
    """
    method = KernelMethod(method)
    if method.m2_only and params.m != 2:
        raise DomainError(f"method {method.value} exists for m = 2 only")
    z, w = np.broadcast_arrays(np.asarray(z, float), np.asarray(w, float))
    if method is KernelMethod.SERIES:
        s, b, e, _ = series_grid(params, z, w)
        return s, b, e
    if method is KernelMethod.CLOSED_FORM:
        return closed_form_grid(params, z, w)
    route = residue_grid if method is KernelMethod.RESIDUES else (
        lambda p, zz, ww: integral_grid(p, zz, ww, quadrature))
    s, b, e, _ = series_grid(params, np.where(z > 0, 0.0, z), w)
    pos = z > 0
    if np.any(pos):
        si, bi, ei = route(params, z[pos], w[pos])
        s, b, e = s.astype(complex), b.astype(complex), e.astype(float)
        s[pos], b[pos], e[pos] = si, bi, ei
    return s, b, e
