"""Kernel of the radially deformed Fourier transform: series, closed form,
Laplace-domain, residue and Mittag-Leffler integral routes, with independent
numerical oracles."""
from .closedform2d import closed_form_at, closed_form_grid, closed_form_kernel_m2
from .errors import (DegenerateRoots, DomainError, EnvelopeMissing, KernelError, NonConvergence,
                     NonFiniteResult, PrecisionWarning, QuadratureFailure, TailUnbounded)
from .kernel_core import (DeformParams, GeneralDeformParams, KernelEvalPoint, KernelValue, PairGeometry,
                          SeriesResult, series_grid, series_kernel, series_kernel_general, series_kernel_m2,
                          series_kernel_n)
from .laplace_domain import (LaplacePoint, MLParams, RationalKernelRep, laplace_kernel_general,
                             laplace_kernel_m2, laplace_kernel_m2_factored, partial_fractions_m2,
                             reconstruct_time_kernel)
from .methods import KernelMethod, kernel_grid
from .mlkernel import (HFunctionSpec, h_function, kernel_integral_general, kernel_integral_m2,
                       kernel_integral_rs_form)
from .oracles import (numeric_laplace_forward, numeric_laplace_inverse, run_identities,
                      verify_shift_inversion, verify_trig_sums)
from .quadrature import QuadratureSpec
from .specfun import SeriesPolicy, bessel_j, gegenbauer, mittag_leffler, prabhakar
from .transform_op import TransformResult, WeightedMeasure, apply_transform_2d

__all__ = [
    "closed_form_at", "closed_form_grid", "closed_form_kernel_m2", "DegenerateRoots", "DomainError",
    "EnvelopeMissing", "KernelError", "NonConvergence", "NonFiniteResult", "PrecisionWarning",
    "QuadratureFailure", "TailUnbounded", "DeformParams", "GeneralDeformParams", "KernelEvalPoint",
    "KernelValue", "PairGeometry", "SeriesResult", "series_grid", "series_kernel", "series_kernel_general",
    "series_kernel_m2", "series_kernel_n", "LaplacePoint", "MLParams", "RationalKernelRep",
    "laplace_kernel_general", "laplace_kernel_m2", "laplace_kernel_m2_factored", "partial_fractions_m2",
    "reconstruct_time_kernel", "KernelMethod", "kernel_grid", "HFunctionSpec", "h_function",
    "kernel_integral_general", "kernel_integral_m2", "kernel_integral_rs_form", "numeric_laplace_forward",
    "numeric_laplace_inverse", "run_identities", "verify_shift_inversion", "verify_trig_sums",
    "QuadratureSpec", "SeriesPolicy", "bessel_j", "gegenbauer", "mittag_leffler", "prabhakar",
    "TransformResult", "WeightedMeasure", "apply_transform_2d",
]
