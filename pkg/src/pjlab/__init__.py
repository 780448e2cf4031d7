"""pjlab: a configurable-precision laboratory for the orthogonal-polynomial
system of the weight e^(-t/x) x^alpha (1-x)^beta on [0,1], and for the web
of identities its recurrence coefficients, ladder operators, Hankel
determinant and Painleve-type equations satisfy."""

from .auxiliary import (
    AuxRow,
    AuxSet,
    an_bn_eval,
    an_bn_oracle,
    aux_build,
    aux_compute,
    hn_from_aux,
    recurrence_from_aux,
)
from .moments import (
    MomentTable,
    RouteAgreementError,
    SHIFT_EDGE,
    SHIFT_PLAIN,
    kummer_u,
    moment_beta_closed,
    moment_kummer,
    moment_quad,
    moment_table,
)
from .ortho import OrthoSystem, build_ortho, hankel_Hn, hankel_det_oracle, poly_eval, poly_eval_coeffs
from .pipeline import Pipeline, PipelineStencil, build_pipeline, build_stencil, clear_cache
from .precision import (
    DomainError,
    PJLabError,
    PositivityError,
    PrecisionCtx,
    QuadratureNonConvergence,
    StencilError,
    sci_str,
)
from .quad import QuadResult, de_quad, de_quad_ray_vec, de_quad_unit_vec, fd_derivative
from .weights import WeightParams, v_prime_eval, weight_eval

__version__ = "0.1.0"

__all__ = [
    "AuxRow", "AuxSet", "an_bn_eval", "an_bn_oracle", "aux_build", "aux_compute",
    "hn_from_aux", "recurrence_from_aux",
    "MomentTable", "RouteAgreementError", "SHIFT_EDGE", "SHIFT_PLAIN",
    "kummer_u", "moment_beta_closed", "moment_kummer", "moment_quad", "moment_table",
    "OrthoSystem", "build_ortho", "hankel_Hn", "hankel_det_oracle", "poly_eval",
    "poly_eval_coeffs",
    "Pipeline", "PipelineStencil", "build_pipeline", "build_stencil", "clear_cache",
    "DomainError", "PJLabError", "PositivityError", "PrecisionCtx",
    "QuadratureNonConvergence", "StencilError", "sci_str",
    "QuadResult", "de_quad", "de_quad_ray_vec", "de_quad_unit_vec", "fd_derivative",
    "WeightParams", "v_prime_eval", "weight_eval",
]
