"""Exact one-dimensional pairings of divergence-measure fields with BV gradients,
and certificates for weakly super-1-harmonic functions."""

from .bvfunc import (
    MINUS,
    PLUS,
    STAR,
    Representative,
    approx_from_above,
    approx_from_below,
    extend_by_zero,
    gradient_measure,
    interior_traces,
    representative_value,
    step,
)
from .certify import (
    Certificate,
    certify_dirichlet,
    certify_local,
    transfer_datum,
    unimodal_oracle,
    verify_dirichlet,
    verify_local,
)
from .core import Domain, DomainMismatchError, PiecewiseAffine, Q
from .dmfield import (
    dimension_constant,
    div_bound_check,
    divergence,
    normal_trace,
    sinfty_check,
)
from .measure import (
    Ordering,
    Region,
    SignedMeasure,
    TestFunction,
    compare,
    evaluate,
    restrict,
    total_variation,
)
from .pairing import (
    boundary_div_extension,
    dirichlet_gradient,
    pair_global,
    pair_local,
    pair_local_def_eval,
    pair_modified,
)

__version__ = "0.1.0"

__all__ = [
    "MINUS",
    "PLUS",
    "STAR",
    "Representative",
    "approx_from_above",
    "approx_from_below",
    "extend_by_zero",
    "gradient_measure",
    "interior_traces",
    "representative_value",
    "step",
    "Certificate",
    "certify_dirichlet",
    "certify_local",
    "transfer_datum",
    "unimodal_oracle",
    "verify_dirichlet",
    "verify_local",
    "Domain",
    "DomainMismatchError",
    "PiecewiseAffine",
    "Q",
    "dimension_constant",
    "div_bound_check",
    "divergence",
    "normal_trace",
    "sinfty_check",
    "Ordering",
    "Region",
    "SignedMeasure",
    "TestFunction",
    "compare",
    "evaluate",
    "restrict",
    "total_variation",
    "boundary_div_extension",
    "dirichlet_gradient",
    "pair_global",
    "pair_local",
    "pair_local_def_eval",
    "pair_modified",
]
