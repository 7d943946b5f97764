"""Exact formal normal forms for real surfaces w = P(z, zb) + h.o.t. in C^2.

Coefficients are Gaussian rationals throughout; no floating point is used
in any computation.
"""

from .errors import CRNormalError
from .fischer import adjoint_apply, fischer_decompose, fischer_inner, iterated_chain, sN_residual
from .kernels import BACKEND
from .normalizer import normalize, resonance_schedule, solve_degree, solve_resonance
from .poly import BiPoly, Jet, WJet, invert_planar_jet
from .scalar import ExactScalar
from .surface import (
    ModelPolynomial,
    SurfaceJet,
    TangentIdentityMap,
    apply_map,
    compose_maps,
    surface_invariants,
    validate_model,
)
from .verify import equiv_check, pseudo_weight, verify_normal_form

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BiPoly",
    "CRNormalError",
    "ExactScalar",
    "Jet",
    "ModelPolynomial",
    "SurfaceJet",
    "TangentIdentityMap",
    "WJet",
    "adjoint_apply",
    "apply_map",
    "compose_maps",
    "equiv_check",
    "fischer_decompose",
    "fischer_inner",
    "invert_planar_jet",
    "iterated_chain",
    "normalize",
    "pseudo_weight",
    "resonance_schedule",
    "sN_residual",
    "solve_degree",
    "solve_resonance",
    "surface_invariants",
    "validate_model",
    "verify_normal_form",
]
