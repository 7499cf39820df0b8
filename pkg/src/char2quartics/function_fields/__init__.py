"""Normal-form function fields: validation, Frobenius pullbacks, Riemann-Roch bases,
singularity degrees, quadric embeddings and canonical quartics."""
from .model import (
    EQUATIONS, G3_VARIANTS, Q4_VARIANTS, QE_VARIANTS, VARIANTS, FunctionFieldModel,
    forward_bijection, inverse_bijection, normalize_c0, normalize_unified, q4i_as_g3i,
    q4ii_as_g3ii, ring, unified_view,
)
from .validate import PrimeData, check_prime_data, unified_is_inertial, validate
from .delta import DeltaReport, delta, lemma_holds, r8_series
from .rr import check_closure, rr_basis, rr_basis_text, tabulated_cases
from .pullback import PullbackLevel, pullback_chain
from .embed import Quadric, embed_quadrics
from .canonical import quartic_form, to_canonical_quartic
from .sample import random_element, random_model

__all__ = [
    "EQUATIONS", "G3_VARIANTS", "Q4_VARIANTS", "QE_VARIANTS", "VARIANTS", "FunctionFieldModel",
    "forward_bijection", "inverse_bijection", "normalize_c0", "normalize_unified",
    "q4i_as_g3i", "q4ii_as_g3ii", "ring", "unified_view",
    "PrimeData", "check_prime_data", "unified_is_inertial", "validate",
    "DeltaReport", "delta", "lemma_holds", "r8_series",
    "check_closure", "rr_basis", "rr_basis_text", "tabulated_cases",
    "PullbackLevel", "pullback_chain", "Quadric", "embed_quadrics",
    "quartic_form", "to_canonical_quartic", "random_element", "random_model",
]
