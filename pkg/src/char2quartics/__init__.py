"""Plane quartics with a canonical singular prime in characteristic two.

Subpackages: ``algebra`` (exact arithmetic), ``function_fields`` (normal
forms and their invariants), ``isomorphism`` (transformation groups),
``plane_geometry`` (quartics over finite fields), ``fibrations`` (fiber
taxonomy of the parameter families), ``resolution`` (blow-ups of the pencil
surfaces) and ``cli``.
"""
from .errors import (CenterOffSurface, InternalInconsistency, NonReduced, PreconditionViolated,
                     QuarticsError, StepLimitExceeded, Unsupported)
from .function_fields import FunctionFieldModel, delta, validate

__version__ = "0.1.0"

__all__ = [
    "CenterOffSurface", "FunctionFieldModel", "InternalInconsistency", "NonReduced",
    "PreconditionViolated", "QuarticsError", "StepLimitExceeded", "Unsupported",
    "delta", "validate", "__version__",
]
