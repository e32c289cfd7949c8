"""Finite, exact models of the incomparable plane continua constructions.

Modules: ``geometry`` (exact primitives), ``complex`` (decorated 1-complex
models), ``invariants``, ``homeo`` (homeomorphism and embedding),
``sequences``, ``spaces`` (builders and decoders), ``render`` and ``cli``.
"""
from .complex import TopoModel
from .errors import BudgetExceeded, BuildError, DomainError, TopoincError
from .homeo import canonical_code, embeds, incomparability_report, is_homeomorphic
from .sequences import BitSeqSpec, MSetSpec
from .spaces import SpaceSpec, build, decode_A, decode_g, theorem_check

__version__ = "0.1.0"

__all__ = [
    "BitSeqSpec",
    "BudgetExceeded",
    "BuildError",
    "DomainError",
    "MSetSpec",
    "SpaceSpec",
    "TopoModel",
    "TopoincError",
    "build",
    "canonical_code",
    "decode_A",
    "decode_g",
    "embeds",
    "incomparability_report",
    "is_homeomorphic",
    "theorem_check",
]
