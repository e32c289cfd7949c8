"""Homeomorphism and embedding decisions on finite models."""
from .canonical import canonical_code, is_homeomorphic, witness_to_json
from .embedding import embeds, incomparability_report

__all__ = [
    "canonical_code",
    "embeds",
    "incomparability_report",
    "is_homeomorphic",
    "witness_to_json",
]
