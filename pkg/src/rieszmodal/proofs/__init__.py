"""Equational proofs over the modal Riesz space axioms."""

from .axioms import Axiom, Equation, SideConditionError, axiom_catalogue, decode_leq, encode_leq, lookup
from .checker import (Derivation, ProofError, Step, check, check_text, load_derivation, parse_derivation)
from .fuzz import Countermodel, FuzzResult, soundness_fuzz
from .riesz import riesz_identity

__all__ = [
    "Axiom", "Countermodel", "Derivation", "Equation", "FuzzResult", "ProofError", "SideConditionError",
    "Step", "axiom_catalogue", "check", "check_text", "decode_leq", "encode_leq", "load_derivation",
    "lookup", "parse_derivation", "riesz_identity", "soundness_fuzz",
]
