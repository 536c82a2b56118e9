"""Quantum alcove model for types A and C, checked against tensor products of
column-shape Kirillov-Reshetikhin crystals."""

from .root_core import ResourceLimitError, Root, RootSystem, WeylElement
from .alcove_model import (LambdaChain, FoldedChain, lambda_chain, fold, enumerate_admissible,
                           crystal_e, crystal_f, g_profile, is_admissible)
from .fillmap_bridge import fill, sfill, content, verify_isomorphism

__all__ = [
    "ResourceLimitError", "Root", "RootSystem", "WeylElement",
    "LambdaChain", "FoldedChain", "lambda_chain", "fold", "enumerate_admissible",
    "crystal_e", "crystal_f", "g_profile", "is_admissible",
    "fill", "sfill", "content", "verify_isomorphism",
]
