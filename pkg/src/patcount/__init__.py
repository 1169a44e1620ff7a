"""patcount: deterministic (1+eps)-approximate counting and listing of
permutation patterns of length k <= 5 in near-linear time."""

from .perm import Pattern, Permutation, SymmetryTransform, canonicalize, ingest
from .api import count, list_copies

__all__ = [
    "Pattern",
    "Permutation",
    "SymmetryTransform",
    "canonicalize",
    "ingest",
    "count",
    "list_copies",
]

__version__ = "0.1.0"
