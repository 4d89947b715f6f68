"""Ghost-class candidates in the cohomology of GO(2, n) Shimura varieties.

Root data and Weyl groups of type B/D, Kostant representatives and the dot
action, Hodge weights of boundary summands, and the three elimination
filters that cut the candidate list down to the survivors.
"""

from .errors import ConsistencyError, DomainError
from .ghostfilter import GhostRecord, classify, eisenstein_threshold, survivors
from .kostant import coset_factorize, dot_action, kostant_representatives, label_of
from .rootsys import SymbolicWeight, build_root_system, validate_highest_weight
from .weyl import WeylElement, compose, enumerate_weyl, length

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "DomainError", "GhostRecord", "SymbolicWeight", "WeylElement",
    "build_root_system", "classify", "compose", "coset_factorize", "dot_action",
    "eisenstein_threshold", "enumerate_weyl", "kostant_representatives", "label_of", "length",
    "survivors", "validate_highest_weight",
]
