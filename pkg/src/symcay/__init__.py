"""Permutation groups, coset and Cayley graphs, and symmetry verification for
tetravalent edge-transitive graphs."""

from .graphs import Graph
from .limits import BoundExceeded, HypothesisError
from .perm import PermGroup, Permutation

__all__ = ["Graph", "PermGroup", "Permutation", "BoundExceeded", "HypothesisError"]
__version__ = "0.1.0"
