"""Tangles of symmetric submodular order functions and tree-decompositions
that distinguish all maximal tangles efficiently."""

from .connectivity import (ConnectivitySystem, GraphSystem, GroundSet, MatroidSystem, TableSystem,
                           graph_order, matroid_order, matroid_rank, validate_system)
from .construct import (NestedSet, greedy_extend, prune_minimal, stratified_construct,
                        verify_distinguishing)
from .errors import InputError, PreconditionError, ResourceError, TangleTreeError
from .separations import Separation, corners, enumerate_separations, is_nested, symmetric_closure
from .tangles import (Tangle, TangleCatalog, all_tangles, distinguishes, efficient_pool,
                      enumerate_tangles, includes, is_tangle, min_distinguishing_order)
from .treedec import (TreeDecomposition, edge_separation, home_subtree, lives_in, nested_to_tree,
                      verify_corollary)

__version__ = "0.1.0"
