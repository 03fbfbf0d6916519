"""Bracketings, depth-congruence relations on binary trees, and linear quasigroups."""

from .grids import Grid, canonical_grid, meet, join, span_difference, treealise
from .quasigroup import (IdentitySpec, LinearQuasigroup, classify, consequence,
                         fine_spectrum_grid, make_identity, make_quasigroup,
                         parse_quasigroup, satisfies, spectrum)
from .relations import (RelationSpec, classes, count_classes, equivalent, leaf_key,
                        modular_catalan, normalize_relation, parse_relation)
from .trees import (BinaryTree, Bracketing, depth_profile, enumerate_trees,
                    format_bracketing, opposite, parse_bracketing, parse_tree, wedge)

__version__ = "0.1.0"
