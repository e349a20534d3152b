"""Exact h*-polynomials of symmetric edge polytopes and root polytopes."""

from .dissect import (DissectingTreeSet, DissectionError, enumerate_dissections, facets, jaeger_dissection,
                      jaeger_trees, normalized_volume, sympoly_dissection, verify_dissection)
from .geometry import (NonGenericPointError, Simplex, cone_simplex, contains_point, count_lattice_points,
                       interior_disjoint, is_unimodular, smith_invariants, tree_simplex, visible_facets)
from .graphs import Digraph, GraphError, fundamental_cut, is_semi_balanced, spanning_trees, tree_cuts
from .hstar import (EhrhartPolynomial, HStarPolynomial, InconsistencyError, cross_validate, ehrhart_hstar,
                    hstar_away, hstar_passivity, hstar_visibility, negative_suite, q_basepoint, q_order)
from .ribbon import (EdgeOrder, RibbonStructure, basepoint_passivity, bernardi_tour, embedding_semi_passivity,
                     internal_semi_passivity, is_jaeger, tour_order)

__version__ = "0.1.0"
