"""fanograph: Fano and weak Fano classification of toric varieties of graph associahedra."""

from fanograph.census import all_labeled_graphs, cross_validate, cross_validate_corpus
from fanograph.classifier import (
    a_value,
    bad_nested_set,
    classify,
    classify_via_walls,
    is_fano_theorem,
    is_weak_fano_theorem,
)
from fanograph.fan import build_fan, is_smooth, product_fan, wall_relation
from fanograph.graph import Graph, NodeSet, family_graph, parse_edge_list, parse_graph6
from fanograph.nested import graphical_building_set, maximal_nested_sets, wall_completions, walls

__all__ = [
    "Graph",
    "NodeSet",
    "a_value",
    "all_labeled_graphs",
    "bad_nested_set",
    "build_fan",
    "classify",
    "classify_via_walls",
    "cross_validate",
    "cross_validate_corpus",
    "family_graph",
    "graphical_building_set",
    "is_fano_theorem",
    "is_smooth",
    "is_weak_fano_theorem",
    "maximal_nested_sets",
    "parse_edge_list",
    "parse_graph6",
    "product_fan",
    "wall_completions",
    "wall_relation",
    "walls",
]
