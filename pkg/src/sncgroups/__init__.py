"""C-groups of rank n-1 and n-2 for the symmetric group S_n."""

from .cgroup import CGroupCandidate, CGroupReport, is_c_group_full, is_c_group_recursive
from .classify import (build_family_instance, enumerate_rank_n_minus_1, enumerate_rank_n_minus_2,
                       exceptional_n8, structural_screen)
from .geometry import CosetGeometry, HypertopeReport, certify_regular_hypertope
from .group import PermGroup, intersection
from .perm import Permutation, compose, parse_perm_lines
from .presentations import Presentation, certify_presentation, todd_coxeter
from .repgraph import RepGraph, build_rep_graph, canonical_form, coxeter_diagram, enumerate_trees

__all__ = [
    "CGroupCandidate", "CGroupReport", "CosetGeometry", "HypertopeReport", "PermGroup", "Permutation",
    "Presentation", "RepGraph", "build_family_instance", "build_rep_graph", "canonical_form",
    "certify_presentation", "certify_regular_hypertope", "compose", "coxeter_diagram",
    "enumerate_rank_n_minus_1", "enumerate_rank_n_minus_2", "enumerate_trees", "exceptional_n8",
    "intersection", "is_c_group_full", "is_c_group_recursive", "parse_perm_lines",
    "structural_screen", "todd_coxeter",
]
