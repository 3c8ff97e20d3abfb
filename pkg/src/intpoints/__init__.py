"""Inclusion-maximal integral point sets in the affine plane over F_q."""
from .constructions import circle_set, construct, line_set, sporadic, vanishing_line_set
from .field import FieldCtx, FieldError, field_of_order, make_field
from .igraph import build_graph, local_graph, srg_params, verify_paley_iso
from .kernels import IMPLEMENTATION as KERNELS
from .plane import Point, PointSet, integral_set
from .search import classify, enum_maximal_cliques, is_maximal, second_largest_size
from .symmetry import canonical_form, classification_group, h_group

__version__ = "0.1.0"

__all__ = [
    "FieldCtx", "FieldError", "KERNELS", "Point", "PointSet", "build_graph", "canonical_form", "circle_set",
    "classification_group", "classify", "construct", "enum_maximal_cliques", "field_of_order", "h_group",
    "integral_set", "is_maximal", "line_set", "local_graph", "make_field", "second_largest_size", "sporadic",
    "srg_params", "vanishing_line_set", "verify_paley_iso",
]
