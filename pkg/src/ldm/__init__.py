"""Light dual multinets in the projective plane: exact construction,
verification, classification and group-labelability checks."""

from .constructions import (
    base_triangle_3net,
    build_conic_line,
    build_order18,
    build_tetrahedron,
    build_triangle,
    triangle_pencil_polynomials,
)
from .fields import find_primitive_root_of_unity, make_cyclotomic_field, make_prime_field
from .multinet import (
    LabeledMultinet,
    belonging_lines,
    classify,
    group_labeling_obstruction,
    is_algebraic,
    is_dual_3net,
    length_spectrum,
    partial_latin_square,
    relabel_through_line,
    verify,
)

__all__ = [
    "LabeledMultinet",
    "base_triangle_3net",
    "belonging_lines",
    "build_conic_line",
    "build_order18",
    "build_tetrahedron",
    "build_triangle",
    "classify",
    "find_primitive_root_of_unity",
    "group_labeling_obstruction",
    "is_algebraic",
    "is_dual_3net",
    "length_spectrum",
    "make_cyclotomic_field",
    "make_prime_field",
    "partial_latin_square",
    "relabel_through_line",
    "triangle_pencil_polynomials",
    "verify",
]
