"""Cached multinet instances shared across test modules."""
from functools import cache

from ldm import constructions as C
from ldm.fields import make_cyclotomic_field, make_prime_field

F = make_prime_field

TRIANGLE_FIELDS = {1: 7, 2: 7, 3: 19, 4: 13, 9: 109}
CONIC_FIELDS = {2: 7, 5: 31, 9: 109}
TETRA_FIELDS = {3: 7, 5: 31, 9: 73}


@cache
def triangle(m):
    return C.build_triangle(m, F(TRIANGLE_FIELDS[m]))


@cache
def conic_line(m, k):
    return C.build_conic_line(m, k, F(CONIC_FIELDS[m]))


@cache
def tetrahedron(m):
    return C.build_tetrahedron(m, F(TETRA_FIELDS[m]), face=1, seed=0)


@cache
def order18(field="F19", labels="first-fit"):
    f = make_cyclotomic_field(9) if field == "Q9" else F(int(field[1:]))
    return C.build_order18(f, labels=labels)


def all_instances():
    """(name, multinet) for every instance built by the acceptance criteria."""
    out = [(f"triangle m={m}", triangle(m)) for m in TRIANGLE_FIELDS]
    out += [(f"conic-line m={m} k={k}", conic_line(m, k)) for m in CONIC_FIELDS for k in (0, 1)]
    out += [(f"tetrahedron m={m}", tetrahedron(m)) for m in (5, 9)]
    out += [("order18 F19", order18("F19")), ("order18 Q9", order18("Q9"))]
    return out
