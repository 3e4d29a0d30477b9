"""Builders for the explicit families of light dual multinets.

* triangle type, order 3m, labeled by the cyclic group of order 3m
* conic-line type, order 2m, labeled by an abelian extension of C_m by C_2
* tetrahedron type, order 2m, labeled by the dihedral group, obtained by
  projecting a dual 3-net of PG(3) from a point on a face of the tetrahedron
* the sporadic example of order 18 whose partial latin square rules out any
  group labeling

Every builder verifies its output before returning it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple

from . import projective as pg
from .errors import BadK, CharacteristicTooSmall, InvariantViolation, SamplingExhausted
from .fields import Field, FieldElement, find_primitive_root_of_unity
from .loops import MultTable, complete_partial_square, standard_table
from .multinet import (
    LabeledMultinet,
    length_spectrum,
    partial_latin_square,
    third_point_candidates,
    verify,
)

MAX_CENTER_ATTEMPTS = 1000


def _require_char(f: Field, bound: int) -> None:
    if f.is_prime and f.modulus <= bound:
        raise CharacteristicTooSmall(f"characteristic {f.modulus} must exceed {bound}")


def _checked(m: LabeledMultinet) -> LabeledMultinet:
    report = verify(m)
    if not report.ok:
        raise InvariantViolation(f"{m.provenance.get('construction')} output fails verification: {report.counterexamples}")
    return m


# ---------------------------------------------------------------------------
# ternary forms


@dataclass(frozen=True)
class TernaryForm:
    """Homogeneous polynomial in X, Y, Z; zero coefficients are never stored."""

    field: Field
    degree: int
    terms: tuple[tuple[tuple[int, int, int], FieldElement], ...]

    @classmethod
    def from_dict(cls, field: Field, degree: int, coeffs: dict) -> TernaryForm:
        items = []
        for exps, c in sorted(coeffs.items(), reverse=True):
            c = field(c)
            if sum(exps) != degree:
                raise ValueError(f"monomial {exps} is not of degree {degree}")
            if c:
                items.append((tuple(exps), c))
        return cls(field, degree, tuple(items))

    @classmethod
    def binomial(cls, field: Field, m: int, a: int, b: int, coeff: FieldElement) -> TernaryForm:
        """``V_a^m - coeff * V_b^m`` with variables indexed 0=X, 1=Y, 2=Z."""
        ea = [0, 0, 0]
        ea[a] = m
        eb = [0, 0, 0]
        eb[b] = m
        return cls.from_dict(field, m, {tuple(ea): field.one(), tuple(eb): -coeff})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: TernaryForm) -> TernaryForm:
        if other.degree != self.degree:
            raise ValueError("adding forms of different degrees")
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, self.field.zero()) + c
        return TernaryForm.from_dict(self.field, self.degree, out)

    def __mul__(self, other: TernaryForm) -> TernaryForm:
        out: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, self.field.zero()) + c1 * c2
        return TernaryForm.from_dict(self.field, self.degree + other.degree, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, x, y, z) -> FieldElement:
        total = self.field.zero()
        for (a, b, c), coeff in self.terms:
            total = total + coeff * x ** a * y ** b * z ** c
        return total


class PencilTriple(NamedTuple):
    F1: TernaryForm
    F2: TernaryForm
    F3: TernaryForm
    omega: FieldElement
    note: str


def triangle_pencil_polynomials(m: int, f: Field) -> PencilTriple:
    """Three completely reducible forms of degree 3m with F1 + F2 + F3 = 0."""
    if m < 1:
        raise ValueError("m must be positive")
    w = find_primitive_root_of_unity(f, 3)
    X, Y, Z = 0, 1, 2
    one = f.one()

    def prod(*factors):
        out = factors[0]
        for g in factors[1:]:
            out = out * g
        return out

    b = lambda a, c, coeff: TernaryForm.binomial(f, m, a, c, coeff)  # noqa: E731
    F1 = prod(b(X, Y, one), b(Z, X, w ** 2), b(Y, Z, w))
    F2 = prod(b(X, Y, w), b(Z, X, one), b(Y, Z, w ** 2))
    F3 = prod(b(X, Y, w ** 2), b(Z, X, w), b(Y, Z, one))
    if not (F1 + F2 + F3).is_zero():
        raise InvariantViolation("pencil forms do not sum to zero")
    note = "second factor of F3 is Z^m - w*X^m (exponent m, not n); required for F1+F2+F3=0"
    return PencilTriple(F1, F2, F3, w, note)


# ---------------------------------------------------------------------------
# triangle type


def _triangle_f(f: Field):
    one = f.one()
    return (
        lambda x: pg.normalize((f.zero(), one, x)),
        lambda y: pg.normalize((y, f.zero(), one)),
        lambda z: pg.normalize((z, -one, f.zero())),
    )


def base_triangle_3net(m: int, f: Field) -> LabeledMultinet:
    """The triangular dual 3-net (f1(g), f2(g), f3(g)) of order 3m."""
    n = 3 * m
    _require_char(f, n)
    xi = find_primitive_root_of_unity(f, n)
    f1, f2, f3 = _triangle_f(f)
    powers = [xi ** j for j in range(n)]
    comps = (
        tuple(f1(p) for p in powers),
        tuple(f2(p) for p in powers),
        tuple(f3(p) for p in powers),
    )
    prov = {"construction": "triangle-3net", "m": m, "xi": xi.to_json()}
    return _checked(LabeledMultinet(f, comps, standard_table("cyclic", n), prov))


def build_triangle(m: int, f: Field) -> LabeledMultinet:
    """Triangle-type multinet of order n = 3m; label j stands for xi^j."""
    if m < 1:
        raise ValueError("m must be positive")
    n = 3 * m
    _require_char(f, n)
    xi = find_primitive_root_of_unity(f, n)
    f1, f2, f3 = _triangle_f(f)
    x = lambda e: xi ** (e % n)  # noqa: E731

    def a1(j):
        return (f1(x(j)), f2(x(j - 2)), f3(x(4 - j)))[j % 3]

    def a2(j):
        return (f1(x(j + 1)), f2(x(j - 1)), f3(x(3 - j)))[j % 3]

    def a3(j):
        return (f1(x(5 - j)), f3(x(j - 1)), f2(x(3 - j)))[j % 3]

    comps = tuple(tuple(a(j) for j in range(n)) for a in (a1, a2, a3))
    prov = {"construction": "triangle", "m": m, "xi": xi.to_json()}
    return _checked(LabeledMultinet(f, comps, standard_table("cyclic", n), prov))


# ---------------------------------------------------------------------------
# conic-line type


def build_conic_line(m: int, k: int, f: Field) -> LabeledMultinet:
    """Conic-line multinet of order 2m.

    Labels ``i`` and ``m+i`` stand for xi^(3i) and its primed copy; the product
    of two primed elements is twisted by xi^(3k).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if not 0 <= k < m:
        raise BadK(f"k must lie in 0..{m - 1}, got {k}")
    _require_char(f, 2 * m)
    xi = find_primitive_root_of_unity(f, 3 * m)
    one = f.one()
    order = 3 * m

    def f1(e):
        return pg.normalize((xi ** (e % order), -one, f.zero()))

    def f2(e):
        u = xi ** (e % order)
        return pg.normalize((u, u.inverse(), one))

    comps = (
        tuple(f1(3 * i) for i in range(m)) + tuple(f2(-3 * i) for i in range(m)),
        tuple(f1(3 * i + 1) for i in range(m)) + tuple(f2(-3 * i - 1) for i in range(m)),
        tuple(f1(-3 * i + 3 * k - 1) for i in range(m)) + tuple(f2(3 * i + 1) for i in range(m)),
    )
    prov = {"construction": "conic-line", "m": m, "k": k, "xi": xi.to_json()}
    return _checked(LabeledMultinet(f, comps, standard_table("biextension", m, k), prov))


# ---------------------------------------------------------------------------
# tetrahedron type


def tetrahedron_lifts(m: int, f: Field) -> tuple[tuple[pg.ProjectivePoint, ...], ...]:
    """The three components of the dihedral dual 3-net in PG(3); label h is
    eta^h and label m+h is eta^h * sigma."""
    eta = find_primitive_root_of_unity(f, m)
    z, one = f.zero(), f.one()
    hs = [eta ** h for h in range(m)]
    n = pg.normalize
    return (
        tuple(n((x, z, one, z)) for x in hs) + tuple(n((z, one, z, x)) for x in hs),
        tuple(n((one, y, z, z)) for y in hs) + tuple(n((z, z, one, y)) for y in hs),
        tuple(n((z, -x, one, z)) for x in hs) + tuple(n((one, z, z, -x)) for x in hs),
    )


def check_dihedral_convention(m: int, f: Field, table: MultTable | None = None) -> list[tuple[int, int]]:
    """Products (a, b) whose lifted points alpha1(a), alpha2(b), alpha3(ab)
    fail to be collinear in PG(3); empty when the table is compatible."""
    table = table or standard_table("dihedral_geom", m)
    lifts = tetrahedron_lifts(m, f)
    bad = []
    for a in range(2 * m):
        for b in range(2 * m):
            if not pg.collinear_pg3(lifts[0][a], lifts[1][b], lifts[2][table.mul(a, b)]):
                bad.append((a, b))
    return bad


def _is_generic(mn: LabeledMultinet, m: int) -> bool:
    if not verify(mn).ok:
        return False
    if m < 2:
        return True
    spectrum = length_spectrum(mn)
    return spectrum[m] == 1 and sum(spectrum.values()) == spectrum[m] + spectrum[1]


def build_tetrahedron(
    m: int, f: Field, face: int = 1, seed: int = 0, max_attempts: int = MAX_CENTER_ATTEMPTS
) -> LabeledMultinet:
    """Project the dihedral dual 3-net from a generic point of the face
    X_face = 0 onto a coordinate plane.

    Attempt ``a`` draws the center from ``random.Random(seed + a)``; a center is
    accepted once the projection verifies and has exactly one line of length m
    with all other lines of length 1.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if face not in (1, 2, 3, 4):
        raise ValueError("face must be one of 1, 2, 3, 4")
    _require_char(f, 2 * m)
    table = standard_table("dihedral_geom", m)
    bad = check_dihedral_convention(m, f, table)
    if bad:
        raise InvariantViolation(f"dihedral table incompatible with the PG(3) lifts at {bad[0]}")
    lifts = tetrahedron_lifts(m, f)
    fi = face - 1
    for attempt in range(max_attempts):
        rng = random.Random(seed + attempt)
        coords = [f.zero() if i == fi else f.random_nonzero(rng) for i in range(4)]
        center = pg.normalize(coords)
        target = next(i for i in range(4) if i != fi)
        plane = [f.one() if i == target else f.zero() for i in range(4)]
        basis = pg.plane_basis(plane)
        comps = tuple(tuple(pg.project_to_plane(center, plane, basis, q) for q in comp) for comp in lifts)
        prov = {
            "construction": "tetrahedron",
            "m": m,
            "face": face,
            "seed": seed,
            "attempts": attempt + 1,
            "center": center.to_json(),
            "target_plane": [c.to_json() for c in plane],
        }
        try:
            candidate = LabeledMultinet(f, comps, table, prov)
        except ValueError:
            continue
        if _is_generic(candidate, m):
            return candidate
    raise SamplingExhausted(f"no generic center found in {max_attempts} attempts")


# ---------------------------------------------------------------------------
# the order-18 example

_ORDER18 = (
    (
        "0 1 1", "0 w^2 1", "0 w 1",
        "-xi^8 1 0", "-xi^2 1 0", "-xi^5 1 0",
        "xi^2 0 1", "xi^8 0 1", "xi^5 0 1",
        "-xi^2 -1 1", "-xi^8 -w 1", "-xi^5 -w^2 1",
        "-xi^2 -w^2 1", "-xi^8 -1 1", "-xi^5 -w 1",
        "-xi^2 -w 1", "-xi^8 -w^2 1", "-xi^5 -1 1",
    ),
    (
        "0 xi^2 1", "0 xi^8 1", "0 xi^5 1",
        "-xi 1 0", "-xi^4 1 0", "-xi^7 1 0",
        "1 0 1", "w^2 0 1", "w 0 1",
        "-1 -xi^5 1", "-w^2 -xi^8 1", "-w -xi^2 1",
        "-1 -xi^2 1", "-w^2 -xi^5 1", "-w -xi^8 1",
        "-1 -xi^8 1", "-w^2 -xi^2 1", "-w -xi^5 1",
    ),
    (
        "0 xi^4 1", "0 xi 1", "0 xi^7 1",
        "xi 0 1", "xi^4 0 1", "xi^7 0 1",
        "-1 1 0", "-w^2 1 0", "-w 1 0",
        "-xi^4 -xi^4 1", "-xi^7 -xi 1", "-xi -xi^7 1",
        "-xi^7 -xi^7 1", "-xi -xi^4 1", "-xi^4 -xi 1",
        "-xi -xi 1", "-xi^4 -xi^7 1", "-xi^7 -xi^4 1",
    ),
)


def _parse_entry(token: str, xi: FieldElement) -> FieldElement:
    f = xi.field
    sign = -1 if token.startswith("-") else 1
    body = token.lstrip("-")
    if body in ("0", "1"):
        return f(sign * int(body))
    base, _, exp = body.partition("^")
    e = int(exp) if exp else 1
    if base == "w":
        e *= 3
    elif base != "xi":
        raise ValueError(f"bad entry {token!r}")
    return xi ** e * sign


def order18_components(f: Field) -> tuple[tuple[pg.ProjectivePoint, ...], ...]:
    xi = find_primitive_root_of_unity(f, 9)
    return tuple(
        tuple(pg.normalize([_parse_entry(tok, xi) for tok in row.split()]) for row in comp) for comp in _ORDER18
    )


def build_order18(f: Field, labels: str = "first-fit") -> LabeledMultinet:
    """The order-18 multinet with three lines of length 3.

    ``labels="first-fit"`` attaches the lexicographically first latin
    completion of its partial square in which every filled cell (i, j) names a
    point of the third component on the line alpha1(i) alpha2(j);
    ``labels="none"`` leaves it unlabeled.
    """
    if labels not in ("first-fit", "none"):
        raise ValueError("labels must be 'first-fit' or 'none'")
    xi = find_primitive_root_of_unity(f, 9)
    prov = {"construction": "order18", "xi": xi.to_json(), "labels": labels}
    geometric = _checked(LabeledMultinet(f, order18_components(f), None, prov))
    if labels == "none":
        return geometric
    table = complete_partial_square(partial_latin_square(geometric), third_point_candidates(geometric))
    return _checked(geometric.with_labels(table))
