"""Exact projective geometry in PG(2) and PG(3) over a :class:`~ldm.fields.Field`.

Points and lines are stored in canonical form: the last nonzero homogeneous
coordinate is scaled to 1, so equality of representatives is equality of
projective objects.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    CenterOnPlane,
    CharTwoUnsupported,
    CoincidentArguments,
    FewerThanTwoDistinct,
    MixedFields,
    ProjectingCenter,
    ZeroVector,
)
from .fields import Field, FieldElement


def _canonical(coords: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    coords = tuple(coords)
    if not coords:
        raise ZeroVector("empty coordinate list")
    field = coords[0].field
    for c in coords:
        if c.field != field:
            raise MixedFields("coordinates from different fields")
    for c in reversed(coords):
        if c:
            if c.is_one():
                return coords
            inv = c.inverse()
            return tuple(x * inv for x in coords)
    raise ZeroVector("all coordinates are zero")


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[FieldElement, ...]

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def field(self) -> Field:
        return self.coords[0].field

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def to_json(self):
        return [c.to_json() for c in self.coords]

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return "(" + ", ".join(map(repr, self.coords)) + ")"


@dataclass(frozen=True)
class ProjectiveLine:
    """A line of PG(2), stored as its normalized covector."""

    coords: tuple[FieldElement, ...]

    @property
    def field(self) -> Field:
        return self.coords[0].field

    def contains(self, p: ProjectivePoint) -> bool:
        a, b, c = self.coords
        x, y, z = p.coords
        return not (a * x + b * y + c * z)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def to_json(self):
        return [c.to_json() for c in self.coords]

    def __repr__(self):
        return "[" + ", ".join(map(repr, self.coords)) + "]"


def normalize(coords: Sequence[FieldElement]) -> ProjectivePoint:
    return ProjectivePoint(_canonical(coords))


def point(field: Field, *values) -> ProjectivePoint:
    """Convenience constructor from ints, Fractions or field elements."""
    return normalize([field(v) for v in values])


def line(field: Field, *values) -> ProjectiveLine:
    return ProjectiveLine(_canonical([field(v) for v in values]))


def _same_field(*objs):
    f = objs[0].field
    for o in objs[1:]:
        if o.field != f:
            raise MixedFields(f"cannot combine {f} and {o.field}")
    return f


def det3(rows) -> FieldElement:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def cross(u, v) -> tuple[FieldElement, ...]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def collinear(p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint) -> bool:
    _same_field(p, q, r)
    return not det3((p.coords, q.coords, r.coords))


def collinear_pg3(p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint) -> bool:
    """Rank of the 3x4 coordinate matrix is at most 2."""
    _same_field(p, q, r)
    rows = (p.coords, q.coords, r.coords)
    for cols in combinations(range(4), 3):
        if det3([[row[c] for c in cols] for row in rows]):
            return False
    return True


def join(p: ProjectivePoint, q: ProjectivePoint) -> ProjectiveLine:
    _same_field(p, q)
    if p == q:
        raise CoincidentArguments("join of a point with itself")
    return ProjectiveLine(_canonical(cross(p.coords, q.coords)))


def meet(l: ProjectiveLine, m: ProjectiveLine) -> ProjectivePoint:
    _same_field(l, m)
    if l == m:
        raise CoincidentArguments("meet of a line with itself")
    return ProjectivePoint(_canonical(cross(l.coords, m.coords)))


def incident(p: ProjectivePoint, l: ProjectiveLine) -> bool:
    return l.contains(p)


def are_concurrent(lines: Sequence[ProjectiveLine]) -> bool:
    distinct = list(dict.fromkeys(lines))
    if len(distinct) < 2:
        raise FewerThanTwoDistinct("need at least two distinct lines")
    centre = meet(distinct[0], distinct[1])
    return all(l.contains(centre) for l in distinct[2:])


def concurrency_point(lines: Sequence[ProjectiveLine]) -> ProjectivePoint | None:
    """Common point of ``lines`` if they are concurrent, else None."""
    distinct = list(dict.fromkeys(lines))
    if len(distinct) < 2:
        raise FewerThanTwoDistinct("need at least two distinct lines")
    centre = meet(distinct[0], distinct[1])
    return centre if all(l.contains(centre) for l in distinct[2:]) else None


# ---------------------------------------------------------------------------
# exact linear algebra


def rref(matrix: list[list[FieldElement]]) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form with leftmost pivots; returns (rows, pivot columns)."""
    if matrix and matrix[0] and matrix[0][0].field.is_prime:
        return _rref_mod(matrix)
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _rref_mod(matrix):
    field = matrix[0][0].field
    p = field.modulus
    rows = [[x.residue for x in r] for r in matrix]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [[field(x) for x in row] for row in rows[:r]], pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: list[list[FieldElement]], ncols: int, field: Field) -> list[list[FieldElement]]:
    """Basis of the right null space, one vector per free column (ascending)."""
    rows, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero()] * ncols
        v[fcol] = field.one()
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def apply_matrix(matrix, p: ProjectivePoint) -> ProjectivePoint:
    return normalize([sum((a * x for a, x in zip(row, p.coords)), p.field.zero()) for row in matrix])


# ---------------------------------------------------------------------------
# projection PG(3) -> PG(2)


def plane_basis(plane: Sequence[FieldElement]) -> list[tuple[FieldElement, ...]]:
    """Reduced solution basis of ``plane . X = 0`` in K^4.

    The pivot is the first nonzero coefficient; one basis vector per remaining
    coordinate, in ascending order.
    """
    field = plane[0].field
    piv = next(i for i, c in enumerate(plane) if c)
    inv = plane[piv].inverse()
    basis = []
    for f in range(4):
        if f == piv:
            continue
        v = [field.zero()] * 4
        v[f] = field.one()
        v[piv] = -plane[f] * inv
        basis.append(tuple(v))
    return basis


def project_to_plane(
    center: ProjectivePoint,
    plane: Sequence[FieldElement],
    basis: Sequence[Sequence[FieldElement]],
    q: ProjectivePoint,
) -> ProjectivePoint:
    """Image of ``q`` under central projection from ``center`` onto ``plane``,
    in coordinates relative to ``basis`` (three points spanning the plane)."""
    field = _same_field(center, q)
    dot = lambda cov, pt: sum((a * x for a, x in zip(cov, pt)), field.zero())  # noqa: E731
    cp = dot(plane, center.coords)
    if not cp:
        raise CenterOnPlane("projection center lies on the target plane")
    if q == center:
        raise ProjectingCenter("cannot project the center itself")
    cq = dot(plane, q.coords)
    r = [cp * a - cq * b for a, b in zip(q.coords, center.coords)]
    # solve r = sum_i t_i basis[i]
    matrix = [[basis[j][i] for j in range(3)] + [r[i]] for i in range(4)]
    rows, pivots = rref(matrix)
    if 3 in pivots:
        raise ValueError("basis does not span the target plane")
    t = [field.zero()] * 3
    for row, pc in zip(rows, pivots):
        t[pc] = row[3]
    return normalize(t)


# ---------------------------------------------------------------------------
# plane curves


def monomials(degree: int) -> list[tuple[int, int, int]]:
    """Exponent triples of degree ``degree`` in graded-lexicographic order."""
    return [(a, b, degree - a - b) for a in range(degree, -1, -1) for b in range(degree - a, -1, -1)]


@dataclass(frozen=True)
class CurveCoefficients:
    degree: int
    coeffs: tuple[FieldElement, ...]

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    def __str__(self):
        names = ("X1", "X2", "X3")
        terms = []
        for c, exps in zip(self.coeffs, monomials(self.degree)):
            if c:
                mono = "*".join(f"{n}^{e}" if e > 1 else n for n, e in zip(names, exps) if e)
                terms.append(f"({c!r})*{mono}")
        return " + ".join(terms)


def curve(field: Field, degree: int, coeffs) -> CurveCoefficients:
    """Curve from raw coefficients, normalized so the first nonzero one is 1."""
    vals = [field(c) for c in coeffs]
    lead = next((c for c in vals if c), None)
    if lead is None:
        raise ZeroVector("all curve coefficients are zero")
    inv = lead.inverse()
    return CurveCoefficients(degree, tuple(c * inv for c in vals))


def _monomial_values(p: ProjectivePoint, degree: int) -> list[FieldElement]:
    x = p.coords
    one = p.field.one()
    pw = [[one] for _ in range(3)]
    for i in range(3):
        for _ in range(degree):
            pw[i].append(pw[i][-1] * x[i])
    return [pw[0][a] * pw[1][b] * pw[2][c] for a, b, c in monomials(degree)]


def evaluate_curve(c: CurveCoefficients, p: ProjectivePoint) -> FieldElement:
    if c.coeffs[0].field != p.field:
        raise MixedFields("curve and point over different fields")
    return sum((a * m for a, m in zip(c.coeffs, _monomial_values(p, c.degree))), p.field.zero())


def fit_curve(points: Sequence[ProjectivePoint], degree: int) -> list[CurveCoefficients]:
    """Basis of all curves of ``degree`` through every point (empty if none)."""
    if not points:
        raise ValueError("need at least one point")
    field = points[0].field
    rows = [_monomial_values(p, degree) for p in dict.fromkeys(points)]
    ncols = len(monomials(degree))
    return [curve(field, degree, v) for v in nullspace(rows, ncols, field)]


def conic_matrix(c: CurveCoefficients) -> list[list[FieldElement]]:
    if c.degree != 2:
        raise ValueError("not a conic")
    field = c.coeffs[0].field
    if field.characteristic == 2:
        raise CharTwoUnsupported("symmetric-matrix test needs characteristic != 2")
    a, b, cc, d, e, f = c.coeffs
    half = field(2).inverse()
    return [[a, b * half, cc * half], [b * half, d, e * half], [cc * half, e * half, f]]


def conic_is_irreducible(c: CurveCoefficients) -> bool:
    return bool(det3(conic_matrix(c)))


def points_on(l: ProjectiveLine, pts: Iterable[ProjectivePoint]) -> list[ProjectivePoint]:
    return [p for p in pts if l.contains(p)]
