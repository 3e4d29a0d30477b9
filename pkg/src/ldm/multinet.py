"""Labeled light dual multinets: verification, belonging lines, relabeling,
classification, and the Lagrange obstruction to group labelings.

A multinet is three ordered lists of points of PG(2).  Position ``j`` of
component ``i`` is the image of label ``j`` under the i-th labeling map; the
labels themselves are a :class:`~ldm.loops.MultTable` (or ``None`` for a purely
geometric configuration).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Sequence

from . import projective as pg
from .errors import (
    InvariantViolation,
    LabelNotOnLine,
    MissingLabels,
    NotAGroupLabel,
    NotASubgroup,
)
from .fields import Field
from .loops import (
    DEFAULT_CLOSURE_CAP,
    MultTable,
    PartialSquare,
    principal_isotope,
    row_quotient_group,
)
from .projective import CurveCoefficients, ProjectiveLine, ProjectivePoint


@dataclass(frozen=True, eq=False)
class LabeledMultinet:
    field: Field
    components: tuple[tuple[ProjectivePoint, ...], ...]
    labels: MultTable | None
    provenance: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        if len(comps) != 3:
            raise ValueError("a multinet has exactly three components")
        n = len(comps[0])
        if any(len(c) != n for c in comps):
            raise ValueError("components must have equal size")
        if self.labels is not None and self.labels.order != n:
            raise ValueError("label table order does not match component size")
        for c in comps:
            for p in c:
                if p.dim != 2 or p.field != self.field:
                    raise ValueError("components must be points of PG(2) over the multinet's field")
        object.__setattr__(self, "components", comps)

    @property
    def order(self) -> int:
        return len(self.components[0])

    def alpha(self, i: int, x: int) -> ProjectivePoint:
        """Image of label ``x`` in component ``i`` (1, 2 or 3)."""
        return self.components[i - 1][x]

    def all_points(self) -> list[ProjectivePoint]:
        return [p for c in self.components for p in c]

    def with_labels(self, labels: MultTable | None, **prov) -> LabeledMultinet:
        return LabeledMultinet(self.field, self.components, labels, {**self.provenance, **prov})

    def __eq__(self, other):
        return (
            isinstance(other, LabeledMultinet)
            and self.field == other.field
            and self.components == other.components
            and self.labels == other.labels
        )

    __hash__ = object.__hash__


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerifyReport:
    injective: bool
    disjoint: bool
    multinet_law: bool
    counterexamples: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.injective and self.disjoint and self.multinet_law

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "injective": self.injective,
            "disjoint": self.disjoint,
            "multinet_law": self.multinet_law,
            "counterexamples": self.counterexamples,
        }


def verify(m: LabeledMultinet) -> VerifyReport:
    """Check injectivity, disjointness and the collinearity law.

    Without labels the law is checked in its label-free form: every line
    through a point of the first and a point of the second component must
    contain a point of the third.
    """
    report = VerifyReport(True, True, True)
    seen: dict[ProjectivePoint, tuple[int, int]] = {}
    for ci, comp in enumerate(m.components, start=1):
        local: dict[ProjectivePoint, int] = {}
        for j, p in enumerate(comp):
            if p in local:
                if report.injective:
                    report.injective = False
                    report.counterexamples["injective"] = {"component": ci, "labels": [local[p], j]}
                continue
            local[p] = j
            if p in seen and seen[p][0] != ci and report.disjoint:
                report.disjoint = False
                report.counterexamples["disjoint"] = {
                    "point": p.to_json(),
                    "first": list(seen[p]),
                    "second": [ci, j],
                }
            seen.setdefault(p, (ci, j))
    a1, a2, a3 = m.components
    n = m.order
    if m.labels is not None:
        t = m.labels.table
        bad = _first_law_failure(m.field, a1, a2, a3, t)
        if bad is not None:
            x, y = bad
            report.multinet_law = False
            report.counterexamples["multinet_law"] = {"x": x, "y": y, "xy": t[x][y]}
    else:
        for x in range(n):
            for y in range(n):
                if a1[x] == a2[y]:
                    continue  # already reported as a disjointness failure
                ln = pg.join(a1[x], a2[y])
                if not any(ln.contains(p) for p in a3):
                    report.multinet_law = False
                    report.counterexamples["multinet_law"] = {"x": x, "y": y, "xy": None}
                    return report
    return report


def _first_law_failure(f: Field, a1, a2, a3, t) -> tuple[int, int] | None:
    n = len(a1)
    if not f.is_prime:
        for x in range(n):
            for y in range(n):
                if not pg.collinear(a1[x], a2[y], a3[t[x][y]]):
                    return x, y
        return None
    # prime fields: the same determinant on plain integers
    p = f.modulus
    ints = [[tuple(c.residue for c in pt.coords) for pt in comp] for comp in (a1, a2, a3)]
    i1, i2, i3 = ints
    for x in range(n):
        ax, ay, az = i1[x]
        for y in range(n):
            bx, by, bz = i2[y]
            lx, ly, lz = ay * bz - az * by, az * bx - ax * bz, ax * by - ay * bx
            cx, cy, cz = i3[t[x][y]]
            if (lx * cx + ly * cy + lz * cz) % p:
                return x, y
    return None


# ---------------------------------------------------------------------------
# belonging lines


@dataclass(frozen=True)
class LineRecord:
    line: ProjectiveLine
    S1: tuple[int, ...]
    S2: tuple[int, ...]
    S3: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.S1)

    def label_sets(self):
        return (self.S1, self.S2, self.S3)

    def to_json(self) -> dict:
        return {
            "line": self.line.to_json(),
            "length": self.length,
            "S1": list(self.S1),
            "S2": list(self.S2),
            "S3": list(self.S3),
        }


def _on(line: ProjectiveLine, comp: Sequence[ProjectivePoint]) -> tuple[int, ...]:
    return tuple(j for j, p in enumerate(comp) if line.contains(p))


def belonging_lines(m: LabeledMultinet) -> list[LineRecord]:
    """All lines meeting every component, sorted by normalized coordinates.

    Components are disjoint, so each such line passes through some pair from
    the first two components; spanning those pairs finds all of them.
    """
    if "lines" in m._cache:
        return m._cache["lines"]
    a1, a2, a3 = m.components
    n = m.order
    covered = [[False] * n for _ in range(n)]
    records = []
    for x in range(n):
        for y in range(n):
            if covered[x][y]:
                continue
            ln = pg.join(a1[x], a2[y])
            s1, s2 = _on(ln, a1), _on(ln, a2)
            for i in s1:
                for j in s2:
                    covered[i][j] = True
            s3 = _on(ln, a3)
            if s3:
                records.append(LineRecord(ln, s1, s2, s3))
    records.sort(key=lambda r: r.line.sort_key())
    m._cache["lines"] = records
    return records


def check_line_record(t: MultTable | None, rec: LineRecord) -> None:
    """Raise InvariantViolation unless the three label sets have equal size
    and (with labels) are closed under the product and both divisions."""
    s1, s2, s3 = map(set, rec.label_sets())
    if not len(s1) == len(s2) == len(s3):
        raise InvariantViolation(f"unequal label set sizes on {rec.line}: {len(s1)}, {len(s2)}, {len(s3)}")
    if t is None:
        return
    if any(t.mul(x, y) not in s3 for x in s1 for y in s2):
        raise InvariantViolation(f"S1*S2 not inside S3 on {rec.line}")
    if any(t.rdiv(z, y) not in s1 for z in s3 for y in s2):
        raise InvariantViolation(f"S3/S2 not inside S1 on {rec.line}")
    if any(t.ldiv(x, z) not in s2 for x in s1 for z in s3):
        raise InvariantViolation(f"S1\\S3 not inside S2 on {rec.line}")


def length_spectrum(m: LabeledMultinet) -> Counter:
    spectrum: Counter = Counter()
    for rec in belonging_lines(m):
        check_line_record(m.labels, rec)
        spectrum[rec.length] += 1
    return spectrum


def long_lines(m: LabeledMultinet) -> list[LineRecord]:
    return [r for r in belonging_lines(m) if r.length > 1]


def is_dual_3net(m: LabeledMultinet) -> bool:
    """Every line through points of two different components meets each
    component exactly once."""
    comps = m.components
    for a, b in ((0, 1), (0, 2), (1, 2)):
        for p in comps[a]:
            for q in comps[b]:
                ln = pg.join(p, q)
                if any(len(_on(ln, c)) != 1 for c in comps):
                    return False
    return True


# ---------------------------------------------------------------------------
# relabeling and submultinets


def _require_labels(m: LabeledMultinet) -> MultTable:
    if m.labels is None:
        raise MissingLabels("operation needs a label table")
    return m.labels


def relabel_through_line(m: LabeledMultinet, rec: LineRecord, u: int, v: int) -> LabeledMultinet:
    """Relabel by the principal loop isotope with unit u*v, whose three unit
    images then lie on ``rec.line``."""
    t = _require_labels(m)
    if u not in rec.S1 or v not in rec.S2:
        raise LabelNotOnLine(f"alpha1({u}) and alpha2({v}) must both lie on {rec.line}")
    a1, a2, a3 = m.components
    n = m.order
    b1 = tuple(a1[t.rdiv(x, v)] for x in range(n))
    b2 = tuple(a2[t.ldiv(u, y)] for y in range(n))
    out = LabeledMultinet(
        m.field,
        (b1, b2, a3),
        principal_isotope(t, u, v),
        {**m.provenance, "relabel": {"line": rec.line.to_json(), "u": u, "v": v}},
    )
    e = t.mul(u, v)
    if out.labels.unit != e:
        raise InvariantViolation("isotope unit differs from u*v")
    if not all(rec.line.contains(out.components[i][e]) for i in range(3)):
        raise InvariantViolation("unit images are not on the chosen line")
    if not verify(out).ok:
        raise InvariantViolation("relabeled multinet fails verification")
    return out


def coset_submultinet(m: LabeledMultinet, h: Sequence[int], g1: int, g2: int) -> LabeledMultinet:
    """Restriction to the coset triple (g1 H, H g2, g1 H g2), labeled by H."""
    t = _require_labels(m)
    if not t.is_group():
        raise NotAGroupLabel("coset submultinets need a group labeling")
    hs = sorted(set(h))
    hset = set(hs)
    if not hs or any(t.mul(a, b) not in hset for a in hs for b in hs):
        raise NotASubgroup("element set is not closed under the product")
    pos = {x: i for i, x in enumerate(hs)}
    sub = MultTable(
        tuple(t.names[x] for x in hs),
        tuple(tuple(pos[t.mul(a, b)] for b in hs) for a in hs),
    )
    a1, a2, a3 = m.components
    comps = (
        tuple(a1[t.mul(g1, x)] for x in hs),
        tuple(a2[t.mul(y, g2)] for y in hs),
        tuple(a3[t.mul(t.mul(g1, z), g2)] for z in hs),
    )
    out = LabeledMultinet(m.field, comps, sub, {**m.provenance, "coset": {"H": hs, "g1": g1, "g2": g2}})
    if not verify(out).ok:
        raise InvariantViolation("coset submultinet fails verification")
    return out


# ---------------------------------------------------------------------------
# partial latin square and the group-labeling obstruction


def partial_latin_square(m: LabeledMultinet) -> PartialSquare:
    """Entry (i, j) is the unique k with alpha1(i), alpha2(j), alpha3(k)
    collinear, or ``None`` when several k qualify."""
    n = m.order
    entries: list[list[int | None]] = [[None] * n for _ in range(n)]
    for rec in belonging_lines(m):
        val = rec.S3[0] if len(rec.S3) == 1 else None
        for i in rec.S1:
            for j in rec.S2:
                entries[i][j] = val
    return PartialSquare(tuple(tuple(r) for r in entries))


def third_point_candidates(m: LabeledMultinet) -> list[list[tuple[int, ...]]]:
    """For each (i, j), the labels k with alpha3(k) on the line alpha1(i) alpha2(j)."""
    n = m.order
    out: list[list[tuple[int, ...]]] = [[()] * n for _ in range(n)]
    for rec in belonging_lines(m):
        for i in rec.S1:
            for j in rec.S2:
                out[i][j] = rec.S3
    return out


@dataclass(frozen=True)
class ObstructionVerdict:
    verdict: str  # "OBSTRUCTED" or "INCONCLUSIVE"
    quotient_order: int | None
    rows: tuple[int, ...]

    @property
    def obstructed(self) -> bool:
        return self.verdict == "OBSTRUCTED"

    def to_json(self) -> dict:
        if self.obstructed:
            return {"verdict": self.verdict, "quotient_order": self.quotient_order}
        return {"verdict": self.verdict}


def group_labeling_obstruction(m: LabeledMultinet, cap: int = DEFAULT_CLOSURE_CAP) -> ObstructionVerdict:
    """OBSTRUCTED(t) when the complete rows of the partial square generate a
    permutation group whose order t does not divide n."""
    s = partial_latin_square(m)
    rows = tuple(s.complete_rows())
    if len(rows) < 2:
        return ObstructionVerdict("INCONCLUSIVE", None, rows)
    t = row_quotient_group(s, rows, cap).order
    if m.order % t:
        return ObstructionVerdict("OBSTRUCTED", t, rows)
    return ObstructionVerdict("INCONCLUSIVE", t, rows)


# ---------------------------------------------------------------------------
# classification


KINDS = (
    "CONTAINED_IN_LINE",
    "TRIANGLE",
    "PENCIL",
    "CONIC_LINE",
    "TETRAHEDRON",
    "ALGEBRAIC_OTHER",
    "UNCLASSIFIED",
)


@dataclass(frozen=True)
class ClassificationVerdict:
    kind: str
    lines: tuple[ProjectiveLine, ...] = ()
    curve: CurveCoefficients | None = None
    center: ProjectivePoint | None = None

    def covers(self, points: Sequence[ProjectivePoint]) -> bool:
        def on_cover(p):
            if any(l.contains(p) for l in self.lines):
                return True
            return self.curve is not None and not pg.evaluate_curve(self.curve, p)

        if self.kind == "UNCLASSIFIED":
            return True
        return all(on_cover(p) for p in points)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"verdict": self.kind}
        if self.lines:
            out["lines"] = [l.to_json() for l in self.lines]
        if self.curve is not None:
            out["curve"] = {"degree": self.curve.degree, "coefficients": self.curve.to_json()}
        if self.center is not None:
            out["center"] = self.center.to_json()
        return out


def rich_lines(points: Sequence[ProjectivePoint], min_points: int = 3) -> list[tuple[ProjectiveLine, frozenset[int]]]:
    """Lines through at least ``min_points`` of ``points``, sorted, with the
    indices of the points they contain."""
    pts = list(dict.fromkeys(points))
    npts = len(pts)
    done: set[tuple[int, int]] = set()
    found = []
    for i in range(npts):
        for j in range(i + 1, npts):
            if (i, j) in done:
                continue
            ln = pg.join(pts[i], pts[j])
            on = [k for k in range(npts) if ln.contains(pts[k])]
            done.update(combinations(on, 2))
            if len(on) >= min_points:
                found.append((ln, frozenset(on)))
    found.sort(key=lambda item: item[0].sort_key())
    return found


def _covers(npts: int, lines: list[frozenset[int]], k: int) -> list[tuple[int, ...]]:
    """All sets of exactly k line indices whose union is every point, sorted."""
    if not lines:
        return []
    biggest = max(len(l) for l in lines)
    through: dict[int, list[int]] = {p: [] for p in range(npts)}
    for idx, l in enumerate(lines):
        for p in l:
            through[p].append(idx)
    results: set[tuple[int, ...]] = set()

    def search(uncovered: frozenset[int], chosen: tuple[int, ...]):
        if not uncovered:
            if len(chosen) == k:
                results.add(tuple(sorted(chosen)))
            return
        left = k - len(chosen)
        if left == 0 or len(uncovered) > left * biggest:
            return
        first = min(uncovered)
        for idx in through[first]:
            if idx not in chosen:
                search(uncovered - lines[idx], chosen + (idx,))

    search(frozenset(range(npts)), ())
    return sorted(results)


def _make_verdict(points, **kw) -> ClassificationVerdict:
    verdict = ClassificationVerdict(**kw)
    if not verdict.covers(points):
        raise InvariantViolation(f"{verdict.kind} witness does not cover every point")
    return verdict


def classify(m: LabeledMultinet) -> ClassificationVerdict:
    """Deterministic type of the point configuration.

    Checks run in this order: one line holds everything; a cover by three
    lines (concurrent or not); a line plus an irreducible conic; four lines
    with exactly three concurrent off the fourth; any cubic.  Only lines
    through at least three points are considered for covers.
    """
    if "classify" in m._cache:
        return m._cache["classify"]
    points = list(dict.fromkeys(m.all_points()))
    verdict = _classify_points(points, m.order)
    m._cache["classify"] = verdict
    return verdict


def _classify_points(points: list[ProjectivePoint], n: int) -> ClassificationVerdict:
    npts = len(points)
    cand = rich_lines(points, 3)
    for ln, on in cand:
        if len(on) == npts:
            return _make_verdict(points, kind="CONTAINED_IN_LINE", lines=(ln,))
    if n <= 2:
        return ClassificationVerdict("UNCLASSIFIED")
    sets = [on for _, on in cand]
    lines = [ln for ln, _ in cand]

    if not _covers(npts, sets, 2):
        triples = _covers(npts, sets, 3)
        if triples:
            chosen = tuple(lines[i] for i in triples[0])
            centre = pg.concurrency_point(chosen)
            if centre is None:
                return _make_verdict(points, kind="TRIANGLE", lines=chosen)
            return _make_verdict(points, kind="PENCIL", lines=chosen, center=centre)

        for ln, on in cand:
            rest = [p for k, p in enumerate(points) if k not in on]
            if len(rest) < 5:
                continue
            # an irreducible conic meets every line in at most two points
            if any(len(other - on) >= 3 for other in sets):
                continue
            conics = pg.fit_curve(rest, 2)
            if len(conics) == 1 and pg.conic_is_irreducible(conics[0]):
                return _make_verdict(points, kind="CONIC_LINE", lines=(ln,), curve=conics[0])

        for quad in _covers(npts, sets, 4):
            chosen = [lines[i] for i in quad]
            for odd in range(4):
                three = [l for i, l in enumerate(chosen) if i != odd]
                centre = pg.concurrency_point(three)
                if centre is None or chosen[odd].contains(centre):
                    continue
                others = [
                    pg.concurrency_point([l for i, l in enumerate(chosen) if i != o]) for o in range(4) if o != odd
                ]
                if any(c is not None for c in others):
                    continue
                return _make_verdict(
                    points, kind="TETRAHEDRON", lines=tuple(three) + (chosen[odd],), center=centre
                )

    cubics = pg.fit_curve(points, 3)
    if cubics:
        return _make_verdict(points, kind="ALGEBRAIC_OTHER", curve=cubics[0])
    return ClassificationVerdict("UNCLASSIFIED")


def is_algebraic(m: LabeledMultinet) -> CurveCoefficients | None:
    """A cubic through all 3n points, or None."""
    cubics = pg.fit_curve(m.all_points(), 3)
    return cubics[0] if cubics else None


def transform(m: LabeledMultinet, matrix) -> LabeledMultinet:
    """Apply one invertible 3x3 matrix to every point."""
    f = m.field
    mat = [[f(v) for v in row] for row in matrix]
    if not pg.det3(mat):
        raise ValueError("matrix is singular")
    comps = tuple(tuple(pg.apply_matrix(mat, p) for p in c) for c in m.components)
    return LabeledMultinet(
        f, comps, m.labels, {**m.provenance, "transform": [[x.to_json() for x in row] for row in mat]}
    )
