import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldm.errors import (
    CenterOnPlane,
    CharTwoUnsupported,
    CoincidentArguments,
    FewerThanTwoDistinct,
    MixedFields,
    ProjectingCenter,
    ZeroVector,
)
from ldm.fields import make_prime_field
from ldm.projective import (
    apply_matrix,
    are_concurrent,
    collinear,
    collinear_pg3,
    concurrency_point,
    conic_is_irreducible,
    curve,
    det3,
    evaluate_curve,
    fit_curve,
    join,
    line,
    meet,
    monomials,
    normalize,
    plane_basis,
    point,
    project_to_plane,
    rank,
)

F101 = make_prime_field(101)


def test_normalize(F19):
    assert point(F19, 2, 4, 2) == point(F19, 1, 2, 1)
    assert point(F19, 2, 4, 2).to_json() == [1, 2, 1]
    assert point(F19, 0, 0, 5).to_json() == [0, 0, 1]
    assert point(F19, 3, 0, 0).to_json() == [1, 0, 0]
    with pytest.raises(ZeroVector):
        point(F19, 0, 0, 0)


def test_normalize_cyclotomic(Q9):
    z = Q9.gen()
    p = normalize([z, z * z, z * 3])
    assert p.coords[2] == 1
    assert p == normalize([Q9.one(), z, Q9(3)])


def test_collinear_examples(F7):
    assert not collinear(point(F7, 1, 0, 0), point(F7, 0, 1, 0), point(F7, 0, 0, 1))
    assert collinear(point(F7, 0, 1, 2), point(F7, 3, 0, 1), point(F7, 6, 6, 0))
    p, r = point(F7, 1, 2, 3), point(F7, 4, 1, 1)
    assert collinear(p, p, r)


def test_collinear_mixed_fields(F7, F19):
    with pytest.raises(MixedFields):
        collinear(point(F7, 1, 0, 0), point(F19, 0, 1, 0), point(F7, 0, 0, 1))


def test_collinear_pg3():
    F11 = make_prime_field(11)
    x, y = 2, 3
    assert collinear_pg3(point(F11, x, 0, 1, 0), point(F11, 1, y, 0, 0), point(F11, 0, -x * y, 1, 0))
    e = [point(F11, *row) for row in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0])]
    assert not collinear_pg3(*e)
    assert collinear_pg3(e[0], e[0], e[1])


def test_join_meet(F7):
    assert join(point(F7, 1, 0, 0), point(F7, 0, 1, 0)) == line(F7, 0, 0, 1)
    assert meet(line(F7, 1, 0, 0), line(F7, 0, 1, 0)) == point(F7, 0, 0, 1)
    # chord of the conic through f2(2), f2(3) passes through f1(6) = (6, -1, 0)
    f2 = lambda u: point(F7, u, F7(u).inverse(), 1)  # noqa: E731
    assert join(f2(2), f2(3)).contains(point(F7, 6, -1, 0))
    with pytest.raises(CoincidentArguments):
        join(point(F7, 1, 2, 3), point(F7, 2, 4, 6))
    with pytest.raises(CoincidentArguments):
        meet(line(F7, 1, 1, 0), line(F7, 3, 3, 0))


def test_concurrency(F7):
    lines = [line(F7, 1, 0, 0), line(F7, 0, 1, 0), line(F7, 1, 1, 0)]
    assert are_concurrent(lines)
    assert concurrency_point(lines) == point(F7, 0, 0, 1)
    sides = [line(F7, 1, 0, 0), line(F7, 0, 1, 0), line(F7, 0, 0, 1)]
    assert not are_concurrent(sides)
    assert concurrency_point(sides) is None
    with pytest.raises(FewerThanTwoDistinct):
        are_concurrent([line(F7, 1, 0, 0), line(F7, 2, 0, 0)])


def test_projection_examples(F19):
    center = point(F19, 0, 0, 0, 1)
    plane = [F19(0), F19(0), F19(0), F19(1)]
    basis = plane_basis(plane)
    q = point(F19, 3, 5, 7, 2)
    assert project_to_plane(center, plane, basis, q) == point(F19, 3, 5, 7)
    # a point already on the plane maps to its own basis coordinates
    plane = [F19(1), F19(2), F19(0), F19(5)]
    basis = plane_basis(plane)
    t = [F19(2), F19(7), F19(1)]
    on_plane = normalize([sum((t[j] * basis[j][i] for j in range(3)), F19(0)) for i in range(4)])
    assert project_to_plane(point(F19, 1, 1, 1, 1), plane, basis, on_plane) == normalize(t)
    with pytest.raises(CenterOnPlane):
        project_to_plane(on_plane, plane, basis, point(F19, 1, 1, 1, 1))
    c = point(F19, 1, 1, 1, 1)
    with pytest.raises(ProjectingCenter):
        project_to_plane(c, plane, basis, c)


def test_projection_of_coplanar_points_is_collinear(F19):
    rng_pts = [point(F19, 0, a, b, 1) for a, b in [(1, 2), (3, 5), (7, 7), (11, 4), (2, 13)]]
    plane = [F19(0), F19(0), F19(1), F19(0)]
    basis = plane_basis(plane)
    center = point(F19, 0, 1, 3, 2)  # on X1=0, like the points
    imgs = [project_to_plane(center, plane, basis, q) for q in rng_pts]
    for a, b, c in itertools.combinations(imgs, 3):
        assert collinear(a, b, c)


def test_monomial_order():
    assert monomials(3) == [
        (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
        (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
    ]
    assert len(monomials(2)) == 6


def test_evaluate_curve(F7):
    xyz = curve(F7, 3, [0, 0, 0, 0, 1, 0, 0, 0, 0, 0])
    assert evaluate_curve(xyz, point(F7, 1, 0, 0)) == 0
    c = curve(F7, 2, [0, 1, 0, 0, 0, -1])
    for u in range(1, 7):
        assert evaluate_curve(c, point(F7, u, F7(u).inverse(), 1)) == 0
    assert evaluate_curve(c, point(F7, 1, 1, 0)) == 1


def test_conic_irreducible(F7):
    assert conic_is_irreducible(curve(F7, 2, [0, 1, 0, 0, 0, -1]))
    assert not conic_is_irreducible(curve(F7, 2, [0, 1, 0, 0, 0, 0]))
    assert not conic_is_irreducible(curve(F7, 2, [1, 0, 0, 0, 0, 0]))
    with pytest.raises(CharTwoUnsupported):
        conic_is_irreducible(curve(make_prime_field(2), 2, [0, 1, 0, 0, 0, 1]))


def test_curve_normalization(F7):
    c = curve(F7, 2, [0, 3, 0, 0, 0, 4])
    assert c.coeffs[1] == 1
    with pytest.raises(ZeroVector):
        curve(F7, 2, [0] * 6)


def _general_points(field, rng, count, degree=3):
    """Random points, rejecting any that fail to add an independent condition."""
    pts = []
    while len(pts) < count:
        p = point(field, *[rng.randrange(field.modulus) for _ in range(2)], 1)
        if p in pts:
            continue
        if len(fit_curve(pts + [p], degree)) == len(monomials(degree)) - len(pts) - 1:
            pts.append(p)
    return pts


def test_fit_nine_points(rng):
    pts = _general_points(F101, rng, 9)
    basis = fit_curve(pts, 3)
    assert len(basis) == 1
    assert all(evaluate_curve(basis[0], p) == 0 for p in pts)


def test_fit_triangle_contains_xyz():
    from instances import triangle

    m = triangle(4)
    basis = fit_curve(m.all_points(), 3)
    xyz = curve(m.field, 3, [0, 0, 0, 0, 1, 0, 0, 0, 0, 0])
    assert basis == [xyz]


def test_fit_tetrahedron_empty():
    from instances import tetrahedron

    assert fit_curve(tetrahedron(5).all_points(), 3) == []


@st.composite
def f101_points(draw, n):
    coords = draw(
        st.lists(st.tuples(*[st.integers(0, 100)] * 3).filter(any), min_size=n, max_size=n)
    )
    return [point(F101, *c) for c in coords]


@settings(max_examples=60, deadline=None)
@given(f101_points(3), st.lists(st.integers(1, 100), min_size=3, max_size=3), st.permutations([0, 1, 2]))
def test_collinear_invariant_under_permutation_and_scaling(pts, scales, perm):
    base = collinear(*pts)
    scaled = [normalize([F101(s) * c for c in p.coords]) for p, s in zip(pts, scales)]
    assert collinear(*[scaled[i] for i in perm]) == base
    raw = [[F101(s) * c for c in p.coords] for p, s in zip(pts, scales)]
    assert (det3(raw) == 0) == base


@settings(max_examples=60, deadline=None)
@given(f101_points(2))
def test_join_contains_both(pts):
    p, q = pts
    if p == q:
        return
    l = join(p, q)
    assert l.contains(p) and l.contains(q)
    m = join(q, point(F101, 1, 2, 3)) if not l.contains(point(F101, 1, 2, 3)) else None
    if m is not None and m != l:
        x = meet(l, m)
        assert l.contains(x) and m.contains(x)


@settings(max_examples=40, deadline=None)
@given(f101_points(12), st.sampled_from([2, 3]))
def test_fit_curve_dimension_formula(pts, degree):
    from ldm.projective import _monomial_values

    distinct = list(dict.fromkeys(pts))
    basis = fit_curve(distinct, degree)
    rows = [_monomial_values(p, degree) for p in distinct]
    assert len(basis) == len(monomials(degree)) - rank(rows)
    for c in basis:
        assert all(evaluate_curve(c, p) == 0 for p in distinct)


def _invertible(field, rng):
    while True:
        m = [[field(rng.randrange(field.modulus)) for _ in range(3)] for _ in range(3)]
        if det3(m):
            return m


@settings(max_examples=30, deadline=None)
@given(f101_points(6), st.randoms(use_true_random=False))
def test_projective_invariance(pts, rnd):
    mat = _invertible(F101, rnd)
    img = [apply_matrix(mat, p) for p in pts]
    for i, j, k in itertools.combinations(range(6), 3):
        assert collinear(pts[i], pts[j], pts[k]) == collinear(img[i], img[j], img[k])
    distinct = list(dict.fromkeys(pts))
    img_distinct = [apply_matrix(mat, p) for p in distinct]
    for d in (2, 3):
        assert len(fit_curve(distinct, d)) == len(fit_curve(img_distinct, d))
    a, b, c = pts[:3]
    if len({a, b, c}) == 3 and not collinear(a, b, c):
        lines = [join(a, b), join(a, c), join(b, c)]
        moved = [join(img[0], img[1]), join(img[0], img[2]), join(img[1], img[2])]
        assert are_concurrent(lines) == are_concurrent(moved)
