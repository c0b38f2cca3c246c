from fractions import Fraction

import pytest

from core.delzant import validate
from core.errors import EmptyReduction, InvalidSubspace, InvalidTriple, IsotropyViolation, NotSmooth
from core.field import eval_sign
from core.linalg import dot
from core import reduction
from core.polyhedron import contains, enumerate_faces, is_simple, make_polyhedron, slack
from core.quasilattice import contains as q_contains
from core.quasilattice import standard
from core.reduction import (
    classify,
    isotropy_check,
    level_lift,
    make_subspace,
    project,
    pullback,
    reduce,
    reduce_smooth,
    reduced_polyhedron,
    restrict,
    translate_to_level,
)
from core.types import DelzantTriple, SubgroupClass
from utils.random_triples import random_cases

HALF = Fraction(1, 2)


@pytest.fixture
def irrational_line(sqrt2):
    """𝔨 = ℝ(−1, √2)，商坐标取 (0, 1)。"""
    return make_subspace(sqrt2, 2, [(-1, sqrt2.alpha)], [(0, 1)])


@pytest.fixture
def half_line(qq):
    return make_subspace(qq, 2, [(-1, HALF)], [(0, 1)])


def _normals(P):
    return [h.normal for h in P.halfspaces]


def _offsets(P):
    return [h.offset for h in P.halfspaces]


# ----------------------------------------------------------------------
# 子空间与坐标
# ----------------------------------------------------------------------


def test_make_subspace_completes_with_axes(qq):
    S = make_subspace(qq, 3, [(1, 1, 0)])
    assert S.k == 1
    assert S.quotient_basis == ((1, 0, 0), (0, 0, 1))


def test_make_subspace_rejects_bad_input(qq):
    with pytest.raises(InvalidSubspace):
        make_subspace(qq, 2, [])
    with pytest.raises(InvalidSubspace):
        make_subspace(qq, 2, [(1, 0), (0, 1)])
    with pytest.raises(InvalidSubspace):
        make_subspace(qq, 3, [(1, 0, 0), (2, 0, 0)])
    with pytest.raises(InvalidSubspace):
        make_subspace(qq, 2, [(1, 0)], [(2, 0)])
    with pytest.raises(InvalidSubspace):
        make_subspace(qq, 2, [(1, 0, 0)])


def test_projection_and_pullback_are_dual(irrational_line, sqrt2):
    a = sqrt2.alpha
    assert project(irrational_line, (1, 0)) == (a,)
    assert project(irrational_line, (0, 1)) == (1,)
    assert project(irrational_line, irrational_line.k_basis[0]) == (0,)
    mu = pullback(irrational_line, (1,))
    assert mu == (a, 1)
    assert restrict(irrational_line, mu) == (0,)
    X = sqrt2.vector([3, -2])
    assert dot(mu, X) == dot(sqrt2.vector([1]), project(irrational_line, X))


def test_level_lift(qq):
    S = make_subspace(qq, 2, [(1, 1)])
    mu0 = level_lift(S, (HALF,))
    assert mu0 == (0, HALF)
    assert restrict(S, mu0) == (HALF,)
    with pytest.raises(InvalidSubspace):
        level_lift(S, (1, 2))


def test_translate_to_level(cp2, qq):
    S = make_subspace(qq, 2, [(0, 1)])
    translated, mu0 = translate_to_level(cp2, S, (HALF,))
    assert mu0 == (0, HALF)
    assert _offsets(translated.polyhedron) == [0, -HALF, -HALF]
    assert _normals(translated.polyhedron) == _normals(cp2.polyhedron)

    _, custom = translate_to_level(cp2, S, (HALF,), lift=(5, HALF))
    assert custom == (5, HALF)
    with pytest.raises(InvalidSubspace):
        translate_to_level(cp2, S, (HALF,), lift=(0, 0))


# ----------------------------------------------------------------------
# 带状区域：无理与有理斜率
# ----------------------------------------------------------------------


def test_strip_irrational_reduced_polyhedron(strip_sqrt2, irrational_line, sqrt2):
    a = sqrt2.alpha
    raw = reduced_polyhedron(strip_sqrt2, irrational_line)
    assert _normals(raw) == [(a,), (1,), (-1,)]
    assert _offsets(raw) == [-1, 0, -1]


def test_strip_irrational_reduction(strip_sqrt2, irrational_line, sqrt2):
    a = sqrt2.alpha
    result = reduce(strip_sqrt2, irrational_line)
    assert result.isotropy.passed
    assert result.kept == (1, 2)
    assert result.discarded == (0,)
    assert enumerate_faces(result.reduced_triple.polyhedron).vertices == ((0,), (1,))
    assert result.reduced_triple.quasilattice.generators == ((a,), (1,))
    assert not result.reduced_is_lattice
    assert result.subgroup.subgroup_class is SubgroupClass.NOT_CLOSED
    assert result.subgroup.witness == ()
    assert result.embedded_vertices == ((0, 0), (a, 1))

    charts = result.reduced_atlas
    assert [c.gamma.generators for c in charts] == [((a - 1,),), ((2 - a,),)]
    assert not any(c.gamma.is_finite for c in charts)
    assert result.annotation is None


def test_strip_half_slope_is_orbifold(strip, half_line):
    result = reduce_smooth(strip, half_line)
    assert result.kept == (1, 2)
    assert result.discarded == (0,)
    assert result.subgroup.subgroup_class is SubgroupClass.CLOSED
    assert result.subgroup.witness == ((-2, 1),)
    assert result.reduced_is_lattice
    for chart in result.reduced_atlas:
        assert chart.gamma.order == 2
        assert chart.gamma.invariant_factors == (2,)
    assert result.annotation == "orbifold"


def test_strip_poles_touch(strip, qq):
    S = make_subspace(qq, 2, [(0, 1)])
    with pytest.raises(IsotropyViolation) as info:
        reduce(strip, S)
    report = info.value.report
    assert not report.passed
    assert report.dim_check and report.simple_check
    assert not report.uniqueness_check
    (witness,) = report.witnesses
    assert witness.check == "uniqueness"
    assert witness.index == 1
    assert "zero normal" in witness.message


def test_strip_vertical_half_level_is_halfline(strip, qq):
    S = make_subspace(qq, 2, [(0, 1)])
    result = reduce_smooth(strip, S, (HALF,))
    assert result.kept == (0,)
    assert result.discarded == (1, 2)
    assert result.translation_lift == (0, HALF)
    assert result.embedded_vertices == ((-1, HALF),)
    assert enumerate_faces(result.reduced_triple.polyhedron).rays == ((1,),)
    assert result.annotation == "manifold"


# ----------------------------------------------------------------------
# 正方形与 CP²
# ----------------------------------------------------------------------


def test_square_antidiagonal_has_duplicate_facets(square, qq):
    S = make_subspace(qq, 2, [(1, -1)])
    report = isotropy_check(reduced_polyhedron(square, S), 2, 1)
    assert not report.passed
    assert report.dim_check
    assert {w.index for w in report.witnesses if w.check == "uniqueness"} == {1, 3}


def test_square_diagonal_levels(square, qq):
    S = make_subspace(qq, 2, [(1, 1)])
    with pytest.raises(IsotropyViolation) as info:
        reduce(square, S, (0,))
    assert not info.value.report.dim_check
    assert info.value.report.dim == 0

    with pytest.raises(IsotropyViolation) as info:
        reduce(square, S, (1,))
    assert info.value.report.dim_check
    assert not info.value.report.uniqueness_check

    result = reduce_smooth(square, S, (HALF,))
    assert result.translation_lift == (0, HALF)
    assert result.kept == (0, 1)
    assert result.discarded == (2, 3)
    assert enumerate_faces(result.reduced_triple.polyhedron).vertices == ((0,), (HALF,))
    assert result.embedded_vertices == ((0, HALF), (HALF, 0))
    assert result.annotation == "manifold"


def test_square_level_outside_is_empty(square, qq):
    S = make_subspace(qq, 2, [(1, 1)])
    with pytest.raises(EmptyReduction):
        reduce(square, S, (3,))


def test_cp2_circle_reduction(cp2, qq):
    S = make_subspace(qq, 2, [(0, 1)])
    result = reduce_smooth(cp2, S, (HALF,))
    assert result.translation_lift == (0, HALF)
    assert result.kept == (0, 2)
    assert result.discarded == (1,)
    assert enumerate_faces(result.reduced_triple.polyhedron).vertices == ((0,), (HALF,))
    assert result.subgroup.witness == ((0, 1),)
    assert result.annotation == "manifold"


def test_embedded_vertices_do_not_depend_on_lift(cp2, qq):
    S = make_subspace(qq, 2, [(0, 1)])
    default = reduce(cp2, S, (HALF,))
    shifted = reduce(cp2, S, (HALF,), lift=(5, HALF))
    assert shifted.translation_lift == (5, HALF)
    assert enumerate_faces(shifted.reduced_triple.polyhedron).vertices == ((-5,), (-Fraction(9, 2),))
    assert sorted(shifted.embedded_vertices) == sorted(default.embedded_vertices)


def test_reduce_smooth_validates_once(cp2, qq, monkeypatch):
    calls = []

    def counting_validate(triple):
        calls.append(triple)
        return validate(triple)

    monkeypatch.setattr(reduction, "validate", counting_validate)
    S = make_subspace(qq, 2, [(0, 1)])
    result = reduce_smooth(cp2, S, (HALF,))
    assert result.annotation == "manifold"
    assert len(calls) == 1


# ----------------------------------------------------------------------
# 前提与分类
# ----------------------------------------------------------------------


def test_reduce_rejects_invalid_triple(qq):
    P = make_polyhedron(qq, 2, [((1, 0), 0)])
    with pytest.raises(InvalidTriple) as info:
        reduce(DelzantTriple(P, standard(qq, 2)), make_subspace(qq, 2, [(0, 1)]))
    assert "pointed" in [issue.code for issue in info.value.report.issues]


def test_reduce_smooth_needs_standard_lattice(strip_sqrt2, irrational_line):
    with pytest.raises(NotSmooth):
        reduce_smooth(strip_sqrt2, irrational_line)


def test_classify(strip_sqrt2, irrational_line, strip, half_line):
    irrational = classify(strip_sqrt2, irrational_line)
    assert irrational.subgroup_class is SubgroupClass.NOT_CLOSED
    assert not irrational.quotient_is_lattice

    rational = classify(strip, half_line)
    assert rational.subgroup_class is SubgroupClass.CLOSED
    assert rational.quotient_is_lattice
    assert rational.quotient_lattice.generators == ((HALF,), (1,))


def test_classify_plane_in_three_space(qq):
    P = make_polyhedron(qq, 3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)])
    S = make_subspace(qq, 3, [(1, 0, 0), (0, 1, 1)])
    result = classify(DelzantTriple(P, standard(qq, 3)), S)
    assert result.subgroup_class is SubgroupClass.CLOSED
    assert len(result.subgroup.witness) == 2


# ----------------------------------------------------------------------
# 随机有理实例上的性质
# ----------------------------------------------------------------------


REQUIRED_PASSES = 200


def test_random_reductions_satisfy_invariants():
    passed = 0
    for triple, S, level in random_cases(seed=20240611, count=400):
        if passed == REQUIRED_PASSES:
            break
        try:
            result = reduce(triple, S, level)
        except (IsotropyViolation, EmptyReduction):
            continue
        passed += 1
        reduced = result.reduced_triple
        P = reduced.polyhedron
        expected = triple.n - S.k
        assert P.dim_ambient == expected
        assert enumerate_faces(P).dim == expected
        assert is_simple(P)
        assert validate(reduced).valid

        for h in P.halfspaces:
            assert q_contains(reduced.quasilattice, h.normal)

        raw = reduced_polyhedron(result.translated_triple, S)
        faces = enumerate_faces(P)
        for j in result.discarded:
            h = raw.halfspaces[j]
            assert all(eval_sign(slack(h, v)) > 0 for v in faces.vertices)
            assert all(eval_sign(dot(h.normal, r)) >= 0 for r in faces.rays)

        assert len(result.reduced_atlas) == len(faces.vertices)
        for v in result.embedded_vertices:
            assert contains(triple.polyhedron, v)
            assert restrict(S, v) == result.level
    assert passed == REQUIRED_PASSES
