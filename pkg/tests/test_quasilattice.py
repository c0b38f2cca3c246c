import random
from fractions import Fraction

import pytest

from core.errors import InvalidQuasilattice, RankDeficient
from core.linalg import Mat
from core.quasilattice import (
    classify_subgroup,
    contains,
    equivalent,
    image,
    is_lattice,
    make_quasilattice,
    rank_q,
    standard,
    subspace_intersection,
)
from core.types import Quasilattice, SubgroupClass


def test_standard_lattice(qq):
    Z2 = standard(qq, 2)
    assert rank_q(Z2) == 2
    assert is_lattice(Z2)
    assert contains(Z2, (3, -4))
    assert not contains(Z2, (Fraction(1, 2), 0))


def test_make_quasilattice_validates(qq):
    with pytest.raises(InvalidQuasilattice):
        make_quasilattice(qq, 2, [(1, 0), (2, 0)])
    with pytest.raises(InvalidQuasilattice):
        make_quasilattice(qq, 2, [(1, 0, 0)])


def test_z_plus_alpha_z(sqrt2):
    a = sqrt2.alpha
    Q = make_quasilattice(sqrt2, 1, [(1,), (a,)])
    assert rank_q(Q) == 2
    assert not is_lattice(Q)
    assert contains(Q, (3 - 2 * a,))
    assert not contains(Q, (a / 2,))
    assert contains(Q, (a * a * a,))  # α³ = 2α


def test_rational_generators_stay_a_lattice(qq):
    Q = make_quasilattice(qq, 1, [(1,), (Fraction(1, 2),)])
    assert rank_q(Q) == 1
    assert is_lattice(Q)
    assert equivalent(Q, make_quasilattice(qq, 1, [(Fraction(1, 2),)]))
    assert not equivalent(Q, standard(qq, 1))


def test_image_under_projection(sqrt2):
    Z2 = standard(sqrt2, 2)
    p = Mat.from_rows(sqrt2, [[sqrt2.alpha, 1]])
    pQ = image(Z2, p)
    assert pQ.generators == ((sqrt2.alpha,), (1,))
    assert not is_lattice(pQ)
    with pytest.raises(RankDeficient):
        image(Z2, Mat.from_rows(sqrt2, [[0, 0]]))


def test_intersection_with_irrational_line(sqrt2):
    a = sqrt2.alpha
    Z2 = standard(sqrt2, 2)
    assert subspace_intersection(Z2, [(-1, a)]) == []
    report = classify_subgroup(Z2, [(-1, a)])
    assert report.subgroup_class is SubgroupClass.NOT_CLOSED
    assert report.witness == ()


def test_intersection_with_rational_line(sqrt2):
    Z2 = standard(sqrt2, 2)
    half = Fraction(1, 2)
    assert subspace_intersection(Z2, [(-1, half)]) == [(-2, 1)]
    report = classify_subgroup(Z2, [(-1, half)])
    assert report.subgroup_class is SubgroupClass.CLOSED
    assert report.witness == ((-2, 1),)


def test_intersection_orientation_follows_w_basis(qq):
    Z2 = standard(qq, 2)
    assert subspace_intersection(Z2, [(2, -4)]) == [(1, -2)]
    assert subspace_intersection(Z2, [(-2, 4)]) == [(-1, 2)]


def test_intersection_with_plane(qq):
    Z3 = standard(qq, 3)
    basis = subspace_intersection(Z3, [(1, 1, 0), (0, 0, 1)])
    assert len(basis) == 2
    for v in basis:
        assert v[0] == v[1]
    report = classify_subgroup(Z3, [(1, 1, 0), (0, 0, 1)])
    assert report.subgroup_class is SubgroupClass.CLOSED


def test_intersection_with_whole_space(qq):
    Q = make_quasilattice(qq, 2, [(1, 0), (0, 1), (Fraction(1, 2), Fraction(1, 2))])
    basis = subspace_intersection(Q, [(1, 0), (0, 1)])
    assert len(basis) == 2
    assert equivalent(make_quasilattice(qq, 2, basis), Q)


def _quadratic(field, rng: random.Random):
    return rng.randint(-3, 3) + rng.randint(-3, 3) * field.alpha


def _random_quasilattice(field, rng: random.Random) -> Quasilattice:
    """ℤ² 加一个 ℤ + αℤ 系数的额外生成元。"""
    return make_quasilattice(field, 2, [(1, 0), (0, 1), (_quadratic(field, rng), _quadratic(field, rng))])


def _combine(Q: Quasilattice, coeffs):
    v = [Q.field.zero] * Q.ambient_dim
    for c, g in zip(coeffs, Q.generators):
        v = [x + c * y for x, y in zip(v, g)]
    return tuple(v)


def _random_member(Q: Quasilattice, rng: random.Random):
    return _combine(Q, [rng.randint(-4, 4) for _ in Q.generators])


def test_contains_is_closed_under_sums(sqrt2):
    rng = random.Random(17)
    for _ in range(30):
        Q = _random_quasilattice(sqrt2, rng)
        u, w = _random_member(Q, rng), _random_member(Q, rng)
        assert contains(Q, u)
        assert contains(Q, w)
        assert contains(Q, tuple(x + y for x, y in zip(u, w)))
        assert contains(Q, tuple(-x for x in u))


def test_image_preserves_membership(sqrt2):
    rng = random.Random(19)
    for _ in range(30):
        Q = _random_quasilattice(sqrt2, rng)
        row = [_quadratic(sqrt2, rng), _quadratic(sqrt2, rng)]
        if all(x.is_zero() for x in row):
            continue
        L = Mat.from_rows(sqrt2, [row])
        LQ = image(Q, L)
        for _ in range(5):
            assert contains(LQ, L.apply(_random_member(Q, rng)))


def test_intersection_contains_every_small_member(sqrt2):
    rng = random.Random(23)
    box = [(c0, c1, c2) for c0 in range(-3, 4) for c1 in range(-3, 4) for c2 in range(-3, 4)]
    for _ in range(30):
        Q = _random_quasilattice(sqrt2, rng)
        w = _random_member(Q, rng) if rng.random() < 0.7 else (_quadratic(sqrt2, rng), _quadratic(sqrt2, rng))
        if all(x.is_zero() for x in w):
            continue
        basis = subspace_intersection(Q, [w])
        span = Quasilattice(sqrt2, 2, tuple(basis))
        for coeffs in box:
            v = _combine(Q, coeffs)
            if (v[0] * w[1] - v[1] * w[0]).is_zero():
                assert contains(span, v)
