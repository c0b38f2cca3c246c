import random
from fractions import Fraction

import pytest

from core.errors import FieldMismatch, InvalidFieldSpec
from core.field import FieldSpec, compare, eval_sign, lex_compare, to_float


def test_rationals_is_degree_one(qq):
    assert qq.degree == 1
    assert qq.alpha == 0
    assert qq.from_rational(Fraction(3, 4)).rational_value() == Fraction(3, 4)


def test_field_spec_rejections():
    with pytest.raises(InvalidFieldSpec):
        FieldSpec((-1, 0, 1), (0, 2))  # x²−1 可约
    with pytest.raises(InvalidFieldSpec):
        FieldSpec((-2, 0, 1), (-2, 2))  # 两个根
    with pytest.raises(InvalidFieldSpec):
        FieldSpec((-2, 0, 1), (2, 1))
    with pytest.raises(InvalidFieldSpec):
        FieldSpec((5,), (0, 1))


def test_sqrt2_arithmetic(sqrt2):
    a = sqrt2.alpha
    assert a * a == 2
    assert (a + 1) * (a - 1) == 1
    assert (1 / a) == a / 2
    assert (a + 1).inverse() == a - 1
    assert a**-2 == Fraction(1, 2)
    assert (a - 1) ** 0 == 1


def test_signs_and_ordering(sqrt2):
    a = sqrt2.alpha
    assert eval_sign(a - Fraction(141, 100)) == 1
    assert eval_sign(a - Fraction(142, 100)) == -1
    assert eval_sign(a * a - 2) == 0
    assert a > 1 and a < 2
    assert -a < -1
    assert compare(a, sqrt2.from_rational(Fraction(3, 2))) == -1
    assert lex_compare((a, sqrt2.zero), (a, sqrt2.one)) == -1
    assert lex_compare((a,), (a,)) == 0


def test_sign_of_tiny_difference(sqrt2):
    a = sqrt2.alpha
    close = sqrt2.from_rational(Fraction(665857, 470832))  # 连分数逼近，差约 1.6e-12
    assert eval_sign(close - a) == 1
    assert eval_sign(a - close) == -1


def test_floor_and_frac(sqrt2):
    a = sqrt2.alpha
    assert a.floor() == 1
    assert (-a).floor() == -2
    assert a.frac() == a - 1
    assert (-a).frac() == 2 - a
    assert sqrt2.from_rational(Fraction(-1, 2)).frac() == Fraction(1, 2)
    assert sqrt2.from_rational(3).frac().is_zero()


def test_to_float(sqrt2):
    assert to_float(sqrt2.alpha) == pytest.approx(2**0.5, rel=1e-15)
    assert float(3 * sqrt2.alpha - 4) == pytest.approx(3 * 2**0.5 - 4, rel=1e-14)
    assert to_float(sqrt2.from_rational(Fraction(1, 3))) == 1 / 3


def test_golden_ratio_field():
    phi_field = FieldSpec((-1, -1, 1), (1, 2))
    phi = phi_field.alpha
    assert phi * phi == phi + 1
    assert phi.inverse() == phi - 1
    assert to_float(phi) == pytest.approx((1 + 5**0.5) / 2)


def test_cubic_field():
    K = FieldSpec((-2, 0, 0, 1), (1, 2))
    c = K.alpha
    assert c**3 == 2
    assert c.inverse() * c == 1
    assert to_float(c) == pytest.approx(2 ** (1 / 3))
    assert eval_sign(c * c - Fraction(159, 100)) == -1


def test_mixing_fields_raises(qq, sqrt2):
    with pytest.raises(FieldMismatch):
        sqrt2.alpha + qq.one
    assert (sqrt2.one == qq.one) is False


def test_zero_has_no_inverse(sqrt2):
    with pytest.raises(ZeroDivisionError):
        sqrt2.zero.inverse()


def _random_elements(field: FieldSpec, rng: random.Random, count: int):
    return [
        field.element([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(field.degree)])
        for _ in range(count)
    ]


def test_field_axioms_on_random_elements():
    K = FieldSpec((-2, 0, 0, 1), (1, 2))
    rng = random.Random(3)
    xs = _random_elements(K, rng, 100)
    for x, y, z in zip(xs, xs[1:], xs[2:]):
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + K.zero == x
        assert x * K.one == x
        assert x - x == K.zero
        if not x.is_zero():
            assert x * x.inverse() == K.one


def test_sign_is_multiplicative():
    K = FieldSpec((-2, 0, 0, 1), (1, 2))
    rng = random.Random(5)
    xs = _random_elements(K, rng, 100)
    for x, y in zip(xs, xs[1:]):
        assert eval_sign(x * y) == eval_sign(x) * eval_sign(y)
        assert eval_sign(-x) == -eval_sign(x)


def test_to_float_respects_order(sqrt2):
    K = FieldSpec((-2, 0, 0, 1), (1, 2))
    for field, seed in ((sqrt2, 7), (K, 8)):
        xs = _random_elements(field, random.Random(seed), 100)
        for x, y in zip(xs, xs[1:]):
            if compare(x, y) < 0:
                assert to_float(x) <= to_float(y)
            elif compare(x, y) > 0:
                assert to_float(x) >= to_float(y)
            else:
                assert to_float(x) == to_float(y)
