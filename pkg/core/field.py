"""实代数数域 ℚ(α) ⊂ ℝ 上的精确算术。

元素以幂基 1, α, …, α^{D-1} 下的有理坐标表示。符号判定通过
对隔离区间二分细化，直到元素对应的多项式在区间内没有根（Sturm 计数）。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, List, Sequence, Tuple

from sympy import Poly, QQ, Rational, Symbol

from core.errors import FieldMismatch, InvalidFieldSpec

logger = logging.getLogger(__name__)

_X = Symbol("x")


def _sympy_rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def _fraction(value) -> Fraction:
    """sympy 有理数转为 Fraction。"""
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    """按低次到高次的系数在 x 处求值。"""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def _poly_from_coords(coords: Sequence[Fraction]) -> Poly:
    return Poly([_sympy_rational(c) for c in reversed(coords)], _X, domain=QQ)


@dataclass(frozen=True)
class FieldSpec:
    """数域 ℚ(α) 的描述：整系数最小多项式与唯一包含 α 的开区间。

    min_poly 按低次到高次存储，例如 x²−2 为 (-2, 0, 1)。
    """

    min_poly: Tuple[int, ...]
    interval: Tuple[Fraction, Fraction]

    def __post_init__(self) -> None:
        object.__setattr__(self, "min_poly", tuple(int(c) for c in self.min_poly))
        lo, hi = (Fraction(v) for v in self.interval)
        object.__setattr__(self, "interval", (lo, hi))

        while len(self.min_poly) > 1 and self.min_poly[-1] == 0:
            object.__setattr__(self, "min_poly", self.min_poly[:-1])
        if len(self.min_poly) < 2:
            raise InvalidFieldSpec("min_poly must have degree >= 1")
        if not lo < hi:
            raise InvalidFieldSpec(f"empty isolating interval ({lo}, {hi})")

        poly = self._poly
        if not poly.is_irreducible:
            raise InvalidFieldSpec(f"min_poly {poly.as_expr()} is not irreducible over Q")
        coeffs = [Fraction(c) for c in self.min_poly]
        if _horner(coeffs, lo) == 0 or _horner(coeffs, hi) == 0:
            raise InvalidFieldSpec("isolating interval endpoint is a root")
        count = poly.count_roots(_sympy_rational(lo), _sympy_rational(hi))
        if count != 1:
            raise InvalidFieldSpec(
                f"interval ({lo}, {hi}) contains {count} roots of {poly.as_expr()}"
            )

    @classmethod
    def rationals(cls) -> "FieldSpec":
        """ℚ 本身，视为 α = 0 的一次域。"""
        return cls((0, 1), (Fraction(-1), Fraction(1)))

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @cached_property
    def _poly(self) -> Poly:
        return Poly(list(reversed(self.min_poly)), _X, domain=QQ)

    @cached_property
    def _monic(self) -> Tuple[Fraction, ...]:
        lead = Fraction(self.min_poly[-1])
        return tuple(Fraction(c) / lead for c in self.min_poly)

    @cached_property
    def _power_table(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """α^k（k < 2D−1）在幂基下的坐标，乘法按此表约化。"""
        table: List[Tuple[Fraction, ...]] = []
        for k in range(2 * self.degree - 1):
            rem = Poly(_X**k, _X, domain=QQ).rem(self._poly)
            coeffs = [_fraction(c) for c in reversed(rem.all_coeffs())]
            coeffs += [Fraction(0)] * (self.degree - len(coeffs))
            table.append(tuple(coeffs))
        return tuple(table)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, (Fraction(0),) * self.degree)

    @property
    def one(self) -> "FieldElem":
        return self.from_rational(1)

    @property
    def alpha(self) -> "FieldElem":
        """生成元 α；一次域中 α 就是有理根。"""
        if self.degree == 1:
            c0, c1 = self.min_poly
            return self.from_rational(Fraction(-c0, c1))
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return FieldElem(self, coords)

    def from_rational(self, value) -> "FieldElem":
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(value)
        return FieldElem(self, coords)

    def element(self, coords: Sequence) -> "FieldElem":
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            raise InvalidFieldSpec(
                f"element has {len(coords)} coordinates, field degree is {self.degree}"
            )
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElem(self, coords)

    def coerce(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field is not self and value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (int, _RationalABC)):
            return self.from_rational(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def vector(self, values: Iterable) -> Tuple["FieldElem", ...]:
        return tuple(self.coerce(v) for v in values)

    def __str__(self) -> str:
        return f"Q[x]/({self._poly.as_expr()}), root in ({self.interval[0]}, {self.interval[1]})"


class FieldElem:
    """FieldSpec 中的一个元素，不可变值对象。"""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldSpec, coords: Sequence[Fraction]) -> None:
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def _other(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other
        if isinstance(other, (int, _RationalABC)):
            return self.field.from_rational(Fraction(other))
        return NotImplemented

    # ------------------------------------------------------------------
    # 算术
    # ------------------------------------------------------------------
    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            c = other.coords[0]
            return FieldElem(self.field, tuple(a * c for a in self.coords))
        if self.is_rational():
            c = self.coords[0]
            return FieldElem(self.field, tuple(b * c for b in other.coords))
        degree = self.field.degree
        table = self.field._power_table
        out = [Fraction(0)] * degree
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                ab = a * b
                for k, t in enumerate(table[i + j]):
                    if t:
                        out[k] += ab * t
        return FieldElem(self.field, out)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return self.field.from_rational(1 / self.coords[0])
        inv = _poly_from_coords(self.coords).invert(self.field._poly)
        return self.field.element([_fraction(c) for c in reversed(inv.all_coeffs())])

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # 比较
    # ------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        try:
            other = self._other(other)
        except FieldMismatch:
            return False
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def _compare(self, other) -> int:
        other = self._other(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare FieldElem with {type(other).__name__}")
        return eval_sign(self - other)

    def __lt__(self, other) -> bool:
        return self._compare(other) < 0

    def __le__(self, other) -> bool:
        return self._compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self._compare(other) > 0

    def __ge__(self, other) -> bool:
        return self._compare(other) >= 0

    # ------------------------------------------------------------------
    # 查询
    # ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coords[0]

    def sign(self) -> int:
        return eval_sign(self)

    def floor(self) -> int:
        if self.is_rational():
            return math.floor(self.coords[0])
        k = math.floor(to_float(self))
        while eval_sign(self - k) < 0:
            k -= 1
        while eval_sign(self - (k + 1)) >= 0:
            k += 1
        return k

    def frac(self) -> "FieldElem":
        """模 ℤ 约化到 [0, 1)。"""
        return self - self.floor()

    def __float__(self) -> float:
        return to_float(self)

    def __repr__(self) -> str:
        return f"FieldElem({self})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coords[0])
        terms = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            power = "" if k == 0 else ("α" if k == 1 else f"α^{k}")
            terms.append(f"({c}){power}" if power else str(c))
        return " + ".join(terms)


@lru_cache(maxsize=None)
def _refined_interval(spec: FieldSpec, steps: int) -> Tuple[Fraction, Fraction]:
    """对隔离区间二分 steps 次。

    α 是单根且构造时已用 Sturm 计数确认区间内恰有一根，
    因此按端点变号选半区间即可。
    """
    coeffs = [Fraction(c) for c in spec.min_poly]
    lo, hi = spec.interval
    sign_lo = _sign(_horner(coeffs, lo))
    for _ in range(steps):
        mid = (lo + hi) / 2
        sign_mid = _sign(_horner(coeffs, mid))
        if sign_mid == 0:
            return mid, mid
        if sign_mid == sign_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


@lru_cache(maxsize=4096)
def _irrational_sign(spec: FieldSpec, coords: Tuple[Fraction, ...]) -> int:
    poly = _poly_from_coords(coords)
    steps = 0
    while True:
        lo, hi = _refined_interval(spec, steps)
        if poly.count_roots(_sympy_rational(lo), _sympy_rational(hi)) == 0:
            value = _horner(coords, (lo + hi) / 2)
            logger.debug("sign settled after %d bisections", steps)
            return _sign(value)
        steps += 4


def eval_sign(e: FieldElem) -> int:
    """返回实数 e(α) 的符号 (-1, 0, +1)。

    只有坐标全为零时才返回 0：非零元素对应的多项式次数小于 D，
    在不可约最小多项式的根处不为零。
    """
    if e.is_zero():
        return 0
    if e.is_rational():
        return _sign(e.coords[0])
    return _irrational_sign(e.field, e.coords)


@lru_cache(maxsize=8192)
def _irrational_float(spec: FieldSpec, coords: Tuple[Fraction, ...], precision: int) -> float:
    lo, hi = spec.interval
    radius = max(abs(lo), abs(hi))
    # 导数界：|E'(x)| ≤ Σ k|c_k| R^{k-1}
    lipschitz = sum(k * abs(c) * radius ** (k - 1) for k, c in enumerate(coords) if k)
    target = Fraction(1, 2 ** (precision + 1))
    steps = 0
    while True:
        lo, hi = _refined_interval(spec, steps)
        mid = (lo + hi) / 2
        value = _horner(coords, mid)
        if lipschitz * (hi - lo) / 2 <= target * max(1, abs(value)):
            return float(value)
        steps += 8


def to_float(e: FieldElem, precision: int = 53) -> float:
    """e(α) 的浮点近似，相对误差不超过 2^(1−precision)。"""
    if e.is_rational():
        return float(e.coords[0])
    return _irrational_float(e.field, e.coords, precision)


def compare(a: FieldElem, b: FieldElem) -> int:
    """精确比较，供 functools.cmp_to_key 使用。"""
    return eval_sign(a - b)


def lex_compare(u: Sequence[FieldElem], v: Sequence[FieldElem]) -> int:
    for a, b in zip(u, v):
        c = compare(a, b)
        if c:
            return c
    return (len(u) > len(v)) - (len(u) < len(v))


__all__ = [
    "FieldSpec",
    "FieldElem",
    "eval_sign",
    "to_float",
    "compare",
    "lex_compare",
]
