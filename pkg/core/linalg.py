"""数域上的线性代数与整数格算法。

域上：Gauss-Jordan 消元（solve / nullspace / rank / inverse），行列式用
Bareiss 无分数消元。整数上：列 Hermite 标准形（H = M·U）、整数线性方程组、
整数核、Smith 不变因子。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from core.field import FieldElem, FieldSpec

logger = logging.getLogger(__name__)

Vec = Tuple[FieldElem, ...]
IntMat = List[List[int]]


@dataclass(frozen=True)
class Mat:
    """域上的矩阵，按行存储；n_cols 单独记录以支持零行矩阵。"""

    field: FieldSpec
    rows: Tuple[Vec, ...]
    n_cols: int

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], n_cols: Optional[int] = None) -> "Mat":
        rows = tuple(field.vector(r) for r in rows)
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(field, rows, n_cols)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], n_rows: int) -> "Mat":
        columns = [field.vector(c) for c in columns]
        rows = tuple(tuple(col[i] for col in columns) for i in range(n_rows))
        return cls(field, rows, len(columns))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        return cls.from_rows(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    def col(self, j: int) -> Vec:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Vec]:
        return [self.col(j) for j in range(self.n_cols)]

    def transpose(self) -> "Mat":
        return Mat(self.field, tuple(self.col(j) for j in range(self.n_cols)), self.n_rows)

    def apply(self, v: Sequence[FieldElem]) -> Vec:
        if len(v) != self.n_cols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(row, v) if row else self.field.zero for row in self.rows)


def dot(u: Sequence[FieldElem], v: Sequence[FieldElem]) -> FieldElem:
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        if not (a.is_zero() or b.is_zero()):
            total = total + a * b
    return total


def _rref(field: FieldSpec, rows: List[List[FieldElem]], n_cols: int) -> Tuple[List[List[FieldElem]], List[int]]:
    """原地化为约化行阶梯形，返回 (矩阵, 主元列)。"""
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(A: Mat) -> int:
    if not A.rows:
        return 0
    _, pivots = _rref(A.field, [list(r) for r in A.rows], A.n_cols)
    return len(pivots)


def rank_of_vectors(field: FieldSpec, vectors: Sequence[Sequence[FieldElem]]) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    _, pivots = _rref(field, vectors, len(vectors[0]))
    return len(pivots)


def solve(A: Mat, b: Sequence[FieldElem]) -> Optional[Vec]:
    """求 Ax = b 的一个精确解；方程组不相容时返回 None。"""
    field = A.field
    rows = [list(row) + [field.coerce(bi)] for row, bi in zip(A.rows, b)]
    rows, pivots = _rref(field, rows, A.n_cols + 1)
    if A.n_cols in pivots:
        return None
    x = [field.zero] * A.n_cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][A.n_cols]
    return tuple(x)


def solve_unique(A: Mat, b: Sequence[FieldElem]) -> Optional[Vec]:
    """方阵 A 可逆时返回 Ax = b 的唯一解，否则返回 None。"""
    n = A.n_cols
    if A.n_rows != n:
        raise ValueError("solve_unique needs a square matrix")
    field = A.field
    rows = [list(row) + [field.coerce(bi)] for row, bi in zip(A.rows, b)]
    rows, pivots = _rref(field, rows, n + 1)
    if pivots != list(range(n)):
        return None
    return tuple(rows[i][n] for i in range(n))


def nullspace(A: Mat) -> List[Vec]:
    """ker A 的精确基，维数为 cols − rank(A)。"""
    field = A.field
    if not A.rows:
        return [tuple(field.one if i == j else field.zero for i in range(A.n_cols)) for j in range(A.n_cols)]
    rows, pivots = _rref(field, [list(r) for r in A.rows], A.n_cols)
    free = [c for c in range(A.n_cols) if c not in pivots]
    basis: List[Vec] = []
    for f in free:
        v = [field.zero] * A.n_cols
        v[f] = field.one
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def inverse(A: Mat) -> Optional[Mat]:
    """方阵的逆；奇异时返回 None。"""
    n = A.n_rows
    if n != A.n_cols:
        raise ValueError("inverse of non-square matrix")
    field = A.field
    rows = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(A.rows)]
    rows, pivots = _rref(field, rows, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return Mat(field, tuple(tuple(row[n:]) for row in rows), n)


def determinant(A: Mat) -> FieldElem:
    """Bareiss 无分数消元求行列式。"""
    n = A.n_rows
    if n != A.n_cols:
        raise ValueError("determinant of non-square matrix")
    field = A.field
    if n == 0:
        return field.one
    m = [list(row) for row in A.rows]
    sign = 1
    prev = field.one
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return field.zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


# ----------------------------------------------------------------------
# ℚ-展平与去分母
# ----------------------------------------------------------------------
def flatten(v: Sequence[FieldElem]) -> List[Fraction]:
    """Kⁿ → ℚ^{nD}：依次拼接各分量的幂基坐标。"""
    out: List[Fraction] = []
    for e in v:
        out.extend(e.coords)
    return out


def unflatten(field: FieldSpec, flat: Sequence[Fraction]) -> Vec:
    D = field.degree
    return tuple(field.element(flat[i:i + D]) for i in range(0, len(flat), D))


def clear_denominators(columns: Sequence[Sequence[Fraction]]) -> Tuple[IntMat, int]:
    """以全部分母的最小公倍数放大，返回 (整数矩阵, 放大倍数)。

    输入按列给出，输出为按行存储的整数矩阵。
    """
    scale = 1
    for col in columns:
        for q in col:
            scale = scale * q.denominator // math.gcd(scale, q.denominator)
    n_rows = len(columns[0]) if columns else 0
    rows = [[int(col[i] * scale) for col in columns] for i in range(n_rows)]
    return rows, scale


# ----------------------------------------------------------------------
# 整数格
# ----------------------------------------------------------------------
def _extgcd(a: int, b: int) -> Tuple[int, int, int]:
    """返回 (g, x, y)，ax + by = g ≥ 0。"""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _column_op(M: IntMat, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # M[:, i], M[:, j] ← a·M[:, i] + b·M[:, j], c·M[:, i] + d·M[:, j]
    for row in M:
        x, y = row[i], row[j]
        row[i] = a * x + b * y
        row[j] = c * x + d * y


def hnf(M: IntMat, n_cols: Optional[int] = None) -> Tuple[IntMat, IntMat, int]:
    """列 Hermite 标准形 H = M·U。

    [行为]: 逐行以扩展欧几里得把主元右侧清零，主元取正，主元左侧的
    元素约化到 [0, 主元)。主元列在前，零列在后。

    Args:
        M: 按行存储的整数矩阵
        n_cols: 零行矩阵时的列数

    Returns:
        (H, U, rank)，U 幺模，U 的后 cols − rank 列是整数核的 ℤ-基
    """
    m = len(M)
    s = n_cols if n_cols is not None else (len(M[0]) if M else 0)
    H = [list(row) for row in M]
    U = [[1 if i == j else 0 for j in range(s)] for i in range(s)]
    k = 0
    for i in range(m):
        if k == s:
            break
        for j in range(k + 1, s):
            if H[i][j] == 0:
                continue
            g, x, y = _extgcd(H[i][k], H[i][j])
            a, b = H[i][k] // g, H[i][j] // g
            _column_op(H, k, j, x, y, -b, a)
            _column_op(U, k, j, x, y, -b, a)
        if H[i][k] == 0:
            continue
        if H[i][k] < 0:
            for R in (H, U):
                for row in R:
                    row[k] = -row[k]
        pivot = H[i][k]
        for j in range(k):
            q = H[i][j] // pivot
            if q:
                for R in (H, U):
                    for row in R:
                        row[j] -= q * row[k]
        k += 1
    return H, U, k


def integer_solve(A: IntMat, b: Sequence[int], n_cols: Optional[int] = None) -> Optional[List[int]]:
    """求 c ∈ ℤ^s 使 Ac = b；无整数解时返回 None。"""
    s = n_cols if n_cols is not None else (len(A[0]) if A else 0)
    H, U, r = hnf(A, s)
    y = [0] * s
    col = 0
    for i, row in enumerate(H):
        if col < r and row[col] != 0:
            residual = b[i] - sum(row[l] * y[l] for l in range(col))
            if residual % row[col]:
                return None
            y[col] = residual // row[col]
            col += 1
    for i, row in enumerate(H):
        if sum(row[l] * y[l] for l in range(r)) != b[i]:
            return None
    return [sum(U[i][l] * y[l] for l in range(r)) for i in range(s)]


def integer_kernel(A: IntMat, n_cols: Optional[int] = None) -> List[List[int]]:
    """{c ∈ ℤ^s : Ac = 0} 的 ℤ-基（饱和）。"""
    s = n_cols if n_cols is not None else (len(A[0]) if A else 0)
    _, U, r = hnf(A, s)
    return [[U[i][l] for i in range(s)] for l in range(r, s)]


def smith_invariants(M: IntMat) -> List[int]:
    """Smith 标准形的对角元（不变因子），依次整除。"""
    if not M or not M[0]:
        return []
    factors = invariant_factors(Matrix(M), domain=ZZ)
    return [abs(int(f)) for f in factors]


__all__ = [
    "Mat",
    "Vec",
    "IntMat",
    "dot",
    "rank",
    "rank_of_vectors",
    "solve",
    "solve_unique",
    "nullspace",
    "inverse",
    "determinant",
    "flatten",
    "unflatten",
    "clear_denominators",
    "hnf",
    "integer_solve",
    "integer_kernel",
    "smith_invariants",
]
