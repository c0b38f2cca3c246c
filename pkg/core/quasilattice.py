"""拟格：Kⁿ 中有限个张成向量的 ℤ-张成。

所有格问题都先展平到 ℚ^{nD}（每个分量取幂基坐标），再统一去分母，
化为整数线性代数（HNF / 整数核）。
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from core.errors import InvalidQuasilattice, RankDeficient
from core.field import FieldElem, FieldSpec, eval_sign
from core.linalg import (
    Mat,
    Vec,
    clear_denominators,
    flatten,
    hnf,
    integer_kernel,
    integer_solve,
    nullspace,
    rank_of_vectors,
    solve,
    unflatten,
)
from core.types import Quasilattice, SubgroupClass, SubgroupReport

logger = logging.getLogger(__name__)


def make_quasilattice(field: FieldSpec, ambient_dim: int, generators: Sequence[Sequence]) -> Quasilattice:
    """构造并校验拟格。

    Raises:
        InvalidQuasilattice: 生成元长度不对或不张成 ℝⁿ
    """
    Q = Quasilattice(field, ambient_dim, tuple(field.vector(g) for g in generators))
    validate(Q)
    return Q


def standard(field: FieldSpec, n: int) -> Quasilattice:
    """ℤⁿ，生成元为标准基。"""
    gens = tuple(tuple(field.one if i == j else field.zero for i in range(n)) for j in range(n))
    return Quasilattice(field, n, gens)


def validate(Q: Quasilattice) -> None:
    for i, g in enumerate(Q.generators):
        if len(g) != Q.ambient_dim:
            raise InvalidQuasilattice(f"generator {i} has length {len(g)}, expected {Q.ambient_dim}")
    if rank_of_vectors(Q.field, Q.generators) != Q.ambient_dim:
        raise InvalidQuasilattice(f"generators do not span R^{Q.ambient_dim}")


def _integer_columns(columns: Sequence[Sequence[FieldElem]]) -> Tuple[List[List[int]], int]:
    return clear_denominators([flatten(c) for c in columns])


def rank_q(Q: Quasilattice) -> int:
    """ℤ-秩，即展平后生成元的 ℚ-秩。"""
    if not Q.generators:
        return 0
    M, _ = _integer_columns(Q.generators)
    _, _, r = hnf(M, len(Q.generators))
    return r


def contains(Q: Quasilattice, v: Sequence[FieldElem]) -> bool:
    """v ∈ Q ⇔ 存在 c ∈ ℤ^s 使 Σ c_i Y_i = v。"""
    v = Q.field.vector(v)
    if all(x.is_zero() for x in v):
        return True
    if not Q.generators:
        return False
    # v 与生成元一起去分母，共用同一个放大倍数
    M, _ = _integer_columns(list(Q.generators) + [v])
    A = [row[:-1] for row in M]
    b = [row[-1] for row in M]
    return integer_solve(A, b, len(Q.generators)) is not None


def equivalent(Q1: Quasilattice, Q2: Quasilattice) -> bool:
    """两组生成元张成同一个 ℤ-模。"""
    if Q1.ambient_dim != Q2.ambient_dim:
        return False
    return all(contains(Q2, g) for g in Q1.generators) and all(contains(Q1, g) for g in Q2.generators)


def image(Q: Quasilattice, L: Mat) -> Quasilattice:
    """L(Q)，生成元逐个映射、不做约化。

    Raises:
        RankDeficient: 像不张成目标空间
    """
    gens = tuple(L.apply(g) for g in Q.generators)
    if rank_of_vectors(Q.field, gens) != L.n_rows:
        raise RankDeficient(f"image of the generators spans less than R^{L.n_rows}")
    return Quasilattice(Q.field, L.n_rows, gens)


def _module_basis(field: FieldSpec, n: int, vectors: Sequence[Vec]) -> List[Vec]:
    """用 HNF 把一组向量约化为其 ℤ-张成的基。"""
    if not vectors:
        return []
    M, scale = _integer_columns(vectors)
    H, _, r = hnf(M, len(vectors))
    basis = []
    for col in range(r):
        flat = [Fraction(row[col], scale) for row in H]
        basis.append(unflatten(field, flat))
    return basis


def _orient(field: FieldSpec, v: Vec, W: Sequence[Vec]) -> Vec:
    """按 v 在 W 的基下第一个非零坐标取正号。"""
    coords = solve(Mat.from_columns(field, W, len(v)), v)
    if coords is None:
        return v
    lead = next((c for c in coords if not c.is_zero()), None)
    if lead is not None and eval_sign(lead) < 0:
        return tuple(-x for x in v)
    return v


def subspace_intersection(Q: Quasilattice, W: Sequence[Sequence]) -> List[Vec]:
    """Q ∩ W 的 ℤ-基，W 由域上的一组基给出。

    [行为]: 取 W 的零化子 Φ（行张成 W⊥），q ∈ W ⇔ Φq = 0。对展平后的
    ΦY_i 求整数核，得到的整数组合 Σ c_i Y_i 再用 HNF 约化为基，
    每个基向量按其在 W 基下的第一个非零坐标取正。
    """
    field = Q.field
    n = Q.ambient_dim
    W = [field.vector(w) for w in W]
    if not Q.generators:
        return []
    annihilator = nullspace(Mat.from_rows(field, W, n)) if W else [
        tuple(field.one if i == j else field.zero for i in range(n)) for j in range(n)
    ]
    s = len(Q.generators)
    if annihilator:
        Phi = Mat(field, tuple(annihilator), n)
        images = [Phi.apply(g) for g in Q.generators]
        M, _ = _integer_columns(images)
        combos = integer_kernel(M, s)
    else:
        combos = [[1 if i == j else 0 for i in range(s)] for j in range(s)]

    members: List[Vec] = []
    for c in combos:
        v = [field.zero] * n
        for ci, g in zip(c, Q.generators):
            if ci:
                v = [a + ci * b for a, b in zip(v, g)]
        if any(not x.is_zero() for x in v):
            members.append(tuple(v))
    basis = _module_basis(field, n, members)
    if W:
        basis = [_orient(field, b, W) for b in basis]
    logger.debug("Q ∩ W: %d integer combinations, basis of size %d", len(combos), len(basis))
    return basis


def is_lattice(Q: Quasilattice) -> bool:
    """离散 ⇔ ℤ-秩等于生成元在域上的秩。"""
    return rank_q(Q) == rank_of_vectors(Q.field, Q.generators)


def classify_subgroup(Q: Quasilattice, k_basis: Sequence[Sequence]) -> SubgroupReport:
    """K = 𝔨/(𝔨∩Q) 是否闭：𝔨∩Q 的域上秩等于 dim 𝔨 时为 Closed。"""
    witness = subspace_intersection(Q, k_basis)
    closed = rank_of_vectors(Q.field, witness) == len(k_basis)
    return SubgroupReport(
        SubgroupClass.CLOSED if closed else SubgroupClass.NOT_CLOSED,
        tuple(witness),
    )


__all__ = [
    "make_quasilattice",
    "standard",
    "validate",
    "rank_q",
    "contains",
    "equivalent",
    "image",
    "subspace_intersection",
    "is_lattice",
    "classify_subgroup",
]
