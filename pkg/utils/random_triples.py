"""随机有理实例：属性测试与 exps 中的扫描共用。

所有函数只接受外部传入的 random.Random，同一种子生成同一批实例。
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from core.delzant import validate
from core.errors import EmptyPolyhedron, InvalidSubspace
from core.field import FieldSpec
from core.linalg import Vec
from core.polyhedron import enumerate_faces, interior_point, irredundant, make_polyhedron
from core.quasilattice import make_quasilattice
from core.reduction import make_subspace, restrict
from core.types import DelzantTriple, Polyhedron, SubspaceData

QQ = FieldSpec.rationals()

MAX_ENTRY = 2  # 法向量分量的范围 [-MAX_ENTRY, MAX_ENTRY]
MAX_ATTEMPTS = 200


def _random_normal(rng: random.Random, n: int) -> Tuple[int, ...]:
    while True:
        v = tuple(rng.randint(-MAX_ENTRY, MAX_ENTRY) for _ in range(n))
        if any(v):
            return v


def _random_offset(rng: random.Random) -> Fraction:
    # 非正的 λ 保证原点可行
    return Fraction(-rng.randint(0, 12), rng.randint(1, 4))


def random_polyhedron(rng: random.Random, n: int, d: int) -> Polyhedron:
    """d 个随机半空间的交，可能含多余半空间或直线，但一定非空。"""
    halfspaces = [(_random_normal(rng, n), _random_offset(rng)) for _ in range(d)]
    return make_polyhedron(QQ, n, halfspaces)


def _prune(P: Polyhedron) -> Polyhedron:
    kept = irredundant(P).kept
    return Polyhedron(P.field, P.dim_ambient, tuple(P.halfspaces[j] for j in kept))


def random_triple(
    rng: random.Random,
    n: Optional[int] = None,
    max_d: int = 7,
    bounded: bool = False,
) -> DelzantTriple:
    """随机的合法有理三元组，Q 取 ℤⁿ 或 ℤⁿ 加一个分母为 2 的额外生成元。

    先生成随机多面体再去掉多余半空间，校验失败就重抽。

    Raises:
        RuntimeError: MAX_ATTEMPTS 次内没有抽到合法三元组
    """
    for _ in range(MAX_ATTEMPTS):
        dim = n if n is not None else rng.randint(1, 3)
        d = rng.randint(dim, max(dim, max_d))
        P = random_polyhedron(rng, dim, d)
        try:
            P = _prune(P)
            if bounded and enumerate_faces(P).rays:
                continue
        except EmptyPolyhedron:
            continue
        gens: List[Tuple] = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
        if rng.random() < 0.3:
            gens.append(tuple(Fraction(rng.randint(0, 1), 2) for _ in range(dim)))
        triple = DelzantTriple(P, make_quasilattice(QQ, dim, gens))
        if validate(triple).valid:
            return triple
    raise RuntimeError(f"no valid triple after {MAX_ATTEMPTS} attempts")


def random_subspace(rng: random.Random, n: int, k: Optional[int] = None) -> SubspaceData:
    """随机的有理 𝔨，维数缺省为 1（n = 3 时有三分之一概率取 2）。"""
    if k is None:
        k = 2 if n == 3 and rng.random() < 1 / 3 else 1
    for _ in range(MAX_ATTEMPTS):
        basis = [_random_normal(rng, n) for _ in range(k)]
        try:
            return make_subspace(QQ, n, basis)
        except InvalidSubspace:
            continue
    raise RuntimeError(f"no independent k_basis after {MAX_ATTEMPTS} attempts")


def interior_level(triple: DelzantTriple, S: SubspaceData) -> Vec:
    """取 Δ 的一个内点在 𝔨* 中的像作为水平，保证水平集与 Δ 相交。"""
    return restrict(S, interior_point(triple.polyhedron))


def random_cases(
    seed: int,
    count: int,
    max_n: int = 3,
    max_d: int = 7,
) -> Iterator[Tuple[DelzantTriple, SubspaceData, Vec]]:
    """依次产生 (三元组, 𝔨, 水平)；n = 1 时没有真子空间，故 n ≥ 2。"""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, max_n)
        triple = random_triple(rng, n, max_d)
        S = random_subspace(rng, n)
        yield triple, S, interior_level(triple, S)


__all__ = [
    "QQ",
    "random_polyhedron",
    "random_triple",
    "random_subspace",
    "interior_level",
    "random_cases",
]
