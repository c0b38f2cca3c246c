"""H-表示多面体的精确计算。

[行为]: 顶点 = 所有 n 元半空间子集中法向量矩阵可逆、解可行的基本解；
极射线 = 回收锥 {u : ⟨u, X_j⟩ ≥ 0} 上同样的方法降一维。
不含直线的判断、线性最小化、冗余半空间分类都从同一份缓存的
FaceReport 推出。

含直线的输入先与线性空间 L 的正交补相交（加入 ⟨μ, l⟩ = 0 两个半空间），
在 P ∩ L⊥ 上枚举，再把 L 记在 FaceReport.lineality 中。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Tuple

from core.errors import EmptyPolyhedron, SmoothCheckUnavailable
from core.field import FieldElem, eval_sign, lex_compare
from core.linalg import Mat, Vec, determinant, dot, nullspace, rank_of_vectors, solve_unique
from core.quasilattice import equivalent, standard
from core.types import (
    FaceReport,
    HalfSpace,
    Irredundancy,
    LinearMinimum,
    Polyhedron,
    Quasilattice,
)

logger = logging.getLogger(__name__)


def make_polyhedron(field, dim: int, halfspaces: Sequence[Tuple[Sequence, object]]) -> Polyhedron:
    """由 (normal, offset) 对构造多面体，数值自动转换到域中。"""
    hs = []
    for normal, offset in halfspaces:
        normal = field.vector(normal)
        if len(normal) != dim:
            raise ValueError(f"normal of length {len(normal)} in dimension {dim}")
        hs.append(HalfSpace(normal, field.coerce(offset)))
    return Polyhedron(field, dim, tuple(hs))


def slack(h: HalfSpace, point: Sequence[FieldElem]) -> FieldElem:
    """⟨point, X⟩ − λ，非负即满足。"""
    return dot(h.normal, point) - h.offset


def contains(P: Polyhedron, point: Sequence[FieldElem]) -> bool:
    return all(eval_sign(slack(h, point)) >= 0 for h in P.halfspaces)


def _tight_set(P: Polyhedron, point: Sequence[FieldElem]) -> Tuple[int, ...]:
    return tuple(j for j, h in enumerate(P.halfspaces) if slack(h, point).is_zero())


def _normalize_ray(r: Vec) -> Vec:
    """按第一个非零分量的绝对值缩放。"""
    lead = next(x for x in r if not x.is_zero())
    scale = lead if eval_sign(lead) > 0 else -lead
    inv = scale.inverse()
    return tuple(x * inv for x in r)


def _lex_sorted(points: Sequence[Vec]) -> List[Vec]:
    return sorted(points, key=cmp_to_key(lex_compare))


# ----------------------------------------------------------------------
# 枚举
# ----------------------------------------------------------------------
@lru_cache(maxsize=256)
def _lineality(P: Polyhedron) -> Tuple[Vec, ...]:
    normals = Mat.from_rows(P.field, P.normals, P.dim_ambient) if P.halfspaces else Mat(P.field, (), P.dim_ambient)
    return tuple(nullspace(normals))


def _pointed_part(P: Polyhedron) -> Polyhedron:
    """P ∩ L⊥；原有半空间下标保持不变，附加的等式约束排在末尾。"""
    lineality = _lineality(P)
    if not lineality:
        return P
    extra: List[HalfSpace] = []
    for l in lineality:
        extra.append(HalfSpace(l, P.field.zero))
        extra.append(HalfSpace(tuple(-x for x in l), P.field.zero))
    return Polyhedron(P.field, P.dim_ambient, P.halfspaces + tuple(extra))


def _affine_dim(field, vertices: Sequence[Vec], directions: Sequence[Vec]) -> int:
    if not vertices:
        return -1
    v0 = vertices[0]
    spanning = [tuple(a - b for a, b in zip(v, v0)) for v in vertices[1:]]
    spanning.extend(directions)
    return rank_of_vectors(field, spanning) if spanning else 0


@lru_cache(maxsize=256)
def enumerate_faces(P: Polyhedron) -> FaceReport:
    """顶点、极射线、关联集与维数。

    Raises:
        EmptyPolyhedron: 没有可行点
    """
    n = P.dim_ambient
    d = len(P.halfspaces)
    field = P.field
    lineality = _lineality(P)
    Q = _pointed_part(P)
    normals = Q.normals
    offsets = Q.offsets

    vertices: List[Vec] = []
    seen = set()
    for subset in combinations(range(len(Q.halfspaces)), n):
        A = Mat(field, tuple(normals[j] for j in subset), n)
        v = solve_unique(A, [offsets[j] for j in subset])
        if v is None or v in seen:
            continue
        if contains(Q, v):
            seen.add(v)
            vertices.append(v)
    if not vertices:
        raise EmptyPolyhedron(f"no feasible point among {len(Q.halfspaces)} halfspaces in dimension {n}")

    rays: List[Vec] = []
    seen_rays = set()
    candidates: List[Vec] = []
    for subset in combinations(range(len(Q.halfspaces)), n - 1):
        kernel = nullspace(Mat(field, tuple(normals[j] for j in subset), n))
        if len(kernel) == 1:
            r = kernel[0]
            candidates.extend([r, tuple(-x for x in r)])
    for r in candidates:
        r = _normalize_ray(r)
        if r in seen_rays:
            continue
        if all(eval_sign(dot(X, r)) >= 0 for X in normals):
            seen_rays.add(r)
            rays.append(r)

    vertices = _lex_sorted(vertices)
    rays = _lex_sorted(rays)
    incidence = tuple(tuple(j for j in _tight_set(Q, v) if j < d) for v in vertices)
    dim = _affine_dim(field, vertices, list(rays) + list(lineality))
    logger.debug("enumerated %d vertices, %d rays, dim %d (d=%d, n=%d)", len(vertices), len(rays), dim, d, n)
    return FaceReport(
        vertices=tuple(vertices),
        rays=tuple(rays),
        facet_incidence=incidence,
        dim=dim,
        lineality=lineality,
    )


@dataclass(frozen=True)
class _HalfspaceFace:
    vertices: FrozenSet[int]  # 紧顶点在 FaceReport.vertices 中的下标
    rays: FrozenSet[int]  # 与 X_j 配对为 0 的射线下标
    dim: int  # 面为空时为 -1


@lru_cache(maxsize=256)
def _halfspace_faces(P: Polyhedron) -> Tuple[_HalfspaceFace, ...]:
    report = enumerate_faces(P)
    faces = []
    for j, h in enumerate(P.halfspaces):
        vs = frozenset(i for i, tight in enumerate(report.facet_incidence) if j in tight)
        rs = frozenset(i for i, r in enumerate(report.rays) if dot(h.normal, r).is_zero())
        dim = _affine_dim(
            P.field,
            [report.vertices[i] for i in sorted(vs)],
            [report.rays[i] for i in sorted(rs)] + list(report.lineality),
        )
        faces.append(_HalfspaceFace(vs, rs, dim))
    return tuple(faces)


def face_dim(P: Polyhedron, j: int) -> int:
    """P ∩ {⟨·, X_j⟩ = λ_j} 的维数，空面返回 -1。"""
    return _halfspace_faces(P)[j].dim


def dimension(P: Polyhedron) -> int:
    return enumerate_faces(P).dim


def is_pointed(P: Polyhedron) -> bool:
    return not enumerate_faces(P).lineality


def is_simple(P: Polyhedron) -> bool:
    """每个顶点恰好在 n 个半空间上取等号；含直线的多面体没有顶点，返回 False。"""
    report = enumerate_faces(P)
    if report.lineality:
        return False
    return all(len(tight) == P.dim_ambient for tight in report.facet_incidence)


def is_smooth(P: Polyhedron, lattice: Quasilattice) -> bool:
    """每个顶点处 n 个紧法向量构成 ℤⁿ 的基。

    Raises:
        SmoothCheckUnavailable: 域不是 ℚ 或格不是 ℤⁿ
    """
    n = P.dim_ambient
    if P.field.degree > 1:
        raise SmoothCheckUnavailable(f"smoothness needs the rationals, got {P.field}")
    if lattice.ambient_dim != n or not equivalent(lattice, standard(P.field, n)):
        raise SmoothCheckUnavailable("smoothness is only defined for the standard lattice Z^n")
    if not is_simple(P):
        return False
    for tight in enumerate_faces(P).facet_incidence:
        rows = [P.halfspaces[j].normal for j in tight]
        if any(x.rational_value().denominator != 1 for row in rows for x in row):
            return False
        det = determinant(Mat(P.field, tuple(rows), n))
        if abs(det.rational_value()) != 1:
            return False
    return True


def minimize(P: Polyhedron, c: Sequence[FieldElem]) -> LinearMinimum:
    """min_{μ∈P} ⟨μ, c⟩；某条射线或线性方向使其下降时为无下界。

    Raises:
        EmptyPolyhedron: 多面体为空
    """
    c = P.field.vector(c)
    report = enumerate_faces(P)
    if any(not dot(l, c).is_zero() for l in report.lineality):
        return LinearMinimum(None)
    if any(eval_sign(dot(r, c)) < 0 for r in report.rays):
        return LinearMinimum(None)
    best: Optional[FieldElem] = None
    argmin: Optional[Vec] = None
    for v in report.vertices:
        value = dot(v, c)
        if best is None or eval_sign(value - best) < 0:
            best, argmin = value, v
    return LinearMinimum(best, argmin)


def irredundant(P: Polyhedron) -> Irredundancy:
    """把半空间分为 kept / discarded / touching。

    [行为]:
        - discarded：⟨·, X_j⟩ 在 P 上的最小值严格大于 λ_j（紧顶点集为空）
        - kept：面的维数为 dim P − 1，且与之前保留的半空间不是同一个面
          （同一个面 ⇔ 紧顶点集与紧射线集都相同），下标小者优先
        - touching：其余在 P 上取到等号的半空间
    """
    report = enumerate_faces(P)
    faces = _halfspace_faces(P)
    kept: List[int] = []
    discarded: List[int] = []
    touching: List[int] = []
    seen_facets = set()
    for j, face in enumerate(faces):
        if face.dim < 0:
            discarded.append(j)
        elif face.dim == report.dim - 1:
            key = (face.vertices, face.rays)
            if key in seen_facets:
                touching.append(j)
            else:
                seen_facets.add(key)
                kept.append(j)
        else:
            touching.append(j)
    return Irredundancy(tuple(kept), tuple(discarded), tuple(touching))


def interior_point(P: Polyhedron) -> Vec:
    """相对内点：顶点重心加上所有射线之和。"""
    report = enumerate_faces(P)
    field = P.field
    count = len(report.vertices)
    point = [field.zero] * P.dim_ambient
    for v in report.vertices:
        point = [a + b for a, b in zip(point, v)]
    point = [x / count for x in point]
    for r in report.rays:
        point = [a + b for a, b in zip(point, r)]
    return tuple(point)


__all__ = [
    "make_polyhedron",
    "slack",
    "contains",
    "enumerate_faces",
    "face_dim",
    "dimension",
    "is_pointed",
    "is_simple",
    "is_smooth",
    "minimize",
    "irredundant",
    "interior_point",
]
