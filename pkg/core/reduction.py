"""组合层面的辛约化：子空间数据、水平平移、Δ_𝔨、迷向判据与约化三元组。

坐标约定：C = [k_basis | quotient_basis]（列），
    p(X)   = C⁻¹X 的后 n−k 个分量
    p*(ν)  = μ，满足 Cᵀμ = (0, ν)
    水平提升 μ₀ 满足 Cᵀμ₀ = (ξ, 0)，即 j*(μ₀) = ξ
于是 ⟨p*(ν), X⟩ = ⟨ν, p(X)⟩，且 p*(ν) ∈ ker j*。
"""

from __future__ import annotations

import logging
import sys
import time
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

from core.delzant import atlas, validate
from core.errors import (
    EmptyPolyhedron,
    EmptyReduction,
    InvalidSubspace,
    InvalidTriple,
    IsotropyViolation,
    NotSmooth,
)
from core.field import FieldElem, FieldSpec
from core.linalg import Mat, Vec, dot, inverse, rank_of_vectors
from core.polyhedron import enumerate_faces, irredundant
from core.quasilattice import classify_subgroup, image, is_lattice
from core.types import (
    Classification,
    DelzantTriple,
    HalfSpace,
    IsotropyReport,
    IsotropyWitness,
    Polyhedron,
    ReductionResult,
    SubgroupClass,
    SubspaceData,
)

logger = logging.getLogger(__name__)


def _axis(field: FieldSpec, n: int, i: int) -> Vec:
    return tuple(field.one if j == i else field.zero for j in range(n))


def _fmt(v: Sequence[FieldElem]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def make_subspace(
    field: FieldSpec,
    n: int,
    k_basis: Sequence[Sequence],
    quotient_basis: Optional[Sequence[Sequence]] = None,
) -> SubspaceData:
    """构造 𝔨 及商空间坐标；未给出 quotient_basis 时依次贪心选取坐标轴补全。

    Raises:
        InvalidSubspace: k 不在 [1, n) 内、基不独立或商空间基不补全 𝔨
    """
    k_basis = tuple(field.vector(v) for v in k_basis)
    k = len(k_basis)
    if not 1 <= k < n:
        raise InvalidSubspace(f"subspace dimension {k} must satisfy 1 <= k < {n}")
    if any(len(v) != n for v in k_basis):
        raise InvalidSubspace(f"k_basis vectors must have length {n}")
    if rank_of_vectors(field, k_basis) != k:
        raise InvalidSubspace("k_basis is not linearly independent")

    if quotient_basis is None:
        chosen: List[Vec] = []
        for i in range(n):
            candidate = _axis(field, n, i)
            if rank_of_vectors(field, list(k_basis) + chosen + [candidate]) == k + len(chosen) + 1:
                chosen.append(candidate)
            if len(chosen) == n - k:
                break
        quotient = tuple(chosen)
    else:
        quotient = tuple(field.vector(v) for v in quotient_basis)
        if len(quotient) != n - k or any(len(v) != n for v in quotient):
            raise InvalidSubspace(f"quotient_basis must hold {n - k} vectors of length {n}")

    C = Mat.from_columns(field, list(k_basis) + list(quotient), n)
    Cinv = inverse(C)
    if Cinv is None:
        raise InvalidSubspace("quotient_basis classes are dependent modulo k")
    return SubspaceData(field, n, k_basis, quotient, Cinv)


def projection_matrix(S: SubspaceData) -> Mat:
    """p : ℝⁿ → ℝⁿ⁻ᵏ 的矩阵，即 C⁻¹ 的后 n−k 行。"""
    return Mat(S.field, S.basis_inverse.rows[S.k:], S.ambient_dim)


def project(S: SubspaceData, X: Sequence[FieldElem]) -> Vec:
    return projection_matrix(S).apply(S.field.vector(X))


def pullback(S: SubspaceData, nu: Sequence[FieldElem]) -> Vec:
    """p*(ν) ∈ ker j*。"""
    nu = S.field.vector(nu)
    return S.basis_inverse.transpose().apply((S.field.zero,) * S.k + nu)


def restrict(S: SubspaceData, mu: Sequence[FieldElem]) -> Vec:
    """j*(μ) = (⟨μ, k_i⟩)_i。"""
    return tuple(dot(mu, kv) for kv in S.k_basis)


def level_lift(S: SubspaceData, xi: Sequence[FieldElem]) -> Vec:
    """满足 j*(μ₀) = ξ 且在 quotient_basis 上配对为 0 的提升。"""
    xi = S.field.vector(xi)
    if len(xi) != S.k:
        raise InvalidSubspace(f"level has {len(xi)} coordinates, subspace dimension is {S.k}")
    return S.basis_inverse.transpose().apply(xi + (S.field.zero,) * (S.ambient_dim - S.k))


def translate_to_level(
    triple: DelzantTriple,
    S: SubspaceData,
    xi: Sequence[FieldElem],
    lift: Optional[Sequence[FieldElem]] = None,
) -> Tuple[DelzantTriple, Vec]:
    """Δ' = Δ − μ₀，即 λ_j' = λ_j − ⟨μ₀, X_j⟩；返回 (平移后的三元组, μ₀)。

    Raises:
        InvalidSubspace: 给出的 lift 不满足 j*(lift) = ξ
    """
    field = S.field
    xi = field.vector(xi)
    if lift is None:
        mu0 = level_lift(S, xi)
    else:
        mu0 = field.vector(lift)
        if restrict(S, mu0) != xi:
            raise InvalidSubspace(f"lift {_fmt(mu0)} does not restrict to level {_fmt(xi)}")
    P = triple.polyhedron
    shifted = tuple(HalfSpace(h.normal, h.offset - dot(mu0, h.normal)) for h in P.halfspaces)
    translated = DelzantTriple(Polyhedron(field, P.dim_ambient, shifted), triple.quasilattice)
    return translated, mu0


def reduced_polyhedron(triple: DelzantTriple, S: SubspaceData) -> Polyhedron:
    """商坐标下的 Δ_𝔨：全部 d 个半空间 ⟨ν, p(X_j)⟩ ≥ λ_j，允许零法向量。

    Raises:
        EmptyReduction: Δ ∩ ker j* 为空
    """
    p = projection_matrix(S)
    halfspaces = tuple(HalfSpace(p.apply(h.normal), h.offset) for h in triple.polyhedron.halfspaces)
    raw = Polyhedron(S.field, S.ambient_dim - S.k, halfspaces)
    try:
        enumerate_faces(raw)
    except EmptyPolyhedron as e:
        raise EmptyReduction(f"the level set misses the polyhedron: {e}") from e
    return raw


def isotropy_check(raw: Polyhedron, n: int, k: int) -> IsotropyReport:
    """K 在 Φ_𝔨⁻¹(0) 上迷向群为 0 维的组合判据。

    [行为]: 三项同时成立才通过
        - dim Δ_𝔨 = n − k
        - 每个顶点恰好在 n − k 个保留的半空间上取等号
        - 没有 touching 半空间（每个面只有一个定义者，其余严格不接触）
    """
    expected = n - k
    report = enumerate_faces(raw)
    red = irredundant(raw)
    kept = set(red.kept)
    witnesses: List[IsotropyWitness] = []

    dim_ok = report.dim == expected
    if not dim_ok:
        witnesses.append(IsotropyWitness("dim", f"reduced polyhedron has dimension {report.dim}, expected {expected}"))

    simple_ok = not report.lineality
    if report.lineality:
        witnesses.append(IsotropyWitness("simple", "reduced polyhedron contains a line"))
    for vertex, tight in zip(report.vertices, report.facet_incidence):
        count = sum(1 for j in tight if j in kept)
        if count != expected:
            simple_ok = False
            witnesses.append(
                IsotropyWitness(
                    "simple",
                    f"vertex {_fmt(vertex)} lies on {count} facets, expected {expected}",
                    vertex=vertex,
                )
            )

    for j in red.touching:
        h = raw.halfspaces[j]
        vertex = next((v for v, tight in zip(report.vertices, report.facet_incidence) if j in tight), None)
        if h.is_degenerate():
            message = f"halfspace {j} projects to a zero normal with offset {h.offset}"
        elif vertex is not None:
            message = f"halfspace {j} touches the reduced polyhedron at {_fmt(vertex)}"
        else:
            message = f"halfspace {j} touches the reduced polyhedron"
        witnesses.append(IsotropyWitness("uniqueness", message, vertex=vertex, index=j))
    unique_ok = not red.touching

    passed = dim_ok and simple_ok and unique_ok
    return IsotropyReport(
        passed=passed,
        dim=report.dim,
        expected_dim=expected,
        dim_check=dim_ok,
        simple_check=simple_ok,
        uniqueness_check=unique_ok,
        witnesses=tuple(witnesses),
    )


def classify(triple: DelzantTriple, S: SubspaceData) -> Classification:
    """K = 𝔨/(𝔨∩Q) 是否闭，以及 p(Q) 是否为格。"""
    Q = triple.quasilattice
    subgroup = classify_subgroup(Q, S.k_basis)
    pQ = image(Q, projection_matrix(S))
    return Classification(subgroup, pQ, is_lattice(pQ))


def reduce(
    triple: DelzantTriple,
    S: SubspaceData,
    xi: Optional[Sequence[FieldElem]] = None,
    lift: Optional[Sequence[FieldElem]] = None,
    verbose: bool = False,
) -> ReductionResult:
    """validate → translate → Δ_𝔨 → isotropy_check，通过后组装约化三元组与图卡。

    Args:
        triple: 待约化的三元组
        S: 子空间数据
        xi: 水平 ξ（𝔨* 中按 k_basis 的坐标），缺省为 0
        lift: 可选的水平提升 μ₀
        verbose: 是否打印耗时

    Raises:
        InvalidTriple: 输入三元组未通过校验
        EmptyReduction: 水平集与 Δ 不相交
        IsotropyViolation: 迷向判据失败
    """
    start = time.time()
    report = validate(triple)
    if not report.valid:
        raise InvalidTriple(report)
    return _reduce_valid(triple, S, xi, lift, verbose, start)


def _reduce_valid(
    triple: DelzantTriple,
    S: SubspaceData,
    xi: Optional[Sequence[FieldElem]],
    lift: Optional[Sequence[FieldElem]],
    verbose: bool,
    start: float,
) -> ReductionResult:
    """reduce 的主体，三元组已经通过校验。"""
    field = S.field
    if xi is None:
        xi = (field.zero,) * S.k
    xi = field.vector(xi)

    translated, mu0 = translate_to_level(triple, S, xi, lift)
    raw = reduced_polyhedron(translated, S)
    isotropy = isotropy_check(raw, S.ambient_dim, S.k)
    if not isotropy.passed:
        raise IsotropyViolation(isotropy)

    red = irredundant(raw)
    reduced_P = Polyhedron(field, raw.dim_ambient, tuple(raw.halfspaces[j] for j in red.kept))
    pQ = image(triple.quasilattice, projection_matrix(S))
    reduced_triple = DelzantTriple(reduced_P, pQ)
    subgroup = classify_subgroup(triple.quasilattice, S.k_basis)
    charts = atlas(reduced_triple)
    embedded = tuple(
        tuple(a + b for a, b in zip(pullback(S, v), mu0)) for v in enumerate_faces(reduced_P).vertices
    )
    logger.info(
        "reduction: kept %s, discarded %s, subgroup %s",
        red.kept,
        red.discarded,
        subgroup.subgroup_class.value,
    )
    if verbose:
        print(f"⏱️ reduce() 耗时: {time.time() - start:.3f} 秒", file=sys.stderr)
    return ReductionResult(
        reduced_triple=reduced_triple,
        kept=red.kept,
        discarded=red.discarded,
        subgroup=subgroup,
        isotropy=isotropy,
        reduced_atlas=charts,
        translation_lift=mu0,
        subspace=S,
        translated_triple=translated,
        level=xi,
        embedded_vertices=embedded,
        reduced_is_lattice=is_lattice(pQ),
    )


def annotate(result: ReductionResult) -> str:
    """光滑输入下约化空间的类型：manifold / orbifold / quasifold。"""
    if result.subgroup.subgroup_class is SubgroupClass.NOT_CLOSED:
        return "quasifold"
    if all(chart.gamma.is_trivial for chart in result.reduced_atlas):
        return "manifold"
    return "orbifold"


def reduce_smooth(
    triple: DelzantTriple,
    S: SubspaceData,
    xi: Optional[Sequence[FieldElem]] = None,
    lift: Optional[Sequence[FieldElem]] = None,
    verbose: bool = False,
) -> ReductionResult:
    """reduce，并附上光滑情形下的分类标注。

    Raises:
        NotSmooth: 三元组不是 ℤⁿ 上的光滑三元组
    """
    start = time.time()
    report = validate(triple)
    if not report.valid:
        raise InvalidTriple(report)
    if report.smooth is not True:
        raise NotSmooth("reduce_smooth needs a smooth triple over the standard lattice")
    result = _reduce_valid(triple, S, xi, lift, verbose, start)
    return replace(result, annotation=annotate(result))


__all__ = [
    "make_subspace",
    "projection_matrix",
    "project",
    "pullback",
    "restrict",
    "level_lift",
    "translate_to_level",
    "reduced_polyhedron",
    "isotropy_check",
    "classify",
    "reduce",
    "annotate",
    "reduce_smooth",
]
