"""广义 Delzant 三元组：校验、构造数据与顶点图卡。

Γ_ν 的有限表示：N ∩ [(S¹)ⁿ×(1)^{d−n}] 中的元素是 exp(X)，其中
X_{n+1..d} ∈ ℤ 且 π(X) ∈ Q。由于每个 X_j ∈ Q，条件化为
Σ_{h≤n} x_h X_h ∈ Q，即 x ∈ B⁻¹Q，再模去 ℤⁿ。
"""

from __future__ import annotations

import logging
import math
from functools import cmp_to_key
from typing import List, Sequence, Tuple

from sympy import Matrix

from core.errors import EmptyPolyhedron, InvalidQuasilattice, SingularTightSet, SmoothCheckUnavailable
from core.field import FieldElem, eval_sign, lex_compare
from core.linalg import Mat, Vec, clear_denominators, dot, hnf, inverse, nullspace, smith_invariants
from core.polyhedron import (
    dimension,
    enumerate_faces,
    irredundant,
    is_pointed,
    is_simple,
    is_smooth,
)
from core.quasilattice import contains as q_contains
from core.quasilattice import validate as q_validate
from core.types import (
    ChartInequality,
    ConstructionData,
    DelzantTriple,
    DiscreteGroupPresentation,
    Quasilattice,
    ValidationIssue,
    ValidationReport,
    VertexChart,
)

logger = logging.getLogger(__name__)


def validate(triple: DelzantTriple) -> ValidationReport:
    """逐项检查 Theorem 的前提，失败项记入报告而不抛异常。

    检查项：维数一致、拟格张成、法向量非零、非空、n 维、不含直线、
    单纯、每个半空间定义各自的面、X_j ∈ Q；适用时附带光滑性。
    """
    P = triple.polyhedron
    Q = triple.quasilattice
    n = P.dim_ambient
    issues: List[ValidationIssue] = []

    if n < 1:
        issues.append(ValidationIssue("dimension", f"ambient dimension {n} < 1"))
        return ValidationReport(False, tuple(issues))
    if Q.field != P.field:
        issues.append(ValidationIssue("field", "polyhedron and quasilattice use different fields"))
        return ValidationReport(False, tuple(issues))
    if Q.ambient_dim != n:
        issues.append(ValidationIssue("dimension", f"quasilattice lives in R^{Q.ambient_dim}, polyhedron in R^{n}"))
        return ValidationReport(False, tuple(issues))
    try:
        q_validate(Q)
    except InvalidQuasilattice as e:
        issues.append(ValidationIssue("quasilattice", str(e)))

    for j, h in enumerate(P.halfspaces):
        if h.is_degenerate():
            issues.append(ValidationIssue("zero_normal", f"halfspace {j} has a zero normal", j))
    if not P.halfspaces:
        issues.append(ValidationIssue("pointed", "no halfspaces: the polyhedron is the whole space"))
        return ValidationReport(False, tuple(issues))

    try:
        enumerate_faces(P)
    except EmptyPolyhedron as e:
        issues.append(ValidationIssue("empty", str(e)))
        return ValidationReport(False, tuple(issues))

    dim = dimension(P)
    if dim != n:
        issues.append(ValidationIssue("dimension", f"polyhedron has dimension {dim}, expected {n}"))
    pointed = is_pointed(P)
    if not pointed:
        issues.append(ValidationIssue("pointed", "polyhedron contains a line"))
    elif not is_simple(P):
        report = enumerate_faces(P)
        for vertex, tight in zip(report.vertices, report.facet_incidence):
            if len(tight) != n:
                issues.append(
                    ValidationIssue(
                        "simple",
                        f"vertex ({', '.join(map(str, vertex))}) lies on {len(tight)} halfspaces, expected {n}",
                    )
                )
    if pointed and dim == n:
        red = irredundant(P)
        for j in red.discarded:
            issues.append(ValidationIssue("facet", f"halfspace {j} is redundant (does not touch the polyhedron)", j))
        for j in red.touching:
            issues.append(ValidationIssue("facet", f"halfspace {j} does not define its own facet", j))

    for j, h in enumerate(P.halfspaces):
        if not h.is_degenerate() and not q_contains(Q, h.normal):
            issues.append(ValidationIssue("quasirational", f"normal X_{j} is not in Q", j))

    smooth = None
    if not issues:
        try:
            smooth = is_smooth(P, Q)
        except SmoothCheckUnavailable:
            smooth = None
    return ValidationReport(not issues, tuple(issues), smooth)


def construction(triple: DelzantTriple) -> ConstructionData:
    """π（列为 X_j）、Lie(N) = ker π 与 λ = Σ λ_j e_j*。"""
    P = triple.polyhedron
    pi = Mat.from_columns(P.field, P.normals, P.dim_ambient)
    return ConstructionData(pi=pi, ker_basis=tuple(nullspace(pi)), lam=tuple(P.offsets))


def gamma_group(B: Mat, Q: Quasilattice) -> DiscreteGroupPresentation:
    """Γ ≅ (B⁻¹Q)/ℤⁿ，B 的列为顶点处的紧法向量。

    Raises:
        SingularTightSet: B 不可逆
    """
    n = B.n_rows
    Binv = inverse(B)
    if Binv is None:
        raise SingularTightSet("tight normals do not form a basis")

    gens: List[Vec] = []
    for Y in Q.generators:
        g = tuple(x.frac() for x in Binv.apply(Y))
        if any(not x.is_zero() for x in g) and g not in gens:
            gens.append(g)
    gens.sort(key=cmp_to_key(lex_compare))

    if not gens:
        return DiscreteGroupPresentation(n, (), is_trivial=True, is_finite=True, order=1)
    if not all(x.is_rational() for g in gens for x in g):
        return DiscreteGroupPresentation(n, tuple(gens), is_trivial=False, is_finite=False)

    # Λ = ℤ-span(L·g, L·e_h) ⊇ Lℤⁿ，Γ ≅ Λ / Lℤⁿ
    columns = [[x.rational_value() for x in g] for g in gens]
    columns += [[1 if i == h else 0 for i in range(n)] for h in range(n)]
    M, L = clear_denominators(columns)
    H, _, r = hnf(M, len(columns))
    basis = [[H[i][c] for c in range(r)] for i in range(n)]
    index = math.prod(basis[i][i] for i in range(n))
    order = L**n // index
    relations = (Matrix(basis).inv() * L).tolist()
    factors = tuple(m for m in smith_invariants([[int(x) for x in row] for row in relations]) if m != 1)
    logger.debug("finite chart group of order %d, invariant factors %s", order, factors)
    return DiscreteGroupPresentation(
        n,
        tuple(gens),
        is_trivial=False,
        is_finite=True,
        order=order,
        invariant_factors=factors,
    )


def atlas(triple: DelzantTriple) -> Tuple[VertexChart, ...]:
    """每个顶点一张图卡，按顶点字典序排列。

    [行为]: 紧的半空间排在前面，其余 X_j 用紧法向量唯一表示为
    Σ_h a_jh X_h，图卡不等式为 Σ_h a_jh(|z_h|² + λ_h) − λ_j > 0。
    """
    P = triple.polyhedron
    n = P.dim_ambient
    field = P.field
    report = enumerate_faces(P)
    charts: List[VertexChart] = []
    for vertex, tight in zip(report.vertices, report.facet_incidence):
        if len(tight) != n:
            raise SingularTightSet(f"vertex ({', '.join(map(str, vertex))}) is not simple")
        B = Mat.from_columns(field, [P.halfspaces[h].normal for h in tight], n)
        Binv = inverse(B)
        if Binv is None:
            raise SingularTightSet(f"tight normals at ({', '.join(map(str, vertex))}) are dependent")
        others = tuple(j for j in range(len(P.halfspaces)) if j not in tight)
        a_coeffs = []
        inequalities = []
        for j in others:
            a = Binv.apply(P.halfspaces[j].normal)
            constant = dot(a, [P.halfspaces[h].offset for h in tight]) - P.halfspaces[j].offset
            a_coeffs.append((j, a))
            inequalities.append(ChartInequality(j, a, constant))
        charts.append(
            VertexChart(
                vertex=vertex,
                tight=tuple(tight),
                order=tuple(tight) + others,
                a_coeffs=tuple(a_coeffs),
                inequalities=tuple(inequalities),
                gamma=gamma_group(B, triple.quasilattice),
            )
        )
    logger.info("atlas: %d charts", len(charts))
    return tuple(charts)


def moduli_at(triple: DelzantTriple, mu: Sequence[FieldElem]) -> Vec:
    """μ ∈ Δ 处的平方模长 |z_j|² = ⟨μ, X_j⟩ − λ_j，满足 Ψ = 0。"""
    return tuple(dot(h.normal, mu) - h.offset for h in triple.polyhedron.halfspaces)


def level_residual(data: ConstructionData, moduli_sq: Sequence[FieldElem]) -> Vec:
    """Ψ = i*∘J 在给定平方模长处的精确值，J_j = |z_j|² + λ_j。"""
    J = [s + lam for s, lam in zip(moduli_sq, data.lam)]
    return tuple(dot(b, J) for b in data.ker_basis)


def evaluate_chart(chart: VertexChart, tight_moduli_sq: Sequence[FieldElem]) -> Vec:
    """图卡不等式左端在紧坐标平方模长处的值。"""
    return tuple(dot(ineq.coeffs, tight_moduli_sq) + ineq.constant for ineq in chart.inequalities)


def chart_contains(chart: VertexChart, tight_moduli_sq: Sequence[FieldElem]) -> bool:
    return all(eval_sign(v) > 0 for v in evaluate_chart(chart, tight_moduli_sq))


__all__ = [
    "validate",
    "construction",
    "gamma_group",
    "atlas",
    "moduli_at",
    "level_residual",
    "evaluate_chart",
    "chart_contains",
]
