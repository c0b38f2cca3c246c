"""核心数据类型定义。"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, List, Optional, Tuple

from core.field import FieldElem, FieldSpec
from core.linalg import Mat, Vec

if TYPE_CHECKING:
    import numpy as np


@dataclass(frozen=True)
class HalfSpace:
    """半空间 ⟨μ, X⟩ ≥ λ。"""

    normal: Vec  # X_j
    offset: FieldElem  # λ_j

    def is_degenerate(self) -> bool:
        return all(x.is_zero() for x in self.normal)


@dataclass(frozen=True)
class Polyhedron:
    """H-表示的多面体，半空间按输入顺序保存。"""

    field: FieldSpec
    dim_ambient: int
    halfspaces: Tuple[HalfSpace, ...]

    @property
    def normals(self) -> List[Vec]:
        return [h.normal for h in self.halfspaces]

    @property
    def offsets(self) -> List[FieldElem]:
        return [h.offset for h in self.halfspaces]


@dataclass(frozen=True)
class FaceReport:
    """顶点、极射线与关联信息。"""

    vertices: Tuple[Vec, ...]
    rays: Tuple[Vec, ...]
    facet_incidence: Tuple[Tuple[int, ...], ...]  # 每个顶点处紧的半空间下标
    dim: int
    lineality: Tuple[Vec, ...] = ()


@dataclass(frozen=True)
class LinearMinimum:
    """线性函数在多面体上的最小值；value 为 None 表示无下界。"""

    value: Optional[FieldElem]
    argmin: Optional[Vec] = None

    @property
    def unbounded(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class Irredundancy:
    kept: Tuple[int, ...]
    discarded: Tuple[int, ...]  # 严格多余
    touching: Tuple[int, ...]  # 在 P 上紧但不定义（新的）面


@dataclass(frozen=True)
class Quasilattice:
    """Kⁿ 中有限个向量的 ℤ-张成；生成元按原样保存，不做约化。"""

    field: FieldSpec
    ambient_dim: int
    generators: Tuple[Vec, ...]


@dataclass(frozen=True)
class DelzantTriple:
    """(Δ, {X_1…X_d}, Q)：法向量即多面体的半空间法向量。"""

    polyhedron: Polyhedron
    quasilattice: Quasilattice

    @property
    def field(self) -> FieldSpec:
        return self.polyhedron.field

    @property
    def n(self) -> int:
        return self.polyhedron.dim_ambient

    @property
    def d(self) -> int:
        return len(self.polyhedron.halfspaces)


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str
    index: Optional[int] = None


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    issues: Tuple[ValidationIssue, ...]
    smooth: Optional[bool] = None  # None：不适用（非 ℚ 或 Q ≠ ℤⁿ）


@dataclass(frozen=True)
class ConstructionData:
    pi: Mat  # n×d，第 j 列为 X_j
    ker_basis: Tuple[Vec, ...]  # Lie(N) = ker π
    lam: Vec  # λ = Σ λ_j e_j*


@dataclass(frozen=True)
class ChartInequality:
    """Σ_h coeffs[h]·|z_h|² + constant > 0，其中 constant = Σ_h a_jh λ_h − λ_j。"""

    index: int
    coeffs: Vec
    constant: FieldElem


@dataclass(frozen=True)
class DiscreteGroupPresentation:
    """Γ_ν ≅ (B⁻¹Q)/ℤⁿ 的有限表示。"""

    rank_n: int
    generators: Tuple[Vec, ...]  # 模 ℤⁿ 约化到 [0,1)ⁿ，去掉平凡元
    is_trivial: bool
    is_finite: bool
    order: Optional[int] = None
    invariant_factors: Tuple[int, ...] = ()


@dataclass(frozen=True)
class VertexChart:
    vertex: Vec
    tight: Tuple[int, ...]  # 顶点处的 n 个紧半空间（原始下标）
    order: Tuple[int, ...]  # 紧的在前，其余在后
    a_coeffs: Tuple[Tuple[int, Vec], ...]  # 非紧 j ↦ (a_jh)_h
    inequalities: Tuple[ChartInequality, ...]
    gamma: DiscreteGroupPresentation


@dataclass(frozen=True)
class SubspaceData:
    """𝔨 ⊂ ℝⁿ 及商空间 ℝⁿ/𝔨 的坐标化。

    basis_inverse 是以 k_basis、quotient_basis 为列的矩阵 C 的逆；
    p(X) 取 C⁻¹X 的后 n−k 个分量。
    """

    field: FieldSpec
    ambient_dim: int
    k_basis: Tuple[Vec, ...]
    quotient_basis: Tuple[Vec, ...]
    basis_inverse: Mat

    @property
    def k(self) -> int:
        return len(self.k_basis)


class SubgroupClass(str, Enum):
    CLOSED = "Closed"
    NOT_CLOSED = "NotClosed"


@dataclass(frozen=True)
class SubgroupReport:
    subgroup_class: SubgroupClass
    witness: Tuple[Vec, ...]  # 𝔨 ∩ Q 的生成元


@dataclass(frozen=True)
class Classification:
    """K = 𝔨/(𝔨∩Q) 与剩余拟环面 ℝⁿ⁻ᵏ/p(Q) 的分类。"""

    subgroup: SubgroupReport
    quotient_lattice: Quasilattice  # p(Q)
    quotient_is_lattice: bool

    @property
    def subgroup_class(self) -> SubgroupClass:
        return self.subgroup.subgroup_class


@dataclass(frozen=True)
class IsotropyWitness:
    check: str  # "dim" | "simple" | "uniqueness"
    message: str
    vertex: Optional[Vec] = None
    index: Optional[int] = None


@dataclass(frozen=True)
class IsotropyReport:
    passed: bool
    dim: int
    expected_dim: int
    dim_check: bool
    simple_check: bool
    uniqueness_check: bool
    witnesses: Tuple[IsotropyWitness, ...] = ()

    def describe(self) -> str:
        if self.passed:
            return "passed"
        return "; ".join(f"{w.check}: {w.message}" for w in self.witnesses)


@dataclass(frozen=True)
class ReductionResult:
    reduced_triple: DelzantTriple
    kept: Tuple[int, ...]
    discarded: Tuple[int, ...]
    subgroup: SubgroupReport
    isotropy: IsotropyReport
    reduced_atlas: Tuple[VertexChart, ...]
    translation_lift: Vec  # μ₀
    subspace: SubspaceData
    translated_triple: DelzantTriple  # 平移到水平 0 后的三元组
    level: Vec  # ξ
    embedded_vertices: Tuple[Vec, ...]  # p*(ν) + μ₀
    reduced_is_lattice: bool
    annotation: Optional[str] = None  # manifold | orbifold | quasifold


@dataclass
class LevelSetPoint:
    z: "np.ndarray"  # 复 d-元组
    chart_index: int
    seed: int


@dataclass
class SampleReport:
    count: int
    tol: float
    seed: int
    max_psi: float = 0.0
    max_level_residual: float = 0.0
    max_violation: float = 0.0  # 最小的 ⟨Φ(z), X_j⟩ − λ_j 取负
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


__all__ = [
    "HalfSpace",
    "Polyhedron",
    "FaceReport",
    "LinearMinimum",
    "Irredundancy",
    "Quasilattice",
    "DelzantTriple",
    "ValidationIssue",
    "ValidationReport",
    "ConstructionData",
    "ChartInequality",
    "DiscreteGroupPresentation",
    "VertexChart",
    "SubspaceData",
    "SubgroupClass",
    "SubgroupReport",
    "Classification",
    "IsotropyWitness",
    "IsotropyReport",
    "ReductionResult",
    "LevelSetPoint",
    "SampleReport",
]
