"""浮点验证实验室：水平集采样、矩映射、约化的法式与 g 的往返。

所有随机性都来自 numpy 的 PCG64 生成器（np.random.default_rng），
多图卡采样时用 SeedSequence.spawn 为每张图卡派生独立的流。
精确数据只在入口处转成浮点一次。
"""

from __future__ import annotations

import itertools
import logging
import sys
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.delzant import atlas, construction
from core.errors import ChartStarved, ResidualTooLarge, SingularTightSet, ZeroCoordinate
from core.field import to_float
from core.linalg import Mat, inverse
from core.reduction import projection_matrix
from core.types import (
    DelzantTriple,
    LevelSetPoint,
    ReductionResult,
    SampleReport,
    SubspaceData,
    VertexChart,
)
from utils.config import (
    DEFAULT_RADIUS_CAP,
    DEFAULT_SEED,
    DEFAULT_TOL,
    FLOAT_PRECISION,
    MIN_ACCEPTANCE,
    SAMPLE_BATCH,
    WORD_LENGTH_BOUND,
)

logger = logging.getLogger(__name__)


def _floats(values) -> np.ndarray:
    return np.array([to_float(x, FLOAT_PRECISION) for x in values], dtype=float)


@dataclass(frozen=True)
class _ChartArrays:
    tight: Tuple[int, ...]
    others: Tuple[int, ...]
    a: np.ndarray  # (d−n)×n
    constant: np.ndarray  # d−n


@lru_cache(maxsize=64)
def _chart_arrays(chart: VertexChart) -> _ChartArrays:
    n = len(chart.tight)
    others = tuple(ineq.index for ineq in chart.inequalities)
    a = np.array([_floats(ineq.coeffs) for ineq in chart.inequalities], dtype=float).reshape(len(others), n)
    constant = _floats([ineq.constant for ineq in chart.inequalities])
    return _ChartArrays(chart.tight, others, a, constant)


@lru_cache(maxsize=64)
def _triple_arrays(triple: DelzantTriple) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(π 的 n×d 浮点矩阵, λ, ker π 的 d×m 基)。"""
    data = construction(triple)
    pi = np.array([_floats(row) for row in data.pi.rows], dtype=float).reshape(triple.n, triple.d)
    lam = _floats(data.lam)
    ker = np.array([_floats(b) for b in data.ker_basis], dtype=float).reshape(len(data.ker_basis), triple.d).T
    return pi, lam, ker


# ----------------------------------------------------------------------
# 采样
# ----------------------------------------------------------------------
def sample_level_set(
    triple: DelzantTriple,
    chart: VertexChart,
    count: int,
    radius_cap: float = DEFAULT_RADIUS_CAP,
    seed: int = DEFAULT_SEED,
    chart_index: int = 0,
    rng: Optional[np.random.Generator] = None,
) -> List[LevelSetPoint]:
    """在图卡上采样 Ψ⁻¹(0) 的点。

    [行为]: 在半径 radius_cap 的多圆盘中均匀抽取紧坐标 (z_1…z_n)，
    拒绝违反图卡不等式的点，其余坐标取 w_j = sqrt(Σ_h a_jh(|z_h|²+λ_h) − λ_j)。

    Raises:
        ChartStarved: 接受率低于 MIN_ACCEPTANCE
    """
    if count <= 0:
        return []
    rng = rng if rng is not None else np.random.default_rng(seed)
    arrays = _chart_arrays(chart)
    n = len(arrays.tight)
    d = triple.d
    points: List[LevelSetPoint] = []
    attempts = 0
    while len(points) < count:
        radius = radius_cap * np.sqrt(rng.random((SAMPLE_BATCH, n)))
        angle = 2 * np.pi * rng.random((SAMPLE_BATCH, n))
        zt = radius * np.exp(1j * angle)
        values = (radius**2) @ arrays.a.T + arrays.constant if arrays.others else np.zeros((SAMPLE_BATCH, 0))
        accepted = np.all(values > 0, axis=1)
        attempts += SAMPLE_BATCH
        for row in np.nonzero(accepted)[0]:
            if len(points) == count:
                break
            z = np.zeros(d, dtype=complex)
            z[list(arrays.tight)] = zt[row]
            if arrays.others:
                z[list(arrays.others)] = np.sqrt(values[row])
            points.append(LevelSetPoint(z, chart_index, seed))
        if len(points) < count and len(points) / attempts < MIN_ACCEPTANCE:
            raise ChartStarved(
                f"chart {chart_index}: accepted {len(points)} of {attempts} draws with radius_cap={radius_cap}"
            )
    return points


def psi(triple: DelzantTriple, z: np.ndarray) -> np.ndarray:
    """Ψ(z) = i*(J(z))，J_j = |z_j|² + λ_j。"""
    _, lam, ker = _triple_arrays(triple)
    J = np.abs(z) ** 2 + lam
    return J @ ker


def level_identity_residual(chart: VertexChart, z: np.ndarray) -> float:
    """max_j | |z_j|² − (Σ_h a_jh(|z_h|²+λ_h) − λ_j) |，j 取非紧下标。"""
    arrays = _chart_arrays(chart)
    if not arrays.others:
        return 0.0
    s = np.abs(z[list(arrays.tight)]) ** 2
    expected = arrays.a @ s + arrays.constant
    return float(np.max(np.abs(np.abs(z[list(arrays.others)]) ** 2 - expected)))


def moment_map(triple: DelzantTriple, z: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """在最小二乘意义下解 π*(μ) = J(z)。

    Raises:
        ResidualTooLarge: 残差超过 10·tol
    """
    pi, lam, _ = _triple_arrays(triple)
    J = np.abs(z) ** 2 + lam
    mu, *_ = np.linalg.lstsq(pi.T, J, rcond=None)
    residual = float(np.max(np.abs(pi.T @ mu - J))) if J.size else 0.0
    if residual > 10 * tol:
        raise ResidualTooLarge(f"moment map residual {residual:.3e} exceeds {10 * tol:.1e}")
    return mu


def k_moment(triple: DelzantTriple, S: SubspaceData, z: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Φ_𝔨 = j*∘Φ，按 k_basis 配对。"""
    mu = moment_map(triple, z, tol)
    K = np.array([_floats(v) for v in S.k_basis], dtype=float)
    return K @ mu


def check_samples(
    triple: DelzantTriple,
    chart: VertexChart,
    points: Sequence[LevelSetPoint],
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> SampleReport:
    """对一批样本检查 |Ψ|、水平集恒等式与 Φ(z) ∈ Δ。"""
    pi, lam, _ = _triple_arrays(triple)
    report = SampleReport(count=len(points), tol=tol, seed=seed)
    for i, p in enumerate(points):
        psi_norm = float(np.max(np.abs(psi(triple, p.z)))) if triple.d > triple.n else 0.0
        identity = level_identity_residual(chart, p.z)
        try:
            mu = moment_map(triple, p.z, tol)
        except ResidualTooLarge as e:
            report.failures.append(f"chart {p.chart_index} sample {i}: {e}")
            continue
        violation = float(-np.min(mu @ pi - lam))
        report.max_psi = max(report.max_psi, psi_norm)
        report.max_level_residual = max(report.max_level_residual, identity)
        report.max_violation = max(report.max_violation, violation)
        if psi_norm > tol:
            report.failures.append(f"chart {p.chart_index} sample {i}: |Psi| = {psi_norm:.3e}")
        if identity > tol:
            report.failures.append(f"chart {p.chart_index} sample {i}: level identity residual {identity:.3e}")
        if violation > tol:
            report.failures.append(f"chart {p.chart_index} sample {i}: moment image leaves the polyhedron by {violation:.3e}")
    return report


def sample_report(
    triple: DelzantTriple,
    count: int,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
    radius_cap: float = DEFAULT_RADIUS_CAP,
    verbose: bool = False,
) -> SampleReport:
    """每张图卡采样 count 个点并汇总，图卡的随机流由 seed 派生。"""
    start = time.time()
    charts = atlas(triple)
    streams = np.random.SeedSequence(seed).spawn(len(charts))
    total = SampleReport(count=0, tol=tol, seed=seed)
    for index, (chart, stream) in enumerate(zip(charts, streams)):
        points = sample_level_set(
            triple, chart, count, radius_cap, seed, chart_index=index, rng=np.random.default_rng(stream)
        )
        part = check_samples(triple, chart, points, tol, seed)
        total.count += part.count
        total.max_psi = max(total.max_psi, part.max_psi)
        total.max_level_residual = max(total.max_level_residual, part.max_level_residual)
        total.max_violation = max(total.max_violation, part.max_violation)
        total.failures.extend(part.failures)
        logger.info("chart %d: %d samples, %d failures", index, part.count, len(part.failures))
    if verbose:
        print(f"⏱️ sample_report() 耗时: {time.time() - start:.3f} 秒", file=sys.stderr)
    return total


# ----------------------------------------------------------------------
# 约化：法式与 g 的往返
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class _ReducedChart:
    kept: Tuple[int, ...]  # 原始下标
    discarded: Tuple[int, ...]
    tight: Tuple[int, ...]  # 约化图卡的紧下标（原始下标）
    tight_pos: Tuple[int, ...]  # 同上，在 kept 中的位置
    a: np.ndarray  # |discarded|×(n−k)，p(X_j) = Σ_h a_jh p(X_h)
    lam: np.ndarray  # 平移后三元组的 λ（全部 d 个）
    gamma: np.ndarray  # 约化图卡 Γ 的生成元（浮点，模 ℤ）


@lru_cache(maxsize=64)
def _reduced_chart(reduction: ReductionResult, chart_index: int) -> _ReducedChart:
    chart = reduction.reduced_atlas[chart_index]
    S = reduction.subspace
    p = projection_matrix(S)
    P = reduction.translated_triple.polyhedron
    kept = reduction.kept
    tight = tuple(kept[pos] for pos in chart.tight)
    B = Mat.from_columns(S.field, [p.apply(P.halfspaces[h].normal) for h in tight], S.ambient_dim - S.k)
    Binv = inverse(B)
    if Binv is None:
        raise SingularTightSet("reduced chart has dependent tight normals")
    a = np.array(
        [_floats(Binv.apply(p.apply(P.halfspaces[j].normal))) for j in reduction.discarded],
        dtype=float,
    ).reshape(len(reduction.discarded), len(tight))
    gamma = np.array([_floats(g) for g in chart.gamma.generators], dtype=float).reshape(
        len(chart.gamma.generators), len(tight)
    )
    return _ReducedChart(
        kept=kept,
        discarded=reduction.discarded,
        tight=tight,
        tight_pos=tuple(chart.tight),
        a=a,
        lam=_floats(P.offsets),
        gamma=gamma,
    )


def _rotate(z: np.ndarray, rc: _ReducedChart, t: np.ndarray) -> np.ndarray:
    """依次作用 exp(t_j R_j)，R_j = e_j − Σ_h a_jh e_h。"""
    z = z.copy()
    for row, j in enumerate(rc.discarded):
        z[j] *= np.exp(2j * np.pi * t[row])
        for col, h in enumerate(rc.tight):
            z[h] *= np.exp(-2j * np.pi * t[row] * rc.a[row, col])
    return z


def normal_form(
    reduction: ReductionResult,
    z: np.ndarray,
    chart_index: int = 0,
    tol: float = DEFAULT_TOL,
) -> Tuple[np.ndarray, np.ndarray]:
    """用 R_j 的作用把被丢弃坐标转到 [0, ∞)，返回 (z', 保留坐标的截断)。

    [行为]: r_j = −arg(z_j)/2π，z_j ↦ e^{2πi r_j} z_j，
    约化图卡的紧坐标 z_h ↦ e^{−2πi r_j a_jh} z_h，模长全部不变。

    Raises:
        ZeroCoordinate: 某个被丢弃坐标的模长不超过 tol
    """
    rc = _reduced_chart(reduction, chart_index)
    for j in rc.discarded:
        if abs(z[j]) <= tol:
            raise ZeroCoordinate(f"coordinate {j} has modulus {abs(z[j]):.3e}")
    r = np.array([-np.angle(z[j]) / (2 * np.pi) for j in rc.discarded])
    out = _rotate(z, rc, r)
    for j in rc.discarded:
        out[j] = complex(abs(out[j]), 0.0)
    return out, out[list(rc.kept)]


def lift_reduced_point(reduction: ReductionResult, w: np.ndarray, chart_index: int = 0) -> np.ndarray:
    """约化水平集上的点 w（按 kept 顺序）提升到 Φ_𝔨⁻¹(0)。

    被丢弃坐标取 sqrt(Σ_h a_jh(|w_h|² + λ_h) − λ_j)，λ 为平移后的偏移。
    """
    rc = _reduced_chart(reduction, chart_index)
    d = reduction.translated_triple.d
    z = np.zeros(d, dtype=complex)
    z[list(rc.kept)] = w
    if rc.discarded:
        s = np.abs(w[list(rc.tight_pos)]) ** 2 + rc.lam[list(rc.tight)]
        values = rc.a @ s - rc.lam[list(rc.discarded)]
        z[list(rc.discarded)] = np.sqrt(np.maximum(values, 0.0))
    return z


def _gamma_words(gamma: np.ndarray, bound: int) -> np.ndarray:
    """L1 长度不超过 bound 的生成元整数组合（模 ℤ 前）。"""
    m = gamma.shape[0]
    if m == 0:
        return np.zeros((1, gamma.shape[1]))
    words = [
        c for c in itertools.product(range(-bound, bound + 1), repeat=m) if sum(abs(x) for x in c) <= bound
    ]
    return np.array(words, dtype=float) @ gamma


def g_round_trip(
    reduction: ReductionResult,
    w: np.ndarray,
    chart_index: int = 0,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
) -> float:
    """提升 → 随机的 R_j 相位 → 法式 → 截断，与 w 在 Γ 作用对齐后的最大偏差。"""
    rc = _reduced_chart(reduction, chart_index)
    z = lift_reduced_point(reduction, w, chart_index)
    rng = np.random.default_rng(seed)
    scrambled = _rotate(z, rc, rng.random(len(rc.discarded)))
    _, truncated = normal_form(reduction, scrambled, chart_index, tol)

    tight_pos = list(rc.tight_pos)
    rest = [i for i in range(len(rc.kept)) if i not in rc.tight_pos]
    base = float(np.max(np.abs(truncated[rest] - w[rest]))) if rest else 0.0
    best = np.inf
    for x in _gamma_words(rc.gamma, WORD_LENGTH_BOUND):
        aligned = truncated[tight_pos] * np.exp(2j * np.pi * x)
        best = min(best, float(np.max(np.abs(aligned - w[tight_pos]))) if tight_pos else 0.0)
    return max(base, best)


__all__ = [
    "sample_level_set",
    "psi",
    "level_identity_residual",
    "moment_map",
    "k_moment",
    "check_samples",
    "sample_report",
    "normal_form",
    "lift_reduced_point",
    "g_round_trip",
]
