"""toriq 的异常层级。"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from core.types import IsotropyReport, ValidationReport


class ToriqError(Exception):
    """所有 toriq 异常的基类。"""


class FieldMismatch(ToriqError):
    """两个域元素不属于同一个 FieldSpec。"""


class InvalidFieldSpec(ToriqError):
    """最小多项式或隔离区间不合法。"""


class EmptyPolyhedron(ToriqError):
    """多面体没有可行点。"""


class SmoothCheckUnavailable(ToriqError):
    """光滑性只对 ℚ 上、格为 ℤⁿ 的情形有定义。"""


class RankDeficient(ToriqError):
    """生成元的像不能 ℝ-张成目标空间。"""


class InvalidQuasilattice(ToriqError):
    """拟格生成元不张成 ℝⁿ 或维数不一致。"""


class SingularTightSet(ToriqError):
    """顶点处紧约束的法向量矩阵不可逆。"""


class InvalidTriple(ToriqError):
    """Delzant 三元组未通过校验，携带完整报告。"""

    def __init__(self, report: "ValidationReport") -> None:
        self.report = report
        codes = ", ".join(issue.code for issue in report.issues)
        super().__init__(f"invalid triple: {codes}")


class InvalidSubspace(ToriqError):
    """子空间 𝔨 的基或商空间基不合法。"""


class EmptyReduction(ToriqError):
    """Δ ∩ ker j* 为空：0 不是矩映射的取值。"""


class IsotropyViolation(ToriqError):
    """K 在水平集上的迷向群不是 0 维的，携带判据报告。"""

    def __init__(self, report: "IsotropyReport") -> None:
        self.report = report
        super().__init__(f"isotropy violation: {report.describe()}")


class NotSmooth(ToriqError):
    """reduce_smooth 要求三元组在 ℤⁿ 上光滑。"""


class ChartStarved(ToriqError):
    """图卡采样的接受率过低，radius_cap 与图卡不匹配。"""


class ResidualTooLarge(ToriqError):
    """最小二乘求解矩映射时残差超限。"""


class ZeroCoordinate(ToriqError):
    """被丢弃坐标的模长过小，相位无定义。"""


class DocumentError(ToriqError):
    """JSON 文档解析失败，location 为点分路径。"""

    def __init__(self, location: str, message: str) -> None:
        self.location = location
        super().__init__(f"{location}: {message}")


class DimensionUnsupported(ToriqError):
    """渲染只支持维数不超过 2 的情形。"""


__all__ = [
    "ToriqError",
    "FieldMismatch",
    "InvalidFieldSpec",
    "EmptyPolyhedron",
    "SmoothCheckUnavailable",
    "RankDeficient",
    "InvalidQuasilattice",
    "SingularTightSet",
    "InvalidTriple",
    "InvalidSubspace",
    "EmptyReduction",
    "IsotropyViolation",
    "NotSmooth",
    "ChartStarved",
    "ResidualTooLarge",
    "ZeroCoordinate",
    "DocumentError",
    "DimensionUnsupported",
]
