"""全局可调参数。"""

from __future__ import annotations

import os


DEFAULT_TOL = 1e-9  # 浮点实验室的默认容差
DEFAULT_RADIUS_CAP = 4.0  # 图卡采样的多圆盘半径
DEFAULT_SEED = 0
MIN_ACCEPTANCE = 1e-3  # 采样接受率下限
SAMPLE_BATCH = 4096  # 每批抽取的候选点数
WORD_LENGTH_BOUND = 8  # Γ 生成元字的 L1 长度上限
FLOAT_PRECISION = 53  # 精确值转浮点的位数

SVG_WIDTH = 480
SVG_HEIGHT = 480
SVG_MARGIN = 40


def resolve_seed(cli_seed: int | None) -> int:
    """TORIQ_SEED 环境变量优先于命令行的 --seed。

    Environment Variables:
        TORIQ_SEED: 覆盖随机种子（可选）
    """
    env_seed = os.environ.get("TORIQ_SEED")
    if env_seed:
        return int(env_seed)
    return DEFAULT_SEED if cli_seed is None else cli_seed


__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_RADIUS_CAP",
    "DEFAULT_SEED",
    "MIN_ACCEPTANCE",
    "SAMPLE_BATCH",
    "WORD_LENGTH_BOUND",
    "FLOAT_PRECISION",
    "SVG_WIDTH",
    "SVG_HEIGHT",
    "SVG_MARGIN",
    "resolve_seed",
]
