"""sample：在每张图卡上采样水平集并检查 Φ(z) ∈ Δ。"""

from __future__ import annotations

import argparse
import time

from core.commands.base import Command, CommandOutput
from core.delzant import validate
from core.errors import InvalidTriple
from core.numlab import sample_report
from utils.config import DEFAULT_RADIUS_CAP, DEFAULT_TOL
from utils.document import encode_sample_report


class SampleCommand(Command):
    """有失败样本时退出码为 1。"""

    name = "sample"
    help = "数值采样检查动量映射"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--count", type=int, default=1000, help="每张图卡的样本数")
        parser.add_argument("--seed", type=int, default=None, help="随机种子（TORIQ_SEED 优先）")
        parser.add_argument("--tol", type=float, default=DEFAULT_TOL, help="容差")
        parser.add_argument("--radius-cap", type=float, default=DEFAULT_RADIUS_CAP, help="采样多圆盘半径")

    def run(self, args: argparse.Namespace) -> CommandOutput:
        start = time.time()
        doc = self._load(args)
        name, triple = self._named_triple(doc, args)
        report = validate(triple)
        if not report.valid:
            raise InvalidTriple(report)
        seed = self._seed(args)
        result = sample_report(triple, args.count, seed, args.tol, args.radius_cap, verbose=self.verbose)
        summary = self._render(
            "sample_summary.txt",
            icon="✅" if result.passed else "❌",
            triple=name,
            count=result.count,
            seed=seed,
            tol=args.tol,
            failures=len(result.failures),
            max_psi=result.max_psi,
            max_level_residual=result.max_level_residual,
            max_violation=result.max_violation,
        )
        self._report_time(start)
        return CommandOutput(encode_sample_report(result), summary, 0 if result.passed else 1)


__all__ = ["SampleCommand"]
