"""atlas：每个顶点一张图卡。"""

from __future__ import annotations

import argparse
import time

from core.commands.base import Command, CommandOutput, fmt_vector
from core.delzant import atlas, validate
from core.errors import InvalidTriple
from core.types import DiscreteGroupPresentation
from utils.document import encode_atlas


def _describe_gamma(gamma: DiscreteGroupPresentation) -> str:
    if gamma.is_trivial:
        return "trivial"
    gens = ", ".join(fmt_vector(g) for g in gamma.generators)
    if not gamma.is_finite:
        return f"infinite, generated by {gens}"
    return f"order {gamma.order}, generated by {gens}"


class AtlasCommand(Command):
    name = "atlas"
    help = "输出三元组的图卡与 Γ 群"

    def run(self, args: argparse.Namespace) -> CommandOutput:
        start = time.time()
        doc = self._load(args)
        name, triple = self._named_triple(doc, args)
        report = validate(triple)
        if not report.valid:
            raise InvalidTriple(report)
        charts = atlas(triple)
        lines = "\n".join(
            self._render(
                "atlas_chart.txt",
                vertex=fmt_vector(c.vertex),
                tight=list(c.tight),
                gamma=_describe_gamma(c.gamma),
            )
            for c in charts
        )
        summary = self._render("atlas_summary.txt", triple=name, charts=len(charts), chart_lines=lines)
        self._report_time(start)
        return CommandOutput(encode_atlas(charts), summary)


__all__ = ["AtlasCommand"]
