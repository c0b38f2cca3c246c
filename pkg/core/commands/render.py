"""render：1 维与 2 维多面体及约化的 SVG。"""

from __future__ import annotations

import argparse
import time

from core.commands.base import Command, CommandOutput
from core.delzant import validate
from core.errors import InvalidTriple
from core.reduction import reduce
from utils.svg import polyhedron_svg, reduction_svg


class RenderCommand(Command):
    name = "render"
    help = "输出 SVG 图"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        cls.add_reduction_arguments(parser)
        parser.add_argument("--what", choices=["polyhedron", "reduction"], default="polyhedron", help="画什么")

    def run(self, args: argparse.Namespace) -> CommandOutput:
        start = time.time()
        doc = self._load(args)
        if args.what == "polyhedron":
            name, triple = self._named_triple(doc, args)
            svg = polyhedron_svg(triple.polyhedron, title=name)
        else:
            inputs = self._reduction_inputs(doc, args)
            name, triple = inputs.triple_name, inputs.triple
            report = validate(triple)
            if not report.valid:
                raise InvalidTriple(report)
            result = reduce(triple, inputs.subspace, inputs.level, inputs.lift)
            svg = reduction_svg(triple, result, title=f"{name} / {inputs.subspace_name}")
        summary = self._render("render_summary.txt", what=args.what, triple=name, size=len(svg.encode("utf-8")))
        self._report_time(start)
        return CommandOutput(svg, summary)


__all__ = ["RenderCommand"]
