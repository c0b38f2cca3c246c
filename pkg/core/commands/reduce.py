"""reduce：组合约化，光滑输入自动附带分类标注。"""

from __future__ import annotations

import argparse
import time

from core.commands.base import Command, CommandOutput, fmt_vector
from core.delzant import validate
from core.errors import InvalidTriple, IsotropyViolation
from core.reduction import reduce, reduce_smooth
from utils.document import encode_isotropy, encode_reduction


class ReduceCommand(Command):
    """迷向判据失败时退出码为 2，stdout 仍输出带见证的迷向报告。"""

    name = "reduce"
    help = "对三元组做子空间约化"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        cls.add_reduction_arguments(parser)

    def run(self, args: argparse.Namespace) -> CommandOutput:
        start = time.time()
        doc = self._load(args)
        inputs = self._reduction_inputs(doc, args)
        S = inputs.subspace
        level = inputs.level if inputs.level is not None else (S.field.zero,) * S.k

        report = validate(inputs.triple)
        if not report.valid:
            raise InvalidTriple(report)
        reducer = reduce_smooth if report.smooth is True else reduce
        try:
            result = reducer(inputs.triple, S, level, inputs.lift, verbose=self.verbose)
        except IsotropyViolation as e:
            witnesses = "\n".join(
                self._render("isotropy_witness.txt", check=w.check, message=w.message) for w in e.report.witnesses
            )
            summary = self._render(
                "isotropy_violation.txt",
                triple=inputs.triple_name,
                subspace=inputs.subspace_name,
                level=fmt_vector(level),
                witnesses=witnesses,
            )
            self._report_time(start)
            return CommandOutput({"isotropy": encode_isotropy(e.report)}, summary, 2)

        summary = self._render(
            "reduce_summary.txt",
            triple=inputs.triple_name,
            subspace=inputs.subspace_name,
            level=fmt_vector(level),
            kept=list(result.kept),
            discarded=list(result.discarded),
            subgroup_class=result.subgroup.subgroup_class.value,
            lattice="is a lattice" if result.reduced_is_lattice else "is not a lattice",
            charts=len(result.reduced_atlas),
            annotation=f", {result.annotation}" if result.annotation else "",
        )
        self._report_time(start)
        return CommandOutput(encode_reduction(result), summary)


__all__ = ["ReduceCommand"]
