"""classify：子群 K 是否闭、p(Q) 是否为格。"""

from __future__ import annotations

import argparse
import time

from core.commands.base import Command, CommandOutput, fmt_vector
from core.reduction import classify
from utils.document import encode_classification


class ClassifyCommand(Command):
    name = "classify"
    help = "判断 𝔨 对应的子群是否闭"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        cls.add_reduction_arguments(parser)

    def run(self, args: argparse.Namespace) -> CommandOutput:
        start = time.time()
        doc = self._load(args)
        inputs = self._reduction_inputs(doc, args)
        result = classify(inputs.triple, inputs.subspace)
        witness = ", ".join(fmt_vector(w) for w in result.subgroup.witness) or "none"
        summary = self._render(
            "classify_summary.txt",
            triple=inputs.triple_name,
            subspace=inputs.subspace_name,
            subgroup_class=result.subgroup_class.value,
            witness=witness,
            lattice="is a lattice" if result.quotient_is_lattice else "is not a lattice",
        )
        self._report_time(start)
        return CommandOutput(encode_classification(result), summary)


__all__ = ["ClassifyCommand"]
