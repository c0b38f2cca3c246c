"""validate：逐项校验文档中的三元组。"""

from __future__ import annotations

import argparse
import time
from typing import Dict, List

from core.commands.base import Command, CommandOutput
from core.delzant import validate
from core.types import ValidationReport
from utils.document import encode_validation


def _status(report: ValidationReport) -> str:
    if not report.valid:
        return f"invalid, {len(report.issues)} issue(s)"
    if report.smooth is True:
        return "valid, smooth"
    if report.smooth is False:
        return "valid, not smooth"
    return "valid"


class ValidateCommand(Command):
    """不给 --triple 时校验文档中的全部三元组，任一失败则退出码为 1。"""

    name = "validate"
    help = "校验 Delzant 三元组"

    def run(self, args: argparse.Namespace) -> CommandOutput:
        start = time.time()
        doc = self._load(args)
        names = [args.triple] if args.triple else sorted(doc.triples)
        reports: Dict[str, ValidationReport] = {name: validate(doc.triple(name)) for name in names}

        lines: List[str] = []
        for name, report in reports.items():
            lines.append(self._render("validate_summary.txt", icon="✅" if report.valid else "❌", name=name, status=_status(report)))
            for issue in report.issues:
                lines.append(self._render("validation_issue.txt", code=issue.code, message=issue.message))

        all_valid = all(r.valid for r in reports.values())
        payload = {
            "valid": all_valid,
            "triples": {name: encode_validation(report) for name, report in reports.items()},
        }
        self._report_time(start)
        return CommandOutput(payload, "\n".join(lines), 0 if all_valid else 1)


__all__ = ["ValidateCommand"]
