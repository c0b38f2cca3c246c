"""子命令的抽象基类。"""

from __future__ import annotations

import argparse
import json
import sys
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from core.field import FieldElem
from core.types import DelzantTriple, SubspaceData
from utils.config import resolve_seed
from utils.document import Document, load_document, parse_vector

TEMPLATE_DIR = Path(__file__).parent.parent.parent / "templates"


@dataclass
class CommandOutput:
    """payload 为 dict 时按 JSON 输出，为 str 时原样输出（SVG）。"""

    payload: Any
    summary: str
    exit_code: int = 0


class Command(ABC):
    """toriq 子命令的统一接口：声明参数、读取文档、返回输出。"""

    name: str = ""
    help: str = ""

    def __init__(self, verbose: bool = False) -> None:
        """初始化命令实例。

        Args:
            verbose: 是否打印耗时信息
        """
        self.verbose = verbose

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """注册子命令参数；所有子命令都有 path、--triple 与 --out。"""
        parser.add_argument("path", help="JSON 文档路径")
        parser.add_argument("--triple", default=None, help="文档中的三元组名")
        parser.add_argument("--out", default=None, help="输出文件（缺省写到 stdout）")

    @abstractmethod
    def run(self, args: argparse.Namespace) -> CommandOutput:
        """执行子命令。

        Raises:
            ToriqError: 库函数抛出的错误，由入口统一映射为退出码
        """
        raise NotImplementedError

    def _load(self, args: argparse.Namespace) -> Document:
        return load_document(args.path)

    def _named_triple(self, doc: Document, args: argparse.Namespace) -> tuple[str, DelzantTriple]:
        name = args.triple or _single(doc.triples)
        return name, doc.triple(name)

    def _report_time(self, start: float) -> None:
        if self.verbose:
            print(f"⏱️ {self.name} 耗时: {time.time() - start:.3f} 秒", file=sys.stderr)

    def _seed(self, args: argparse.Namespace) -> int:
        return resolve_seed(getattr(args, "seed", None))

    def _template(self, template: str) -> str:
        """读取 templates/ 下的文本模板。"""
        with open(TEMPLATE_DIR / template, "r", encoding="utf-8") as f:
            return f.read().strip()

    def _render(self, template: str, **fields: Any) -> str:
        return self._template(template).format(**fields)

    @staticmethod
    def add_reduction_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--subspace", default=None, help="文档中的子空间名")
        parser.add_argument("--level", default=None, help='水平 ξ，JSON 数组或 "1/2,0"（缺省为 0）')
        parser.add_argument("--lift", default=None, help="可选的水平提升 μ₀，格式同 --level")
        parser.add_argument("--reduction", default=None, help="文档中的约化请求名，给出时提供缺省的三元组、子空间与水平")

    def _reduction_inputs(self, doc: Document, args: argparse.Namespace) -> ReductionInputs:
        """命令行参数优先，其次是 --reduction 指定的请求。"""
        triple_name, subspace_name, level = args.triple, args.subspace, None
        if args.reduction is not None:
            request = doc.reduction(args.reduction)
            triple_name = triple_name or request.triple
            subspace_name = subspace_name or request.subspace
            level = request.level
        if args.level is not None:
            level = parse_level(doc, args.level)
        triple_name = triple_name or _single(doc.triples)
        subspace_name = subspace_name or _single(doc.subspaces)
        return ReductionInputs(
            triple_name=triple_name,
            triple=doc.triple(triple_name),
            subspace_name=subspace_name,
            subspace=doc.subspace(subspace_name),
            level=level,
            lift=parse_level(doc, args.lift, "--lift"),
        )


@dataclass
class ReductionInputs:
    triple_name: str
    triple: DelzantTriple
    subspace_name: str
    subspace: SubspaceData
    level: Optional[tuple[FieldElem, ...]]
    lift: Optional[tuple[FieldElem, ...]]


def _single(table: dict) -> Optional[str]:
    """只有一项时返回它的名字；否则返回 None，由 Document 报出缺名错误。"""
    if len(table) == 1:
        return next(iter(table))
    return None


def fmt_vector(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def parse_level(doc: Document, raw: Optional[str], location: str = "--level") -> Optional[tuple[FieldElem, ...]]:
    """--level 接受 JSON 数组，或逗号分隔的有理数 "1/2,0"。

    Raises:
        DocumentError: 无法解析
    """
    if raw is None:
        return None
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = [part.strip() for part in raw.split(",")]
    if not isinstance(value, list):
        value = [value]
    return parse_vector(doc.field, value, location)


__all__ = ["Command", "CommandOutput", "ReductionInputs", "TEMPLATE_DIR", "fmt_vector", "parse_level"]
