#!/usr/bin/env python3
"""在随机有理三元组与子空间上扫描迷向判据，统计通过率与约化耗时。"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path
from typing import Dict, List
sys.path.append(str(Path(__file__).resolve().parent.parent))

from core.errors import EmptyReduction, IsotropyViolation
from core.polyhedron import contains
from core.quasilattice import contains as q_contains
from core.reduction import reduce, restrict
from utils.config import resolve_seed
from utils.document import encode_subspace, encode_triple, encode_vector
from utils.random_triples import random_cases


CASE_COUNT = 200
MAX_N = 3
MAX_D = 7
ROOT = Path(__file__).resolve().parent.parent
OUTPUT_FILE = ROOT / "cache" / "free_action_sweep_results.json"


def check_result(triple, result) -> List[str]:
    """通过判据的约化还需满足的性质，返回不满足的项。"""
    problems: List[str] = []
    reduced = result.reduced_triple
    for j, h in zip(result.kept, reduced.polyhedron.halfspaces):
        if not q_contains(reduced.quasilattice, h.normal):
            problems.append(f"kept normal {j} is not in p(Q)")
    for v in result.embedded_vertices:
        if not contains(triple.polyhedron, v):
            problems.append("embedded vertex leaves the polyhedron")
        if restrict(result.subspace, v) != result.level:
            problems.append("embedded vertex leaves the level set")
    return problems


def main() -> None:
    """生成随机实例、逐个约化，输出统计并写入 cache/。"""
    seed = resolve_seed(None)
    stats = {"count": 0, "passed": 0, "violations": 0, "empty": 0, "time_ms": 0.0}
    by_check: Dict[str, int] = {"dim": 0, "simple": 0, "uniqueness": 0}
    details: List[Dict[str, object]] = []

    for index, (triple, S, level) in enumerate(random_cases(seed, CASE_COUNT, MAX_N, MAX_D)):
        start = time.perf_counter()
        entry: Dict[str, object] = {
            "index": index,
            "triple": encode_triple(triple),
            "subspace": encode_subspace(S),
            "level": encode_vector(level),
        }
        try:
            result = reduce(triple, S, level)
        except IsotropyViolation as e:
            stats["violations"] += 1
            failed = sorted({w.check for w in e.report.witnesses})
            for check in failed:
                by_check[check] += 1
            entry["outcome"] = "violation"
            entry["failed_checks"] = failed
        except EmptyReduction:
            stats["empty"] += 1
            entry["outcome"] = "empty"
        else:
            problems = check_result(triple, result)
            if problems:
                print(f"第 {index} 个实例不满足约化性质: {problems}", file=sys.stderr)
                raise SystemExit(1)
            stats["passed"] += 1
            entry["outcome"] = "passed"
            entry["subgroup_class"] = result.subgroup.subgroup_class.value
        elapsed_ms = (time.perf_counter() - start) * 1000
        entry["time_ms"] = elapsed_ms
        stats["count"] += 1
        stats["time_ms"] += elapsed_ms
        details.append(entry)

    if stats["count"] == 0:
        print("没有生成任何实例，实验没有执行。", file=sys.stderr)
        raise SystemExit(1)

    avg_ms = stats["time_ms"] / stats["count"]
    print("实验完成：")
    print(f"- 实例数: {stats['count']} (seed {seed})")
    print(f"- 通过: {stats['passed']}, 迷向失败: {stats['violations']}, 水平集为空: {stats['empty']}")
    print(f"- 失败项分布: {by_check}")
    print(f"- 平均耗时: {avg_ms:.2f} ms")

    OUTPUT_FILE.parent.mkdir(parents=True, exist_ok=True)
    result_payload: Dict[str, object] = {
        "seed": seed,
        "case_count": stats["count"],
        "passed": stats["passed"],
        "violations": stats["violations"],
        "empty": stats["empty"],
        "failed_checks": by_check,
        "average_time_ms": avg_ms,
        "details": details,
    }
    with OUTPUT_FILE.open("w", encoding="utf-8") as handle:
        json.dump(result_payload, handle, ensure_ascii=False, indent=2)
    print(f"详细结果已写入 {OUTPUT_FILE}")


if __name__ == "__main__":
    main()
