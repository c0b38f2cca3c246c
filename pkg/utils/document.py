"""JSON 文档的读写。

域元素编码为幂基下的 "p/q" 字符串数组，一次域可以直接写成单个 "p/q"。
输入也接受整数与 "p" 形式的字符串；输出统一为 "p/q"。
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from core.errors import DocumentError, InvalidFieldSpec, InvalidSubspace
from core.field import FieldElem, FieldSpec
from core.reduction import make_subspace
from core.types import (
    Classification,
    DelzantTriple,
    DiscreteGroupPresentation,
    HalfSpace,
    IsotropyReport,
    Polyhedron,
    Quasilattice,
    ReductionResult,
    SampleReport,
    SubspaceData,
    ValidationReport,
    VertexChart,
)


_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class ReductionRequest:
    triple: str
    subspace: str
    level: Optional[tuple] = None


@dataclass
class Document:
    """一个文档共用一个域；所有引用在解析时检查。"""

    field: FieldSpec
    triples: Dict[str, DelzantTriple] = dataclass_field(default_factory=dict)
    subspaces: Dict[str, SubspaceData] = dataclass_field(default_factory=dict)
    reductions: Dict[str, ReductionRequest] = dataclass_field(default_factory=dict)

    def triple(self, name: str | None) -> DelzantTriple:
        return _lookup(self.triples, name, "triples")

    def subspace(self, name: str | None) -> SubspaceData:
        return _lookup(self.subspaces, name, "subspaces")

    def reduction(self, name: str | None) -> ReductionRequest:
        return _lookup(self.reductions, name, "reductions")


def _lookup(table: Dict[str, Any], name: str | None, kind: str):
    if name is None:
        if len(table) == 1:
            return next(iter(table.values()))
        raise DocumentError(kind, f"name required, document has {sorted(table)}")
    if name not in table:
        raise DocumentError(f"{kind}.{name}", "not found")
    return table[name]


# ----------------------------------------------------------------------
# 解析
# ----------------------------------------------------------------------
def parse_rational(raw: Any, location: str) -> Fraction:
    if isinstance(raw, bool):
        raise DocumentError(location, "boolean is not a rational")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        match = _RATIONAL_PATTERN.match(raw)
        if match:
            num, den = match.group(1), match.group(2)
            if den is not None and int(den) == 0:
                raise DocumentError(location, "zero denominator")
            return Fraction(int(num), int(den) if den else 1)
    raise DocumentError(location, f"expected a rational 'p/q', got {raw!r}")


def parse_elem(spec: FieldSpec, raw: Any, location: str) -> FieldElem:
    if isinstance(raw, list):
        if len(raw) > spec.degree:
            raise DocumentError(location, f"{len(raw)} coordinates for a degree {spec.degree} field")
        return spec.element([parse_rational(c, f"{location}[{i}]") for i, c in enumerate(raw)])
    return spec.from_rational(parse_rational(raw, location))


def parse_vector(spec: FieldSpec, raw: Any, location: str, length: int | None = None) -> tuple:
    if not isinstance(raw, list):
        raise DocumentError(location, "expected a list of field elements")
    if length is not None and len(raw) != length:
        raise DocumentError(location, f"expected {length} entries, got {len(raw)}")
    return tuple(parse_elem(spec, x, f"{location}[{i}]") for i, x in enumerate(raw))


def _require(raw: Any, key: str, location: str) -> Any:
    if not isinstance(raw, dict) or key not in raw:
        raise DocumentError(f"{location}.{key}", "missing")
    return raw[key]


def parse_field(raw: Any, location: str = "field") -> FieldSpec:
    if raw is None:
        return FieldSpec.rationals()
    poly = _require(raw, "min_poly", location)
    interval = _require(raw, "interval", location)
    if not isinstance(poly, list) or not all(isinstance(c, int) for c in poly):
        raise DocumentError(f"{location}.min_poly", "expected a list of integers")
    if not isinstance(interval, list) or len(interval) != 2:
        raise DocumentError(f"{location}.interval", "expected [lo, hi]")
    lo, hi = (parse_rational(v, f"{location}.interval[{i}]") for i, v in enumerate(interval))
    try:
        return FieldSpec(tuple(poly), (lo, hi))
    except InvalidFieldSpec as e:
        raise DocumentError(location, str(e)) from e


def parse_polyhedron(spec: FieldSpec, raw: Any, location: str) -> Polyhedron:
    dim = _require(raw, "dim", location)
    if not isinstance(dim, int) or dim < 1:
        raise DocumentError(f"{location}.dim", "expected a positive integer")
    items = _require(raw, "halfspaces", location)
    if not isinstance(items, list):
        raise DocumentError(f"{location}.halfspaces", "expected a list")
    halfspaces = []
    for i, item in enumerate(items):
        loc = f"{location}.halfspaces[{i}]"
        normal = parse_vector(spec, _require(item, "normal", loc), f"{loc}.normal", dim)
        offset = parse_elem(spec, _require(item, "offset", loc), f"{loc}.offset")
        halfspaces.append(HalfSpace(normal, offset))
    return Polyhedron(spec, dim, tuple(halfspaces))


def parse_quasilattice(spec: FieldSpec, raw: Any, location: str, dim: int) -> Quasilattice:
    gens = _require(raw, "generators", location)
    if not isinstance(gens, list):
        raise DocumentError(f"{location}.generators", "expected a list")
    vectors = tuple(parse_vector(spec, g, f"{location}.generators[{i}]", dim) for i, g in enumerate(gens))
    return Quasilattice(spec, dim, vectors)


def parse_triple(spec: FieldSpec, raw: Any, location: str) -> DelzantTriple:
    P = parse_polyhedron(spec, _require(raw, "polyhedron", location), f"{location}.polyhedron")
    Q = parse_quasilattice(spec, _require(raw, "quasilattice", location), f"{location}.quasilattice", P.dim_ambient)
    return DelzantTriple(P, Q)


def parse_subspace(spec: FieldSpec, raw: Any, location: str) -> SubspaceData:
    k_raw = _require(raw, "k_basis", location)
    if not isinstance(k_raw, list) or not k_raw:
        raise DocumentError(f"{location}.k_basis", "expected a non-empty list of vectors")
    k_basis = [parse_vector(spec, v, f"{location}.k_basis[{i}]") for i, v in enumerate(k_raw)]
    n = len(k_basis[0])
    quotient = None
    if raw.get("quotient_basis") is not None:
        quotient = [
            parse_vector(spec, v, f"{location}.quotient_basis[{i}]", n) for i, v in enumerate(raw["quotient_basis"])
        ]
    try:
        return make_subspace(spec, n, k_basis, quotient)
    except InvalidSubspace as e:
        raise DocumentError(location, str(e)) from e


def parse_document(raw: Any) -> Document:
    """解析整个文档；只含一个三元组的文档以 "main" 命名。"""
    if not isinstance(raw, dict):
        raise DocumentError("$", "expected a JSON object")
    spec = parse_field(raw.get("field"))
    doc = Document(spec)
    if "polyhedron" in raw:
        doc.triples["main"] = parse_triple(spec, raw, "$")
    for name, item in (raw.get("triples") or {}).items():
        doc.triples[name] = parse_triple(spec, item, f"triples.{name}")
    for name, item in (raw.get("subspaces") or {}).items():
        doc.subspaces[name] = parse_subspace(spec, item, f"subspaces.{name}")
    for name, item in (raw.get("reductions") or {}).items():
        loc = f"reductions.{name}"
        request = ReductionRequest(
            triple=_require(item, "triple", loc),
            subspace=_require(item, "subspace", loc),
            level=parse_vector(spec, item["level"], f"{loc}.level") if item.get("level") is not None else None,
        )
        if request.triple not in doc.triples:
            raise DocumentError(f"{loc}.triple", f"unknown triple {request.triple!r}")
        if request.subspace not in doc.subspaces:
            raise DocumentError(f"{loc}.subspace", f"unknown subspace {request.subspace!r}")
        doc.reductions[name] = request
    return doc


def load_document(path: str | Path) -> Document:
    """读取并解析文档。

    Raises:
        DocumentError: 文件无法读取、JSON 不合法或内容不合法
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(str(path), f"cannot read: {e.strerror or e}") from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}:{e.lineno}:{e.colno}", e.msg) from e
    return parse_document(raw)


# ----------------------------------------------------------------------
# 编码
# ----------------------------------------------------------------------
def encode_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def encode_elem(e: FieldElem) -> Any:
    if e.field.degree == 1:
        return encode_rational(e.coords[0])
    return [encode_rational(c) for c in e.coords]


def encode_vector(v: Sequence[FieldElem]) -> List[Any]:
    return [encode_elem(x) for x in v]


def encode_field(spec: FieldSpec) -> Dict[str, Any]:
    return {"min_poly": list(spec.min_poly), "interval": [encode_rational(x) for x in spec.interval]}


def encode_polyhedron(P: Polyhedron) -> Dict[str, Any]:
    return {
        "dim": P.dim_ambient,
        "halfspaces": [{"normal": encode_vector(h.normal), "offset": encode_elem(h.offset)} for h in P.halfspaces],
    }


def encode_quasilattice(Q: Quasilattice) -> Dict[str, Any]:
    return {"generators": [encode_vector(g) for g in Q.generators]}


def encode_triple(T: DelzantTriple) -> Dict[str, Any]:
    return {"polyhedron": encode_polyhedron(T.polyhedron), "quasilattice": encode_quasilattice(T.quasilattice)}


def encode_subspace(S: SubspaceData) -> Dict[str, Any]:
    return {
        "k_basis": [encode_vector(v) for v in S.k_basis],
        "quotient_basis": [encode_vector(v) for v in S.quotient_basis],
    }


def encode_validation(report: ValidationReport) -> Dict[str, Any]:
    return {
        "valid": report.valid,
        "smooth": report.smooth,
        "issues": [{"code": i.code, "message": i.message, "index": i.index} for i in report.issues],
    }


def encode_gamma(gamma: DiscreteGroupPresentation) -> Dict[str, Any]:
    return {
        "rank": gamma.rank_n,
        "generators": [encode_vector(g) for g in gamma.generators],
        "trivial": gamma.is_trivial,
        "finite": gamma.is_finite,
        "order": gamma.order,
        "invariant_factors": list(gamma.invariant_factors),
    }


def encode_chart(chart: VertexChart) -> Dict[str, Any]:
    return {
        "vertex": encode_vector(chart.vertex),
        "tight": list(chart.tight),
        "order": list(chart.order),
        "a_coeffs": {str(j): encode_vector(a) for j, a in chart.a_coeffs},
        "inequalities": [
            {"index": ineq.index, "coeffs": encode_vector(ineq.coeffs), "constant": encode_elem(ineq.constant)}
            for ineq in chart.inequalities
        ],
        "gamma": encode_gamma(chart.gamma),
    }


def encode_atlas(charts: Sequence[VertexChart]) -> Dict[str, Any]:
    return {"charts": [encode_chart(c) for c in charts]}


def encode_isotropy(report: IsotropyReport) -> Dict[str, Any]:
    return {
        "passed": report.passed,
        "dim": report.dim,
        "expected_dim": report.expected_dim,
        "dim_check": report.dim_check,
        "simple_check": report.simple_check,
        "uniqueness_check": report.uniqueness_check,
        "witnesses": [
            {
                "check": w.check,
                "message": w.message,
                "vertex": encode_vector(w.vertex) if w.vertex is not None else None,
                "index": w.index,
            }
            for w in report.witnesses
        ],
    }


def encode_classification(c: Classification) -> Dict[str, Any]:
    return {
        "subgroup_class": c.subgroup_class.value,
        "witness": [encode_vector(w) for w in c.subgroup.witness],
        "quotient_quasilattice": encode_quasilattice(c.quotient_lattice),
        "quotient_is_lattice": c.quotient_is_lattice,
    }


def encode_reduction(result: ReductionResult) -> Dict[str, Any]:
    return {
        "reduced_triple": encode_triple(result.reduced_triple),
        "kept": list(result.kept),
        "discarded": list(result.discarded),
        "subgroup_class": result.subgroup.subgroup_class.value,
        "subgroup_witness": [encode_vector(w) for w in result.subgroup.witness],
        "reduced_is_lattice": result.reduced_is_lattice,
        "isotropy": encode_isotropy(result.isotropy),
        "reduced_atlas": encode_atlas(result.reduced_atlas)["charts"],
        "subspace": encode_subspace(result.subspace),
        "level": encode_vector(result.level),
        "translation_lift": encode_vector(result.translation_lift),
        "embedded_vertices": [encode_vector(v) for v in result.embedded_vertices],
        "annotation": result.annotation,
    }


def encode_sample_report(report: SampleReport) -> Dict[str, Any]:
    return {
        "count": report.count,
        "tol": report.tol,
        "seed": report.seed,
        "max_psi": report.max_psi,
        "max_level_residual": report.max_level_residual,
        "max_violation": report.max_violation,
        "passed": report.passed,
        "failures": list(report.failures),
    }


def dumps(payload: Any) -> str:
    """确定性的 JSON 文本，相同输入逐字节相同。"""
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


__all__ = [
    "Document",
    "ReductionRequest",
    "parse_rational",
    "parse_elem",
    "parse_vector",
    "parse_field",
    "parse_polyhedron",
    "parse_quasilattice",
    "parse_triple",
    "parse_subspace",
    "parse_document",
    "load_document",
    "encode_rational",
    "encode_elem",
    "encode_vector",
    "encode_field",
    "encode_polyhedron",
    "encode_quasilattice",
    "encode_triple",
    "encode_subspace",
    "encode_validation",
    "encode_gamma",
    "encode_chart",
    "encode_atlas",
    "encode_isotropy",
    "encode_classification",
    "encode_reduction",
    "encode_sample_report",
    "dumps",
]
