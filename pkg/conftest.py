"""公共 fixture：反复用到的域（ℚ、ℚ(√2)）与三元组（带形、正方形、CP²、拟球面）。"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent
sys.path.insert(0, str(ROOT))

from core.field import FieldSpec  # noqa: E402
from core.polyhedron import make_polyhedron  # noqa: E402
from core.quasilattice import make_quasilattice, standard  # noqa: E402
from core.types import DelzantTriple  # noqa: E402

DATA_DIR = ROOT / "data"


@pytest.fixture
def qq() -> FieldSpec:
    return FieldSpec.rationals()


@pytest.fixture
def sqrt2() -> FieldSpec:
    """ℚ(√2)，α 取 (1, 2) 中的根。"""
    return FieldSpec((-2, 0, 1), (1, 2))


def strip_triple(field: FieldSpec) -> DelzantTriple:
    """[−1, ∞) × [0, 1] 与 ℤ²。"""
    P = make_polyhedron(field, 2, [((1, 0), -1), ((0, 1), 0), ((0, -1), -1)])
    return DelzantTriple(P, standard(field, 2))


def square_triple(field: FieldSpec) -> DelzantTriple:
    P = make_polyhedron(field, 2, [((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)])
    return DelzantTriple(P, standard(field, 2))


def cp2_triple(field: FieldSpec) -> DelzantTriple:
    P = make_polyhedron(field, 2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)])
    return DelzantTriple(P, standard(field, 2))


def quasisphere_triple(field: FieldSpec) -> DelzantTriple:
    """[0, 1] 与 ℤ + αℤ。"""
    P = make_polyhedron(field, 1, [((1,), 0), ((-1,), -1)])
    return DelzantTriple(P, make_quasilattice(field, 1, [(1,), (field.alpha,)]))


@pytest.fixture
def strip(qq) -> DelzantTriple:
    return strip_triple(qq)


@pytest.fixture
def strip_sqrt2(sqrt2) -> DelzantTriple:
    return strip_triple(sqrt2)


@pytest.fixture
def square(qq) -> DelzantTriple:
    return square_triple(qq)


@pytest.fixture
def cp2(qq) -> DelzantTriple:
    return cp2_triple(qq)


@pytest.fixture
def quasisphere(sqrt2) -> DelzantTriple:
    return quasisphere_triple(sqrt2)
