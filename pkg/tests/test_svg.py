import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from core.errors import DimensionUnsupported
from core.polyhedron import make_polyhedron
from core.quasilattice import standard
from core.reduction import make_subspace, reduce
from core.types import DelzantTriple
from utils.svg import polyhedron_svg, reduction_svg

SVG_NS = "{http://www.w3.org/2000/svg}"


def _parse(svg: str) -> ET.Element:
    root = ET.fromstring(svg)
    assert root.tag == f"{SVG_NS}svg"
    return root


def _all(root: ET.Element, tag: str):
    return list(root.iter(f"{SVG_NS}{tag}"))


def test_square_svg(square):
    root = _parse(polyhedron_svg(square.polyhedron, title="square"))
    assert len(_all(root, "circle")) == 4
    lines = _all(root, "line")
    assert len(lines) == 4
    assert not any("stroke-dasharray" in line.attrib for line in lines)
    assert _all(root, "text")[0].text == "square"
    assert len(_all(root, "polygon")) == 1


def test_redundant_facet_is_dashed(qq):
    P = make_polyhedron(qq, 2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1), ((-1, 0), Fraction(-6, 5))])
    root = _parse(polyhedron_svg(P))
    dashed = [line for line in _all(root, "line") if "stroke-dasharray" in line.attrib]
    assert len(dashed) == 1


def test_unbounded_strip_svg(strip):
    root = _parse(polyhedron_svg(strip.polyhedron))
    assert len(_all(root, "circle")) == 2
    assert len(_all(root, "polygon")) == 1


def test_svg_is_deterministic(strip_sqrt2):
    assert polyhedron_svg(strip_sqrt2.polyhedron) == polyhedron_svg(strip_sqrt2.polyhedron)


def test_segment_svg(quasisphere):
    root = _parse(polyhedron_svg(quasisphere.polyhedron, title="quasisphere"))
    labels = sorted(t.text for t in _all(root, "text")[1:])
    assert labels == ["0", "1"]
    assert len(_all(root, "circle")) == 2


def test_three_dimensions_are_rejected(qq):
    P = make_polyhedron(qq, 3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)])
    with pytest.raises(DimensionUnsupported):
        polyhedron_svg(P)


def test_reduction_svg_in_the_plane(square, qq):
    result = reduce(square, make_subspace(qq, 2, [(1, 1)]), (Fraction(1, 2),))
    root = _parse(reduction_svg(square, result, title="square / diagonal"))
    widths = [line.get("stroke-width") for line in _all(root, "line")]
    assert widths.count("4") == 1
    assert len(_all(root, "line")) == 6


def test_reduction_svg_draws_reduced_polygon(qq):
    P = make_polyhedron(qq, 3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((-1, -1, -1), -1)])
    triple = DelzantTriple(P, standard(qq, 3))
    result = reduce(triple, make_subspace(qq, 3, [(0, 0, 1)]), (Fraction(1, 4),))
    root = _parse(reduction_svg(triple, result))
    assert len(_all(root, "circle")) == 3
