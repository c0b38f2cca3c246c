import json

import pytest

import toriq
from conftest import DATA_DIR
from core.commands.validate import ValidateCommand

A = ["0/1", "1/1"]  # √2 的幂基坐标


def run(capsys, *argv):
    code = toriq.main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def data(name: str) -> str:
    return str(DATA_DIR / name)


# ----------------------------------------------------------------------
# validate
# ----------------------------------------------------------------------


def test_validate_strip(capsys):
    code, payload, err = run_json(capsys, "validate", data("strip.json"))
    assert code == 0
    assert payload["valid"] is True
    assert payload["triples"]["main"]["smooth"] is True
    assert "valid, smooth" in err


def test_validate_summary_names_each_triple(capsys):
    code, _, err = run(capsys, "validate", data("strip.json"))
    assert code == 0
    assert "✅ main: valid, smooth" in err


def test_render_accepts_a_name_field():
    line = ValidateCommand()._render("validate_summary.txt", icon="❌", name="square", status="invalid, 1 issue(s)")
    assert line == "❌ square: invalid, 1 issue(s)"


def test_validate_quasisphere_has_no_smoothness(capsys):
    code, payload, _ = run_json(capsys, "validate", data("quasisphere.json"))
    assert code == 0
    assert payload["triples"]["main"]["smooth"] is None


def test_validate_pyramid_fails(capsys):
    code, payload, err = run_json(capsys, "validate", data("pyramid.json"))
    assert code == 1
    assert payload["valid"] is False
    assert {i["code"] for i in payload["triples"]["main"]["issues"]} == {"simple"}
    assert "[simple]" in err


# ----------------------------------------------------------------------
# reduce
# ----------------------------------------------------------------------


def test_reduce_irrational_strip(capsys):
    code, payload, err = run_json(capsys, "reduce", data("strip_reductions.json"), "--reduction", "quasisphere")
    assert code == 0
    assert payload["kept"] == [1, 2]
    assert payload["discarded"] == [0]
    assert payload["subgroup_class"] == "NotClosed"
    assert payload["subgroup_witness"] == []
    assert payload["reduced_is_lattice"] is False
    assert payload["reduced_triple"]["quasilattice"]["generators"] == [[A], [["1/1", "0/1"]]]
    gammas = [chart["gamma"]["generators"] for chart in payload["reduced_atlas"]]
    assert gammas == [[[["-1/1", "1/1"]]], [[["2/1", "-1/1"]]]]
    assert payload["annotation"] is None
    assert "NotClosed" in err


def test_reduce_orbifold(capsys):
    code, payload, _ = run_json(capsys, "reduce", data("strip_rational.json"))
    assert code == 0
    assert payload["subgroup_witness"] == [["-2/1", "1/1"]]
    assert [c["gamma"]["order"] for c in payload["reduced_atlas"]] == [2, 2]
    assert payload["annotation"] == "orbifold"


def test_reduce_cp2(capsys):
    code, payload, _ = run_json(capsys, "reduce", data("cp2.json"), "--reduction", "interior")
    assert code == 0
    assert payload["kept"] == [0, 2]
    assert payload["discarded"] == [1]
    assert payload["translation_lift"] == ["0/1", "1/2"]
    assert payload["embedded_vertices"] == [["0/1", "1/2"], ["1/2", "1/2"]]
    assert payload["annotation"] == "manifold"


def test_cli_level_overrides_request(capsys):
    _, from_request, _ = run_json(capsys, "reduce", data("cp2.json"), "--reduction", "interior")
    for level in ("1/2", '["1/2"]'):
        code, payload, _ = run_json(capsys, "reduce", data("cp2.json"), "--subspace", "circle", "--level", level)
        assert code == 0
        assert payload == from_request


def test_reduce_with_lift(capsys):
    code, payload, _ = run_json(
        capsys, "reduce", data("cp2.json"), "--reduction", "interior", "--lift", "5,1/2"
    )
    assert code == 0
    assert payload["translation_lift"] == ["5/1", "1/2"]
    assert payload["embedded_vertices"] == [["0/1", "1/2"], ["1/2", "1/2"]]


def test_reduce_isotropy_violations(capsys):
    code, payload, err = run_json(capsys, "reduce", data("strip_reductions.json"), "--reduction", "poles")
    assert code == 2
    report = payload["isotropy"]
    assert report["passed"] is False
    assert report["uniqueness_check"] is False
    assert report["witnesses"][0]["index"] == 1
    assert "[uniqueness]" in err

    code, payload, _ = run_json(capsys, "reduce", data("square.json"), "--reduction", "through_vertex")
    assert code == 2
    assert payload["isotropy"]["dim_check"] is False

    code, payload, _ = run_json(capsys, "reduce", data("square.json"), "--reduction", "duplicate_facets")
    assert code == 2
    assert sorted(w["index"] for w in payload["isotropy"]["witnesses"]) == [1, 3]


def test_reduce_square_middle(capsys):
    code, payload, _ = run_json(capsys, "reduce", data("square.json"), "--reduction", "middle")
    assert code == 0
    assert payload["translation_lift"] == ["0/1", "1/2"]
    assert payload["annotation"] == "manifold"


def test_reduce_is_deterministic(capsys):
    argv = ("reduce", data("strip_reductions.json"), "--reduction", "quasisphere")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_empty_level_set(capsys):
    code, out, err = run(capsys, "reduce", data("square.json"), "--subspace", "diagonal", "--level", "3")
    assert code == 1
    assert out == ""
    assert "misses" in err


def test_reduce_invalid_triple(capsys, tmp_path):
    doc = {
        "triples": {
            "half_plane": {
                "polyhedron": {"dim": 2, "halfspaces": [{"normal": ["1", "0"], "offset": "0"}]},
                "quasilattice": {"generators": [["1", "0"], ["0", "1"]]},
            }
        },
        "subspaces": {"vertical": {"k_basis": [["0", "1"]]}},
    }
    path = tmp_path / "half_plane.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = run(capsys, "reduce", path)
    assert code == 1
    assert out == ""
    assert "[pointed]" in err


# ----------------------------------------------------------------------
# atlas / classify
# ----------------------------------------------------------------------


def test_atlas_strip(capsys):
    code, payload, err = run_json(capsys, "atlas", data("strip.json"))
    assert code == 0
    charts = payload["charts"]
    assert [c["vertex"] for c in charts] == [["-1/1", "0/1"], ["-1/1", "1/1"]]
    assert charts[0]["a_coeffs"] == {"2": ["0/1", "-1/1"]}
    assert charts[0]["inequalities"][0]["constant"] == "1/1"
    assert all(c["gamma"]["trivial"] for c in charts)
    assert "2 charts" in err


def test_atlas_quasisphere(capsys):
    code, payload, err = run_json(capsys, "atlas", data("quasisphere.json"))
    assert code == 0
    assert [c["gamma"]["finite"] for c in payload["charts"]] == [False, False]
    assert "infinite" in err


def test_atlas_rejects_invalid_triple(capsys):
    code, out, _ = run(capsys, "atlas", data("pyramid.json"))
    assert code == 1
    assert out == ""


def test_classify(capsys):
    code, payload, _ = run_json(capsys, "classify", data("strip_reductions.json"), "--reduction", "quasisphere")
    assert code == 0
    assert payload["subgroup_class"] == "NotClosed"
    assert payload["quotient_is_lattice"] is False

    code, payload, _ = run_json(capsys, "classify", data("strip_reductions.json"), "--reduction", "orbifold")
    assert code == 0
    assert payload["subgroup_class"] == "Closed"
    assert payload["witness"] == [[["-2/1", "0/1"], ["1/1", "0/1"]]]


# ----------------------------------------------------------------------
# sample / render
# ----------------------------------------------------------------------


def test_sample_strip(capsys):
    code, payload, err = run_json(capsys, "sample", data("strip.json"), "--count", 50)
    assert code == 0
    assert payload["count"] == 100
    assert payload["seed"] == 0
    assert payload["passed"] is True
    assert "100 samples" in err


def test_sample_seed_sources(capsys, monkeypatch):
    monkeypatch.delenv("TORIQ_SEED", raising=False)
    _, payload, _ = run_json(capsys, "sample", data("quasisphere.json"), "--count", 10, "--seed", 7)
    assert payload["seed"] == 7

    monkeypatch.setenv("TORIQ_SEED", "9")
    _, payload, _ = run_json(capsys, "sample", data("quasisphere.json"), "--count", 10, "--seed", 7)
    assert payload["seed"] == 9


def test_sample_is_deterministic(capsys):
    argv = ("sample", data("strip.json"), "--count", 20, "--seed", 4)
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_render_polyhedron(capsys):
    code, out, err = run(capsys, "render", data("strip.json"))
    assert code == 0
    assert out.startswith("<svg")
    assert "rendered" in err


def test_render_reduction(capsys):
    code, out, _ = run(capsys, "render", data("square.json"), "--what", "reduction", "--reduction", "middle")
    assert code == 0
    assert out.startswith("<svg")


def test_render_rejects_three_dimensions(capsys):
    code, out, _ = run(capsys, "render", data("pyramid.json"))
    assert code == 1
    assert out == ""


# ----------------------------------------------------------------------
# 读写错误
# ----------------------------------------------------------------------


def test_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "validate", tmp_path / "missing.json")
    assert code == 3
    assert out == ""
    assert "cannot read" in err


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\n  \"polyhedron\": \n", encoding="utf-8")
    code, _, err = run(capsys, "validate", path)
    assert code == 3
    assert "broken.json:" in err


def test_unknown_names(capsys):
    code, _, err = run(capsys, "reduce", data("square.json"), "--reduction", "nowhere")
    assert code == 3
    assert "reductions.nowhere" in err

    code, _, err = run(capsys, "reduce", data("square.json"))
    assert code == 3
    assert "name required" in err


def test_out_file(capsys, tmp_path):
    target = tmp_path / "atlas.json"
    code, out, err = run(capsys, "atlas", data("strip.json"), "--out", target)
    assert code == 0
    assert out == ""
    assert len(json.loads(target.read_text(encoding="utf-8"))["charts"]) == 2
    assert str(target) in err


def test_out_file_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "atlas", data("strip.json"), "--out", tmp_path / "no" / "such" / "dir.json")
    assert code == 3
    assert "cannot write" in err
