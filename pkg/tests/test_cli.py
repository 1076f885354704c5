import json

import pytest

from polyexact.cli import main

THREE_D_DOC = """{
  "sets": {
    "cube": {
      "kind": "hrep",
      "dim": 3,
      "ineqs": [
        {"normal": ["1", "0", "0"], "rhs": "1"},
        {"normal": ["-1", "0", "0"], "rhs": "1"},
        {"normal": ["0", "1", "0"], "rhs": "1"},
        {"normal": ["0", "-1", "0"], "rhs": "1"},
        {"normal": ["0", "0", "1"], "rhs": "1"},
        {"normal": ["0", "0", "-1"], "rhs": "1"}
      ]
    }
  }
}
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_extremal_yes(capsys):
    code, out, _ = run(capsys, "check-extremal", "halfplanes", "lower", "upper",
                       "--epsilon", "1/2")
    assert code == 0
    assert "extremal: yes" in out
    assert "disjoining translation" in out
    assert out.rstrip().endswith("ok")


def test_check_extremal_no(capsys):
    code, out, _ = run(capsys, "check-extremal", "boxes-overlap", "left", "right")
    assert code == 0
    assert "extremal: no" in out
    assert "interior ball radius" in out


def test_check_extremal_json_payload(capsys):
    code, out, _ = run(capsys, "--json", "check-extremal", "halfplanes",
                       "lower", "upper")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["result"]["extremal"] is True
    assert doc["result"]["boundary_evidence"] == {"normal": ["0", "1"], "rhs": "0"}


def test_separate_disjoint_boxes(capsys):
    code, out, _ = run(capsys, "separate", "separated-boxes", "left", "right")
    assert code == 0
    assert "separating functional: (1, 0)" in out
    assert "sup over left: 1" in out
    assert "inf over right: 2" in out


def test_separate_overlapping_pair(capsys):
    code, out, _ = run(capsys, "separate", "boxes-overlap", "left", "right")
    assert code == 0
    assert "no separating functional" in out


def test_ep_certificate(capsys):
    code, out, _ = run(capsys, "ep", "halfplanes", "lower", "upper",
                       "origin", "1/10")
    assert code == 0
    assert "independent recheck: pass" in out


def test_ep_needs_extremal_pair(capsys):
    code, _, err = run(capsys, "ep", "boxes-overlap", "left", "right",
                       "inner", "1/10")
    assert code == 1
    assert "extremal" in err


def test_intersection_rule_equal(capsys):
    code, out, _ = run(capsys, "intersection-rule", "halfplane-and-axis",
                       "halfplane", "axis", "origin")
    assert code == 0
    assert "EQUALS" in out
    assert "bounded extremality yes" in out


def test_support_named_and_literal_functional(capsys):
    code, out, _ = run(capsys, "support", "unit-square", "square", "diag")
    assert code == 0
    assert "support value: 2" in out
    code, out2, _ = run(capsys, "support", "unit-square", "square", "1,1")
    assert code == 0
    assert "support value: 2" in out2


def test_support_unbounded_ray(capsys):
    code, out, _ = run(capsys, "support", "halfplane-and-axis", "halfplane",
                       "up")
    assert code == 0
    assert "support value: +inf" in out
    assert "certified unbounded ray" in out


def test_infconv_value_and_split(capsys):
    code, out, _ = run(capsys, "infconv", "boxes-touching", "left", "right",
                       "up")
    assert code == 0
    assert "infimal convolution value: 1" in out
    assert "split: (0, 1) + (0, 0)" in out


def test_unknown_set_exits_2(capsys):
    code, _, err = run(capsys, "check-extremal", "halfplanes", "lower", "nope")
    assert code == 2
    assert "available: lower, upper" in err


def test_unknown_fixture_exits_2(capsys):
    code, _, err = run(capsys, "support", "missing-fixture", "s", "1,0")
    assert code == 2
    assert "fixtures:" in err


def test_bad_rational_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check-extremal", "halfplanes", "lower", "upper",
              "--epsilon", "half"])
    assert info.value.code == 2


def test_json_error_document(capsys):
    code, out, err = run(capsys, "--json", "ep", "boxes-overlap", "left",
                         "right", "inner", "1/10")
    assert code == 1
    doc = json.loads(out)
    assert doc["ok"] is False
    assert doc["result"]["error"]["kind"] == "precondition"
    assert err


def test_verbose_adds_summaries(capsys):
    _, quiet, _ = run(capsys, "separate", "halfplanes", "lower", "upper")
    _, loud, _ = run(capsys, "-v", "separate", "halfplanes", "lower", "upper")
    assert "lower: dim 2" in loud and "lower: dim 2" not in quiet
    _, louder, _ = run(capsys, "-vv", "separate", "halfplanes", "lower", "upper")
    assert '"command": "separate"' in louder


def test_verify_suite_small_and_deterministic(capsys):
    argv = ("verify-suite", "--seed-range", "1..2", "--dims", "2",
            "--lp-count", "5", "--boundary-count", "2")
    code, out, _ = run(capsys, "--json", *argv)
    assert code == 0
    code2, out2, _ = run(capsys, "--json", *argv)
    assert code2 == 0
    assert out == out2
    doc = json.loads(out)
    names = [s["name"] for s in doc["result"]["sweeps"]]
    assert len(names) == 9 and "lp-certification" in names


def test_plot_writes_deterministic_svg(tmp_path, capsys):
    target = tmp_path / "scene.svg"
    argv = ("plot", "halfplanes", "lower", "upper", "--cones-at", "origin",
            "--separator", "up", "--out", str(target))
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "separator drawn at (0, 1) . x = 0" in out
    first = target.read_bytes()
    assert first.startswith(b"<?xml")
    code, _, _ = run(capsys, *argv)
    assert code == 0
    assert target.read_bytes() == first


def test_plot_rejects_non_planar(tmp_path, capsys):
    doc = tmp_path / "cube.json"
    doc.write_text(THREE_D_DOC, encoding="utf-8")
    code, _, err = run(capsys, "plot", str(doc), "cube",
                       "--out", str(tmp_path / "cube.svg"))
    assert code == 2
    assert "planar" in err


def test_plot_separator_must_separate(tmp_path, capsys):
    code, _, err = run(capsys, "plot", "boxes-overlap", "left", "right",
                       "--separator", "diag", "--out",
                       str(tmp_path / "x.svg"))
    assert code == 1
    assert "does not separate" in err
