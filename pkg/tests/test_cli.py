import json

import pytest

from nlab.algebroid import bracket
from nlab.cli import anchor_comparison, main
from nlab.dsl import parse_expression, render
from nlab.suites import run_suite
from tests.conftest import IBANEZ, NonLeibnizVariant, load_scene, scene_path

CANONICAL = scene_path("canonical_r3")
BAD = scene_path("bad_r6")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_canonical(capsys):
    code, out, _ = run(capsys, "validate", CANONICAL, "--trials", "3", "--quiet")
    assert code == 0
    assert "fundamental-identity" in out


def test_validate_bad_structure_prints_witness(capsys):
    code, out, _ = run(capsys, "validate", BAD, "--trials", "1", "--max-degree", "1", "--quiet", "--format", "json")
    assert code == 1
    report = json.loads(out)[0]
    assert report["passed"] is False
    assert report["violations"][0]["inputs"]["fs"]


def test_missing_scene_file(capsys):
    code, _, err = run(capsys, "validate", "no/such/scene.nlab", "--quiet")
    assert code == 2
    assert err.startswith("error: cannot read scene")


def test_json_errors_follow_the_failure_envelope(capsys):
    code, out, _ = run(capsys, "validate", "no/such/scene.nlab", "--quiet", "--format", "json")
    assert code == 2
    assert json.loads(out)["success"] is False


@pytest.mark.parametrize("variant", ["ibanez", "hagiwara"])
def test_bracket_example(capsys, variant):
    code, out, _ = run(capsys, "bracket", CANONICAL, "--alpha", "a", "--beta", "b", "--variant", variant, "--quiet")
    assert code == 0
    assert out.strip() == "(-1)*dx2^dx3"


def test_bracket_accepts_inline_expressions(capsys):
    code, out, _ = run(capsys, "bracket", CANONICAL, "--alpha", "(x)*dx2^dx3", "--beta", "dx2^dx3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["bracket"] == "(-1)*dx2^dx3"
    assert payload["variant"] == "ibanez(dimension)"


@pytest.mark.parametrize(
    "argv",
    [
        ["--alpha", "nope", "--beta", "b"],
        ["--alpha", "a"],
        ["--alpha", "(x)*dx1", "--beta", "b"],
        ["--alpha", "(x)*dx1^^dx2", "--beta", "b"],
    ],
)
def test_bracket_input_errors(capsys, argv):
    code, _, _ = run(capsys, "bracket", CANONICAL, "--quiet", *argv)
    assert code == 2


def test_verify_all_default_suites(capsys):
    code, out, _ = run(capsys, "verify", CANONICAL, "--trials", "2", "--quiet", "--format", "json")
    assert code == 0
    reports = json.loads(out)
    assert [r["suite"] for r in reports] == [
        "leibniz-id",
        "leibniz-rule",
        "anchor-hom",
        "anchor-hom-derived",
        "derivation",
        "antisym-anchored",
        "variant-compare",
    ]
    for report in reports:
        assert {"suite", "structure", "variant", "trials", "seed", "passed", "violations"} <= set(report)
        assert report["passed"] is True
        assert report["seed"] == 42


def test_verify_is_byte_identical(capsys):
    argv = ["verify", CANONICAL, "--suite", "leibniz-rule,anchor-hom-derived", "--trials", "2", "--seed", "7", "--quiet", "--format", "json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


def test_verify_bad_structure_fails(capsys):
    code, out, _ = run(capsys, "verify", BAD, "--suite", "leibniz-id", "--trials", "4", "--max-degree", "1", "--quiet")
    assert code == 1
    assert "first witness" in out


def test_verify_text_mode(capsys):
    code, out, err = run(capsys, "verify", CANONICAL, "--suite", "leibniz-rule", "--trials", "1")
    assert code == 0
    assert "leibniz-rule" in out
    assert "Running leibniz-rule" in err


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("NLAB_SEED", "1234")
    code, out, _ = run(capsys, "verify", CANONICAL, "--suite", "leibniz-rule", "--trials", "1", "--quiet", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["seed"] == 1234
    code, out, _ = run(
        capsys, "verify", CANONICAL, "--suite", "leibniz-rule", "--trials", "1", "--seed", "5", "--quiet", "--format", "json"
    )
    assert json.loads(out)[0]["seed"] == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["--trials", "0"],
        ["--suite", "leibniz-id,bogus"],
        ["--structure", "Missing"],
        ["--max-abs-coeff", "0"],
    ],
)
def test_verify_config_errors(capsys, argv):
    code, _, _ = run(capsys, "verify", CANONICAL, "--quiet", *argv)
    assert code == 2


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate", CANONICAL])
    assert info.value.code == 2


def test_anchor_agrees_on_canonical(capsys):
    code, out, _ = run(capsys, "anchor", CANONICAL, "--alpha", "a", "--quiet")
    assert code == 0
    assert out.splitlines() == ["derived: (x)*e1", "pi:      (x)*e1", "agree:   true"]


def test_anchor_of_zero_section(capsys):
    code, out, _ = run(capsys, "anchor", CANONICAL, "--alpha", "zero", "--quiet", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["derived"] == payload["pi"] == "(0)*e1"
    assert payload["agree"] is True


def test_anchor_comparison_reports_extraction_failure():
    structure = load_scene("canonical_r3").structure()
    section = load_scene("canonical_r3").section("c")
    assert anchor_comparison(structure, IBANEZ, section)["agree"] is True
    result = anchor_comparison(structure, NonLeibnizVariant(), section)
    assert result["agree"] is False
    assert result["derived"] is None
    assert result["error"].startswith("ExtractionFailure")
    assert result["pi"] == "(1)*e3"


def test_violation_witness_replays_through_bracket(capsys, bad_r6):
    structure = bad_r6.structure()
    report = run_suite(structure, IBANEZ, "leibniz-id", trials=4, seed=42, max_degree=1)
    assert not report.passed
    inputs = report.violations[0].inputs
    sections = {}
    for name in ("alpha", "beta", "gamma"):
        sections[name] = parse_expression(inputs[name], bad_r6.chart, "form")
        assert render(sections[name]) == inputs[name]
    code, out, _ = run(capsys, "bracket", BAD, "--alpha", inputs["alpha"], "--beta", inputs["beta"], "--quiet")
    assert code == 0
    assert out.strip() == render(bracket(structure, IBANEZ, sections["alpha"], sections["beta"]))
