import json

import pytest

from nlab.report import render_text, reports_to_json, summary_frame
from nlab.suites import ALL_SUITES, DEFAULT_SUITES, run_suite
from tests.conftest import HAGIWARA, IBANEZ, IBANEZ_ORDER, WrongSignVariant

REPORT_KEYS = {"suite", "structure", "variant", "trials", "seed", "passed", "violations", "notes"}


@pytest.mark.parametrize("suite", DEFAULT_SUITES)
@pytest.mark.parametrize("variant", [IBANEZ, HAGIWARA], ids=["ibanez", "hagiwara"])
def test_default_suites_pass_on_canonical(canonical_r3, suite, variant):
    report = run_suite(canonical_r3.structure(), variant, suite, trials=2, seed=42, max_degree=2)
    assert report.passed, report.violations[:1]
    assert set(report.to_dict()) == REPORT_KEYS
    assert report.trials == 2 and report.seed == 42


@pytest.mark.parametrize("suite", ["anchor-hom-derived", "extraction", "derivation", "antisym-anchored"])
@pytest.mark.parametrize("variant", [IBANEZ_ORDER, HAGIWARA], ids=["ibanez-order", "hagiwara"])
def test_suites_pass_below_top_order(nambu_x1_r4, suite, variant):
    report = run_suite(nambu_x1_r4.structure(), variant, suite, trials=2, seed=42, max_degree=2)
    assert report.passed, report.violations[:1]


@pytest.mark.parametrize("scene", ["poisson_r2", "poisson_r4"])
def test_poisson_anchor_homomorphism(request, scene):
    structure = request.getfixturevalue(scene).structure()
    for variant in (IBANEZ, HAGIWARA):
        assert run_suite(structure, variant, "anchor-hom-derived", trials=3, seed=42, max_degree=2).passed


def test_sign_conventions_record_the_passing_one(nambu_x1_r4):
    report = run_suite(nambu_x1_r4.structure(), IBANEZ, "leibniz-id-signs", trials=2, seed=42, max_degree=2)
    assert report.passed
    assert report.variant == "ibanez(dimension|order)"
    passing = [n for n in report.notes if n.startswith("passing convention(s)")]
    assert passing and "order" in passing[0]


def test_raw_skewness(poisson_r2, poisson_r4):
    assert run_suite(poisson_r2.structure(), IBANEZ, "antisym-raw", trials=3, seed=1, max_degree=2).passed
    assert run_suite(poisson_r4.structure(), HAGIWARA, "antisym-raw", trials=3, seed=1, max_degree=2).passed


def test_variant_compare_notes(canonical_r3, poisson_r4):
    canonical = run_suite(canonical_r3.structure(), IBANEZ, "variant-compare", trials=2, seed=42, max_degree=2)
    assert canonical.passed
    assert canonical.variant == "ibanez(dimension)-vs-hagiwara"
    assert canonical.notes == ["raw variant difference is zero on every trial"]
    rank_two = run_suite(poisson_r4.structure(), IBANEZ, "variant-compare", trials=3, seed=42, max_degree=2)
    assert rank_two.passed
    assert rank_two.notes


def test_negative_controls(canonical_r3, symplectic_r4, bad_r6):
    wrong = run_suite(canonical_r3.structure(), WrongSignVariant(), "anchor-hom-derived", trials=3, seed=42, max_degree=2)
    assert not wrong.passed
    assert wrong.violations[0].check in ("anchor-homomorphism", "extraction-failure")
    assert not run_suite(symplectic_r4.structure(), IBANEZ, "anchor-hom", trials=3, seed=42, max_degree=1).passed
    assert not run_suite(bad_r6.structure(), IBANEZ, "leibniz-id", trials=4, seed=42, max_degree=1).passed


def test_violation_inputs_are_renderings(bad_r6):
    report = run_suite(bad_r6.structure(), IBANEZ, "anchor-hom", trials=2, seed=42, max_degree=1)
    assert not report.passed
    violation = report.violations[0]
    assert set(violation.inputs) == {"alpha", "beta"}
    assert "*dx" in violation.inputs["alpha"]
    assert "*e" in violation.defect


@pytest.mark.parametrize("suite", ["calculus", "fundamental-identity"])
def test_extra_suites(canonical_r3, suite):
    report = run_suite(canonical_r3.structure(), IBANEZ, suite, trials=3, seed=42, max_degree=2)
    assert report.passed


def test_reports_are_deterministic(canonical_r3):
    structure = canonical_r3.structure()
    first = [run_suite(structure, IBANEZ, s, trials=2, seed=9, max_degree=2) for s in ("leibniz-rule", "anchor-hom")]
    second = [run_suite(structure, IBANEZ, s, trials=2, seed=9, max_degree=2) for s in ("leibniz-rule", "anchor-hom")]
    assert reports_to_json(first) == reports_to_json(second)


def test_parallel_trials_match_serial(bad_r6):
    structure = bad_r6.structure()
    serial = run_suite(structure, IBANEZ, "anchor-hom", trials=3, seed=42, max_degree=1, jobs=1)
    parallel = run_suite(structure, IBANEZ, "anchor-hom", trials=3, seed=42, max_degree=1, jobs=2)
    assert reports_to_json([serial]) == reports_to_json([parallel])


def test_run_suite_rejects_bad_arguments(canonical_r3):
    with pytest.raises(ValueError):
        run_suite(canonical_r3.structure(), IBANEZ, "no-such-suite", trials=1, seed=0, max_degree=1)
    with pytest.raises(ValueError):
        run_suite(canonical_r3.structure(), IBANEZ, "leibniz-id", trials=0, seed=0, max_degree=1)
    assert set(DEFAULT_SUITES) < set(ALL_SUITES)


def test_text_and_json_rendering(canonical_r3, bad_r6):
    passing = run_suite(canonical_r3.structure(), IBANEZ, "leibniz-rule", trials=1, seed=42, max_degree=1)
    failing = run_suite(bad_r6.structure(), IBANEZ, "anchor-hom", trials=2, seed=42, max_degree=1)
    frame = summary_frame([passing, failing])
    assert list(frame["passed"]) == ["yes", "NO"]
    text = render_text([passing, failing])
    assert "[anchor-hom] first witness" in text
    payload = json.loads(reports_to_json([passing, failing]))
    assert [r["passed"] for r in payload] == [True, False]
    assert render_text([]) == "no suites run"
