"""
Seeded property suites over random sections and functions.

Trial t of every suite draws its inputs from numpy.random.default_rng(seed + t), so reports
are reproducible and independent of how trials are scheduled.
"""

from dataclasses import dataclass, field, replace

import numpy as np
from joblib import Parallel, delayed

from . import algebroid
from .algebroid import BracketKind, SignExponent
from .calculus import check_calculus_identities, validate_nambu
from .errors import ExtractionFailure
from .exterior import sample_form
from .progress import trial_bar
from .report import VerificationReport, Violation
from .ring import sample_polynomial

DEFAULT_SUITES = (
    "leibniz-id",
    "leibniz-rule",
    "anchor-hom",
    "anchor-hom-derived",
    "derivation",
    "antisym-anchored",
    "variant-compare",
)
EXTRA_SUITES = ("extraction", "antisym-raw", "leibniz-id-signs", "calculus", "fundamental-identity")
ALL_SUITES = DEFAULT_SUITES + EXTRA_SUITES


@dataclass
class TrialOutcome:
    findings: list = field(default_factory=list)  # (check, inputs, defect) with a nonzero defect
    observations: list = field(default_factory=list)  # (check, inputs, value) worth reporting, not violations


@dataclass(frozen=True)
class Sampler:
    structure: object
    rng: object
    max_degree: int
    max_abs_coeff: int

    def section(self):
        s = self.structure
        return sample_form(self.rng, s.chart, s.order - 1, self.max_degree, self.max_abs_coeff)

    def function(self):
        return sample_polynomial(self.rng, self.structure.dimension, self.max_degree, self.max_abs_coeff)

    def show(self, f):
        return f.render(self.structure.chart.coordinate_names)


def _record(outcome, check, inputs, defect, show):
    if not defect.is_zero():
        outcome.findings.append((check, inputs, show(defect)))


def _trial_leibniz_identity(structure, variant, sampler):
    a, b, c = sampler.section(), sampler.section(), sampler.section()
    outcome = TrialOutcome()
    defect = algebroid.check_leibniz_identity(structure, variant, a, b, c)
    _record(outcome, "leibniz-identity", {"alpha": a.render(), "beta": b.render(), "gamma": c.render()}, defect, str)
    return outcome


def _trial_leibniz_rule(structure, variant, sampler):
    a, b, f = sampler.section(), sampler.section(), sampler.function()
    outcome = TrialOutcome()
    defect = algebroid.check_leibniz_rule(structure, variant, a, b, f)
    _record(outcome, "leibniz-rule", {"alpha": a.render(), "beta": b.render(), "f": sampler.show(f)}, defect, str)
    return outcome


def _homomorphism(derived):
    def trial(structure, variant, sampler):
        a, b = sampler.section(), sampler.section()
        inputs = {"alpha": a.render(), "beta": b.render()}
        outcome = TrialOutcome()
        try:
            defect = algebroid.check_anchor_homomorphism(structure, variant, a, b, derived=derived)
        except ExtractionFailure as exc:
            outcome.findings.append(("extraction-failure", inputs, f"ExtractionFailure: {exc}"))
            return outcome
        _record(outcome, "anchor-homomorphism", inputs, defect, str)
        return outcome

    return trial


_trial_anchor_hom = _homomorphism(derived=False)
_trial_anchor_hom_derived = _homomorphism(derived=True)


def _trial_derivation(structure, variant, sampler):
    a, f, g = sampler.section(), sampler.function(), sampler.function()
    inputs = {"alpha": a.render(), "f": sampler.show(f), "g": sampler.show(g)}
    outcome = TrialOutcome()
    try:
        defect = algebroid.check_derivation_property(structure, variant, a, f, g)
    except ExtractionFailure as exc:
        outcome.findings.append(("extraction-failure", inputs, f"ExtractionFailure: {exc}"))
        return outcome
    _record(outcome, "derivation", inputs, defect, sampler.show)
    return outcome


def _trial_extraction(structure, variant, sampler):
    a = sampler.section()
    inputs = {"alpha": a.render()}
    outcome = TrialOutcome()
    try:
        defect = algebroid.check_extraction_consistency(structure, variant, a)
    except ExtractionFailure as exc:
        outcome.findings.append(("extraction-failure", inputs, f"ExtractionFailure: {exc}"))
        return outcome
    _record(outcome, "extraction-consistency", inputs, defect, str)
    return outcome


def _antisymmetry(anchored):
    def trial(structure, variant, sampler):
        a, b = sampler.section(), sampler.section()
        defects = algebroid.check_antisymmetry_defects(structure, variant, a, b)
        outcome = TrialOutcome()
        inputs = {"alpha": a.render(), "beta": b.render()}
        if anchored:
            _record(outcome, "anchored-antisymmetry", inputs, defects.anchored_defect, str)
        else:
            _record(outcome, "bracket-antisymmetry", inputs, defects.bracket_defect, str)
        return outcome

    return trial


_trial_antisym_anchored = _antisymmetry(anchored=True)
_trial_antisym_raw = _antisymmetry(anchored=False)


def _trial_variant_compare(structure, variant, sampler):
    a, b = sampler.section(), sampler.section()
    difference = algebroid.compare_variants(structure, a, b, variant.sign_exponent)
    inputs = {"alpha": a.render(), "beta": b.render()}
    outcome = TrialOutcome()
    _record(outcome, "anchored-variant-difference", inputs, difference.anchored_difference, str)
    if not difference.raw_difference.is_zero():
        outcome.observations.append(("raw-variant-difference", inputs, difference.raw_difference.render()))
    return outcome


def _trial_calculus(structure, variant, sampler):
    inputs, defects = check_calculus_identities(structure.chart, sampler.rng, sampler.max_degree, sampler.max_abs_coeff)
    outcome = TrialOutcome()
    for name, defect in defects.items():
        _record(outcome, name, inputs, defect, str)
    return outcome


TRIALS = {
    "leibniz-id": _trial_leibniz_identity,
    "leibniz-rule": _trial_leibniz_rule,
    "anchor-hom": _trial_anchor_hom,
    "anchor-hom-derived": _trial_anchor_hom_derived,
    "derivation": _trial_derivation,
    "antisym-anchored": _trial_antisym_anchored,
    "antisym-raw": _trial_antisym_raw,
    "variant-compare": _trial_variant_compare,
    "extraction": _trial_extraction,
    "calculus": _trial_calculus,
}


def _run_one(trial_fn, structure, variant, seed, index, max_degree, max_abs_coeff):
    sampler = Sampler(structure, np.random.default_rng(seed + index), max_degree, max_abs_coeff)
    return trial_fn(structure, variant, sampler)


def _run_trials(trial_fn, structure, variant, trials, seed, max_degree, max_abs_coeff, jobs, desc, show_progress):
    if jobs > 1:
        # joblib returns results in submission order
        return Parallel(n_jobs=jobs)(
            delayed(_run_one)(trial_fn, structure, variant, seed, t, max_degree, max_abs_coeff) for t in range(trials)
        )
    return [
        _run_one(trial_fn, structure, variant, seed, t, max_degree, max_abs_coeff)
        for t in trial_bar(range(trials), desc, enabled=show_progress)
    ]


def _collect(outcomes):
    violations, observations = [], []
    for t, outcome in enumerate(outcomes):
        violations.extend(Violation(t, inputs, defect, check) for check, inputs, defect in outcome.findings)
        observations.extend((t, check, inputs, value) for check, inputs, value in outcome.observations)
    return violations, observations


def _observation_notes(observations, trials):
    if not observations:
        return ["raw variant difference is zero on every trial"]
    t, check, inputs, value = observations[0]
    witness = ", ".join(f"{k}={v}" for k, v in inputs.items())
    return [
        f"{check} nonzero on {len({o[0] for o in observations})}/{trials} trials",
        f"first {check} witness (trial {t}): {witness} -> {value}",
    ]


def _sign_conventions(structure, variant, trials, seed, max_degree, max_abs_coeff, jobs, show_progress):
    """Leibniz identity under both Ibanez sign conventions; passes when at least one holds"""
    violations, notes, passing = [], [], []
    for sign in SignExponent:
        candidate = replace(variant, kind=BracketKind.IBANEZ, sign_exponent=sign)
        outcomes = _run_trials(
            _trial_leibniz_identity, structure, candidate, trials, seed, max_degree, max_abs_coeff, jobs,
            f"leibniz-id[{sign.value}]", show_progress,
        )
        found, _ = _collect(outcomes)
        for v in found:
            v.check = f"leibniz-identity[{sign.value}]"
        notes.append(f"sign_exponent={sign.value}: {'passed' if not found else f'failed ({len(found)} violations)'}")
        if found:
            violations.extend(found)
        else:
            passing.append(sign.value)
    if passing:
        violations = []
        notes.append(f"passing convention(s): {', '.join(passing)}")
    else:
        notes.append("no sign convention satisfies the Leibniz identity on this structure")
    return violations, notes


def run_suite(structure, variant, suite, trials, seed, max_degree, max_abs_coeff=3, jobs=1, show_progress=False):
    """Run one named suite and return its VerificationReport; violations are data, never raised"""
    if suite not in ALL_SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(ALL_SUITES)}")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    if suite == "fundamental-identity":
        progress = (lambda it: trial_bar(it, suite, enabled=show_progress)) if show_progress else None
        return validate_nambu(structure, trials, seed, max_degree, max_abs_coeff, progress=progress, jobs=jobs)

    notes = []
    if suite == "leibniz-id-signs":
        violations, notes = _sign_conventions(
            structure, variant, trials, seed, max_degree, max_abs_coeff, jobs, show_progress
        )
        variant_label = "ibanez(dimension|order)"
    else:
        outcomes = _run_trials(
            TRIALS[suite], structure, variant, trials, seed, max_degree, max_abs_coeff, jobs, suite, show_progress
        )
        violations, observations = _collect(outcomes)
        if suite == "variant-compare":
            notes = _observation_notes(observations, trials)
        variant_label = variant.describe()
        if suite == "variant-compare":
            variant_label = f"ibanez({variant.sign_exponent.value})-vs-hagiwara"

    return VerificationReport(
        suite=suite,
        structure=structure.describe(),
        variant=variant_label,
        trials=trials,
        seed=seed,
        violations=violations,
        notes=notes,
    )
