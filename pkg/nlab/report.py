"""
Verification reports: machine-readable outcome of a property suite.
"""

import json
from dataclasses import dataclass, field

import pandas as pd


@dataclass
class Violation:
    trial: int  # -1 for the structured (non-random) family
    inputs: dict
    defect: str
    check: str = ""

    def to_dict(self):
        return {"trial": self.trial, "check": self.check, "inputs": self.inputs, "defect": self.defect}


@dataclass
class VerificationReport:
    suite: str
    structure: str
    variant: str
    trials: int
    seed: int
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            "suite": self.suite,
            "structure": self.structure,
            "variant": self.variant,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "violations": [v.to_dict() for v in self.violations],
            "notes": list(self.notes),
        }


def reports_to_json(reports):
    """Deterministic JSON for a list of reports"""
    return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False)


def summary_frame(reports):
    return pd.DataFrame(
        [
            {
                "suite": r.suite,
                "variant": r.variant,
                "trials": r.trials,
                "seed": r.seed,
                "violations": len(r.violations),
                "passed": "yes" if r.passed else "NO",
            }
            for r in reports
        ],
        columns=["suite", "variant", "trials", "seed", "violations", "passed"],
    )


def render_text(reports):
    """Summary table followed by the first witness and the notes of each suite"""
    if not reports:
        return "no suites run"
    lines = [f"structure {reports[0].structure}", "", summary_frame(reports).to_string(index=False)]
    for report in reports:
        if report.violations:
            first = report.violations[0]
            lines.append("")
            lines.append(f"[{report.suite}] first witness (trial {first.trial}{', ' + first.check if first.check else ''}):")
            for name, value in first.inputs.items():
                lines.append(f"  {name} = {value}")
            lines.append(f"  defect = {first.defect}")
        for note in report.notes:
            lines.append(f"[{report.suite}] {note}")
    return "\n".join(lines)
