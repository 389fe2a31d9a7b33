"""
nlab command line

    nlab validate|bracket|verify|anchor <scene> [options]

Exit codes: 0 everything passed, 1 a violation was found, 2 usage, parse or input error.
Results go to stdout; progress lines and bars go to stderr.
"""

import argparse
import json
import sys

from .algebroid import anchor_pi, bracket, derive_anchor
from .calculus import validate_nambu
from .config import RunConfig
from .dsl import BASIS_PATTERNS, IDENTIFIER_RE, parse_expression, parse_scene
from .errors import ExtractionFailure, NlabError, SceneError
from .exterior import DifferentialForm
from .progress import print_progress, trial_bar
from .report import render_text, reports_to_json
from .suites import ALL_SUITES, run_suite

COMMANDS = ("validate", "bracket", "verify", "anchor")


def build_parser():
    parser = argparse.ArgumentParser(prog="nlab", description="Exact checks for Nambu-Poisson structures and their Leibniz algebroids")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("scene", help="Scene file")
    parser.add_argument("--structure", default=None, help="Structure name (default: first declared)")
    parser.add_argument("--variant", choices=["ibanez", "hagiwara"], default="ibanez", help="Bracket formula")
    parser.add_argument("--sign", choices=["dim", "dimension", "order"], default="dim", help="Ibanez sign exponent")
    parser.add_argument("--suite", default=None, help=f"Comma-separated suites from: {', '.join(ALL_SUITES)}")
    parser.add_argument("--alpha", default=None, help="Section name or form expression")
    parser.add_argument("--beta", default=None, help="Section name or form expression")
    parser.add_argument("--trials", type=int, default=None, help="Trials per suite (default: NLAB_TRIALS or 100)")
    parser.add_argument("--seed", type=int, default=None, help="Base seed (default: NLAB_SEED or 42)")
    parser.add_argument("--max-degree", type=int, default=2, help="Coefficient degree bound for sampling")
    parser.add_argument("--max-abs-coeff", type=int, default=3, help="Integer coefficient bound for sampling")
    parser.add_argument("--format", choices=["text", "json"], default="text", help="Output format")
    parser.add_argument("--jobs", type=int, default=None, help="Parallel trial workers (default: NLAB_JOBS or 1)")
    parser.add_argument("--quiet", action="store_true", help="No progress output on stderr")
    return parser


def load_scene(path):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SceneError(f"cannot read scene {path}: {exc.strerror or exc}") from None
    return parse_scene(text)


def resolve_section(scene, text, option):
    """A declared section name, or an inline form expression over the scene chart"""
    if text is None:
        raise SceneError(f"this command needs {option}")
    bare_name = IDENTIFIER_RE.match(text) and not BASIS_PATTERNS[DifferentialForm].match(text)
    if text in scene.sections or bare_name:
        return scene.section(text)
    return parse_expression(text, scene.chart, "form", scene.functions)


def anchor_comparison(structure, variant, alpha):
    """derive_anchor(alpha) next to Pi(alpha); an ExtractionFailure counts as disagreement"""
    pi = anchor_pi(structure, alpha)
    result = {"alpha": alpha.render(), "derived": None, "pi": pi.render(), "agree": False, "error": None}
    try:
        derived = derive_anchor(structure, variant, alpha).as_vector_field()
    except ExtractionFailure as exc:
        result["error"] = f"ExtractionFailure: {exc}"
        return result
    result["derived"] = derived.render()
    result["agree"] = derived == pi
    return result


def _log(config, message, emoji="📊"):
    if not config.quiet:
        print_progress(message, emoji)


def _emit_reports(config, reports):
    print(reports_to_json(reports) if config.output_format == "json" else render_text(reports))


def cmd_validate(config, scene):
    structure = scene.structure(config.structure)
    _log(config, f"Validating {structure.describe()} ({config.trials} trials, seed {config.seed})", "🔍")
    progress = None if config.quiet else (lambda it: trial_bar(it, "fundamental-identity"))
    report = validate_nambu(
        structure, config.trials, config.seed, config.max_degree, config.max_abs_coeff, progress=progress, jobs=config.jobs
    )
    _emit_reports(config, [report])
    _log(config, "passed" if report.passed else f"{len(report.violations)} violation(s)", "✅" if report.passed else "❌")
    return 0 if report.passed else 1


def cmd_bracket(config, scene):
    structure = scene.structure(config.structure)
    variant = config.bracket_variant
    alpha = resolve_section(scene, config.alpha, "--alpha")
    beta = resolve_section(scene, config.beta, "--beta")
    result = bracket(structure, variant, alpha, beta)
    if config.output_format == "json":
        print(
            json.dumps(
                {
                    "success": True,
                    "structure": structure.describe(),
                    "variant": variant.describe(),
                    "alpha": alpha.render(),
                    "beta": beta.render(),
                    "bracket": result.render(),
                },
                indent=2,
                ensure_ascii=False,
            )
        )
    else:
        print(result.render())
    return 0


def cmd_verify(config, scene):
    structure = scene.structure(config.structure)
    variant = config.bracket_variant
    reports = []
    for suite in config.suites:
        _log(config, f"Running {suite} on {structure.describe()} [{variant.describe()}]", "🧪")
        reports.append(
            run_suite(
                structure,
                variant,
                suite,
                config.trials,
                config.seed,
                config.max_degree,
                config.max_abs_coeff,
                jobs=config.jobs,
                show_progress=not config.quiet,
            )
        )
    _emit_reports(config, reports)
    failed = [r.suite for r in reports if not r.passed]
    _log(config, f"failed: {', '.join(failed)}" if failed else "all suites passed", "❌" if failed else "✅")
    return 1 if failed else 0


def cmd_anchor(config, scene):
    structure = scene.structure(config.structure)
    alpha = resolve_section(scene, config.alpha, "--alpha")
    result = anchor_comparison(structure, config.bracket_variant, alpha)
    if config.output_format == "json":
        print(json.dumps({"success": True, **result}, indent=2, ensure_ascii=False))
    else:
        print(f"derived: {result['derived'] if result['derived'] is not None else result['error']}")
        print(f"pi:      {result['pi']}")
        print(f"agree:   {'true' if result['agree'] else 'false'}")
    return 0 if result["agree"] else 1


HANDLERS = {
    "validate": cmd_validate,
    "bracket": cmd_bracket,
    "verify": cmd_verify,
    "anchor": cmd_anchor,
}


def _fail(message, output_format):
    if output_format == "json":
        print(json.dumps({"success": False, "error": message}, indent=2))
    else:
        print(f"error: {message}", file=sys.stderr)
    return 2


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        scene = load_scene(config.scene_path)
        return HANDLERS[config.command](config, scene)
    except (NlabError, ValueError) as exc:
        return _fail(str(exc), args.format)
