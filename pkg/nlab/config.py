"""
Run configuration: command-line values layered over environment defaults.
"""

import os
from dataclasses import dataclass, field

from .algebroid import BracketKind, BracketVariant, SignExponent
from .suites import ALL_SUITES, DEFAULT_SUITES

DEFAULT_TRIALS = 100
DEFAULT_SEED = 42
DEFAULT_MAX_DEGREE = 2
DEFAULT_MAX_ABS_COEFF = 3

SIGN_ALIASES = {"dim": SignExponent.DIMENSION, "dimension": SignExponent.DIMENSION, "order": SignExponent.ORDER}


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def _env_flag(name):
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


@dataclass
class RunConfig:
    command: str
    scene_path: str
    structure: str = None
    variant: BracketKind = BracketKind.IBANEZ
    sign_exponent: SignExponent = SignExponent.DIMENSION
    suites: list = field(default_factory=lambda: list(DEFAULT_SUITES))
    alpha: str = None
    beta: str = None
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    max_degree: int = DEFAULT_MAX_DEGREE
    max_abs_coeff: int = DEFAULT_MAX_ABS_COEFF
    output_format: str = "text"
    jobs: int = 1
    quiet: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("--trials must be >= 1")
        if self.max_degree < 0:
            raise ValueError("--max-degree must be >= 0")
        if self.max_abs_coeff < 1:
            raise ValueError("--max-abs-coeff must be >= 1")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown format {self.output_format!r}")
        unknown = [s for s in self.suites if s not in ALL_SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(ALL_SUITES)}")
        if not self.suites:
            raise ValueError("no suites selected")

    @property
    def bracket_variant(self):
        return BracketVariant(self.variant, self.sign_exponent)

    @classmethod
    def from_args(cls, args):
        """Build from parsed CLI arguments; unset options fall back to NLAB_* variables, then defaults"""
        suites = [s.strip() for s in args.suite.split(",") if s.strip()] if args.suite else list(DEFAULT_SUITES)
        return cls(
            command=args.command,
            scene_path=args.scene,
            structure=args.structure,
            variant=BracketKind(args.variant),
            sign_exponent=SIGN_ALIASES[args.sign],
            suites=suites,
            alpha=args.alpha,
            beta=args.beta,
            trials=args.trials if args.trials is not None else _env_int("NLAB_TRIALS", DEFAULT_TRIALS),
            seed=args.seed if args.seed is not None else _env_int("NLAB_SEED", DEFAULT_SEED),
            max_degree=args.max_degree,
            max_abs_coeff=args.max_abs_coeff,
            output_format=args.format,
            jobs=args.jobs if args.jobs is not None else _env_int("NLAB_JOBS", 1),
            quiet=args.quiet or _env_flag("NLAB_QUIET"),
        )
