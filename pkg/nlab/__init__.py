"""
nlab: exact exterior calculus over polynomial charts, Nambu-Poisson structures and the
Leibniz algebroids they induce.
"""

from .algebroid import BracketKind, BracketVariant, SignExponent, anchor_pi, bracket, derive_anchor
from .calculus import NambuStructure, nambu_bracket, validate_nambu
from .dsl import Scene, parse_expression, parse_scene, render
from .errors import NlabError
from .exterior import Chart, DifferentialForm, MultivectorField
from .ring import Polynomial
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [
    "BracketKind",
    "BracketVariant",
    "Chart",
    "DifferentialForm",
    "MultivectorField",
    "NambuStructure",
    "NlabError",
    "Polynomial",
    "Scene",
    "SignExponent",
    "anchor_pi",
    "bracket",
    "derive_anchor",
    "nambu_bracket",
    "parse_expression",
    "parse_scene",
    "render",
    "run_suite",
    "validate_nambu",
]
