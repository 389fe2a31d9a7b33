"""
Scene format and expression syntax.

    scene      := stmt*                      (one statement per line, '#' comments)
    stmt       := "dim" INT | "coords" IDENT+ | "structure" IDENT "order" INT "=" mvexpr
                | "section" IDENT "=" formexpr | "func" IDENT "=" polyexpr
    formexpr   := term (("+" | "-") term)*
    term       := "(" polyexpr ")" ["*" wedge] | wedge
    wedge      := BASIS ("^" BASIS)*         BASIS is dx<k> in forms, e<k> in multivectors (1-based)
    polyexpr   := sum of products of powers over coordinates, earlier funcs and literals a or a/b

Coefficients are parenthesised, so '^' inside them is a power and outside them a wedge.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .algebroid import ExtractedAnchor
from .calculus import NambuStructure
from .errors import DegreeMismatch, ParseError, SceneError
from .exterior import AlternatingTensor, Chart, DifferentialForm, MultivectorField
from .ring import Polynomial

TOKEN_SPEC = [
    ("INT", r"\d+"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"[-+*/^()=]"),
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+"),
    ("COMMENT", r"#[^\n]*"),
    ("MISMATCH", r"."),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))
IDENTIFIER_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
BASIS_PATTERNS = {
    DifferentialForm: re.compile(r"^dx(\d+)$"),
    MultivectorField: re.compile(r"^e(\d+)$"),
}
KINDS = {"form": DifferentialForm, "multivector": MultivectorField}
STATEMENTS = ("dim", "coords", "structure", "section", "func")


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, line_start = 1, 0
    for match in TOKEN_RE.finditer(text):
        kind, value = match.lastgroup, match.group()
        column = match.start() - line_start + 1
        if kind == "NEWLINE":
            tokens.append(Token(kind, value, line, column))
            line, line_start = line + 1, match.end()
        elif kind in ("SKIP", "COMMENT"):
            continue
        elif kind == "MISMATCH":
            raise ParseError("unexpected character", line, column, value)
        else:
            tokens.append(Token(kind, value, line, column))
    tokens.append(Token("END", "", line, len(text) - line_start + 1))
    return tokens


@dataclass
class Scene:
    chart: Chart
    structures: dict = field(default_factory=dict)
    sections: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)

    def structure(self, name=None):
        if not self.structures:
            raise SceneError("scene declares no structure")
        if name is None:
            return next(iter(self.structures.values()))
        if name not in self.structures:
            raise SceneError(f"unknown structure {name!r}; scene has {', '.join(self.structures)}")
        return self.structures[name]

    def section(self, name):
        if name not in self.sections:
            known = ", ".join(self.sections) or "none"
            raise SceneError(f"unknown section {name!r}; scene has {known}")
        return self.sections[name]


class _Parser:
    def __init__(self, tokens, chart=None, functions=None):
        self.tokens = tokens
        self.position = 0
        self.chart = chart
        self.functions = functions if functions is not None else {}

    # -- token plumbing ----------------------------------------------------

    def peek(self):
        return self.tokens[self.position]

    def advance(self):
        token = self.tokens[self.position]
        if token.kind != "END":
            self.position += 1
        return token

    def error(self, message, token=None):
        token = token or self.peek()
        return ParseError(message, token.line, token.column, token.text)

    def at(self, text):
        token = self.peek()
        return token.kind in ("OP", "IDENT") and token.text == text

    def expect(self, text, production):
        if not self.at(text):
            raise self.error(f"expected {production}")
        return self.advance()

    def expect_kind(self, kind, production):
        if self.peek().kind != kind:
            raise self.error(f"expected {production}")
        return self.advance()

    def at_end_of_statement(self):
        return self.peek().kind in ("NEWLINE", "END")

    # -- polynomials -------------------------------------------------------

    def parse_poly(self):
        value = self.parse_product()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.parse_product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_product(self):
        value = self.parse_unary()
        while self.at("*"):
            self.advance()
            value = value * self.parse_unary()
        return value

    def parse_unary(self):
        if self.at("-"):
            self.advance()
            return -self.parse_unary()
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.at("^"):
            self.advance()
            exponent = self.expect_kind("INT", "integer exponent after '^'")
            return base ** int(exponent.text)
        return base

    def parse_atom(self):
        n = self.chart.dimension
        token = self.peek()
        if token.kind == "INT":
            self.advance()
            value = Fraction(int(token.text))
            if self.at("/"):
                self.advance()
                denominator = self.expect_kind("INT", "denominator of a rational literal a/b")
                if int(denominator.text) == 0:
                    raise self.error("zero denominator in rational literal", denominator)
                value = value / int(denominator.text)
            return Polynomial.constant(n, value)
        if token.kind == "IDENT":
            self.advance()
            names = self.chart.coordinate_names
            if token.text in names:
                return Polynomial.variable(n, names.index(token.text))
            if token.text in self.functions:
                return self.functions[token.text]
            raise self.error("expected coordinate or function name", token)
        if self.at("("):
            self.advance()
            value = self.parse_poly()
            self.expect(")", "')' closing the parenthesised expression")
            return value
        raise self.error("expected number, name or '(' in polynomial expression")

    # -- forms and multivectors -------------------------------------------

    def parse_basis(self, cls):
        token = self.peek()
        other = DifferentialForm if cls is MultivectorField else MultivectorField
        expected = "form basis dx<k>" if cls is DifferentialForm else "multivector basis e<k>"
        if token.kind != "IDENT":
            raise self.error(f"expected {expected}")
        match = BASIS_PATTERNS[cls].match(token.text)
        if not match:
            if BASIS_PATTERNS[other].match(token.text):
                raise self.error(f"expected {expected}, found a {'form' if other is DifferentialForm else 'multivector'} basis element")
            raise self.error(f"expected {expected}")
        index = int(match.group(1))
        if not 1 <= index <= self.chart.dimension:
            raise self.error(f"basis index must be between 1 and {self.chart.dimension}")
        self.advance()
        return index - 1

    def parse_wedge(self, cls):
        indices = [self.parse_basis(cls)]
        while self.at("^"):
            self.advance()
            indices.append(self.parse_basis(cls))
        return tuple(indices)

    def parse_tensor(self, cls):
        start = self.peek()
        terms = []
        sign = 1
        while True:
            token = self.peek()
            if self.at("("):
                self.advance()
                coeff = self.parse_poly()
                self.expect(")", "')' closing the coefficient")
                indices = ()
                if self.at("*"):
                    self.advance()
                    indices = self.parse_wedge(cls)
            else:
                coeff = Polynomial.constant(self.chart.dimension, 1)
                indices = self.parse_wedge(cls)
            if terms and len(indices) != len(terms[0][0]):
                raise self.error(f"term of degree {len(indices)} in a sum of degree {len(terms[0][0])}", token)
            terms.append((indices, coeff if sign > 0 else -coeff))
            if self.at("+") or self.at("-"):
                sign = 1 if self.advance().text == "+" else -1
                continue
            break
        if not terms:
            raise self.error("expected a term", start)
        return cls(self.chart, len(terms[0][0]), terms)

    # -- scenes ------------------------------------------------------------

    def parse_scene(self):
        dimension = None
        structures, sections, functions = {}, {}, self.functions
        section_lines = {}

        def chart_for(token):
            if self.chart is None:
                if dimension is None:
                    raise self.error("expected 'dim' before this statement", token)
                self.chart = Chart.standard(dimension)
            return self.chart

        while True:
            token = self.peek()
            if token.kind == "END":
                break
            if token.kind == "NEWLINE":
                self.advance()
                continue
            if token.kind != "IDENT" or token.text not in STATEMENTS:
                raise self.error("expected statement (dim, coords, structure, section or func)")
            keyword = self.advance().text

            if keyword == "dim":
                if dimension is not None:
                    raise self.error("duplicate 'dim' statement", token)
                value = self.expect_kind("INT", "dimension after 'dim'")
                dimension = int(value.text)
                if dimension < 1:
                    raise self.error("dimension must be at least 1", value)
            elif keyword == "coords":
                if dimension is None:
                    raise self.error("expected 'dim' before 'coords'", token)
                if self.chart is not None:
                    raise self.error("coordinates already declared", token)
                names = []
                while self.peek().kind == "IDENT":
                    name_token = self.advance()
                    if name_token.text in names:
                        raise self.error(f"duplicate coordinate {name_token.text!r}", name_token)
                    names.append(name_token.text)
                if len(names) != dimension:
                    raise self.error(f"expected {dimension} coordinate names, found {len(names)}")
                self.chart = Chart(tuple(names))
            elif keyword == "structure":
                chart = chart_for(token)
                name = self.expect_kind("IDENT", "structure name")
                if name.text in structures:
                    raise self.error(f"duplicate structure {name.text!r}", name)
                self.expect("order", "'order'")
                order_token = self.expect_kind("INT", "structure order")
                order = int(order_token.text)
                if not 2 <= order <= chart.dimension:
                    raise self.error(f"order must be between 2 and {chart.dimension}", order_token)
                self.expect("=", "'=' before the structure tensor")
                lam = self.parse_tensor(MultivectorField)
                if lam.degree != order:
                    raise DegreeMismatch(f"line {token.line}: structure {name.text} of order {order} given a degree-{lam.degree} tensor")
                structures[name.text] = NambuStructure(chart, order, lam, label=name.text)
            elif keyword == "section":
                chart_for(token)
                name = self.expect_kind("IDENT", "section name")
                if name.text in sections:
                    raise self.error(f"duplicate section {name.text!r}", name)
                self.expect("=", "'=' before the section form")
                sections[name.text] = self.parse_tensor(DifferentialForm)
                section_lines[name.text] = token.line
            else:
                chart = chart_for(token)
                name = self.expect_kind("IDENT", "function name")
                if name.text in functions or name.text in chart.coordinate_names:
                    raise self.error(f"name {name.text!r} is already a function or coordinate", name)
                self.expect("=", "'=' before the function expression")
                functions[name.text] = self.parse_poly()

            if not self.at_end_of_statement():
                raise self.error("expected end of line")

        if self.chart is None:
            if dimension is None:
                raise self.error("scene does not declare 'dim'")
            self.chart = Chart.standard(dimension)
        orders = {s.order for s in structures.values()}
        for name, form in sections.items():
            if orders and form.degree + 1 not in orders:
                raise DegreeMismatch(
                    f"line {section_lines[name]}: section {name} has degree {form.degree}, "
                    f"structures need degree {' or '.join(str(p - 1) for p in sorted(orders))}"
                )
        return Scene(self.chart, structures, sections, dict(functions))


def parse_scene(text):
    return _Parser(tokenize(text)).parse_scene()


def parse_expression(text, chart, kind, functions=None):
    """Parse a form, multivector or function expression over ``chart``"""
    parser = _Parser(tokenize(text), chart=chart, functions=dict(functions or {}))
    if kind == "function":
        value = parser.parse_poly()
    elif kind in KINDS:
        value = parser.parse_tensor(KINDS[kind])
    else:
        raise ValueError(f"unknown expression kind {kind!r}")
    while parser.peek().kind == "NEWLINE":
        parser.advance()
    if parser.peek().kind != "END":
        raise parser.error("expected end of expression")
    return value


def render(value, chart=None):
    """Canonical text that parses back to an equal value"""
    if isinstance(value, AlternatingTensor):
        return value.render()
    if isinstance(value, Polynomial):
        return value.render(chart.coordinate_names if chart is not None else None)
    if isinstance(value, NambuStructure):
        return value.lam.render()
    if isinstance(value, ExtractedAnchor):
        return value.as_vector_field().render()
    raise TypeError(f"cannot render {type(value).__name__}")
