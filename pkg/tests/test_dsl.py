from fractions import Fraction

import numpy as np
import pytest

from nlab.algebroid import anchor_pi, derive_anchor
from nlab.dsl import parse_expression, parse_scene, render, tokenize
from nlab.errors import DegreeMismatch, ParseError, SceneError
from nlab.exterior import Chart, DifferentialForm, MultivectorField, sample_form, sample_multivector
from nlab.ring import sample_polynomial
from tests.conftest import IBANEZ

CANONICAL = "dim 3\ncoords x y z\nstructure L order 3 = (1)*e1^e2^e3\n"
R2 = Chart.standard(2)
R3 = Chart.standard(3)


def test_parse_canonical_scene():
    scene = parse_scene(CANONICAL + "section a = (x)*dx2^dx3\n")
    structure = scene.structure()
    assert scene.chart.coordinate_names == ("x", "y", "z")
    assert structure.order == 3
    assert structure.lam == MultivectorField.basis(scene.chart, (0, 1, 2))
    assert scene.structure("L") is structure
    assert scene.section("a") == DifferentialForm.basis(scene.chart, (1, 2), scene.chart.coordinate(0))


def test_comments_blank_lines_and_default_coordinates():
    scene = parse_scene("# header\n\ndim 4   # trailing\n\nstructure N order 3 = (x1)*e1^e2^e3\n")
    assert scene.chart.coordinate_names == ("x1", "x2", "x3", "x4")
    assert scene.sections == {}


def test_functions_are_usable_in_later_definitions():
    scene = parse_scene(CANONICAL + "func f = x^2 + 1/2*y\nfunc g = f*z\nsection s = (g)*dx1^dx2 - (f)*dx2^dx3\n")
    x, y, z = (scene.chart.coordinate(i) for i in range(3))
    f = x ** 2 + Fraction(1, 2) * y
    assert scene.functions["g"] == f * z
    assert scene.section("s").component((0, 1)) == f * z
    assert scene.section("s").component((1, 2)) == -f


def test_duplicate_coordinate():
    with pytest.raises(ParseError) as info:
        parse_scene("dim 3\ncoords x x z")
    assert "duplicate coordinate" in info.value.message
    assert (info.value.line, info.value.column, info.value.token) == (2, 10, "x")


@pytest.mark.parametrize(
    "text, line",
    [
        ("dim 3\ncoords x y", 2),
        ("coords x y z", 1),
        ("dim 3\ndim 3", 2),
        ("dim 3\nstructure L order 3 = (1)*e1^^e2", 2),
        ("dim 3\nstructure L order 4 = (1)*e1^e2^e3", 2),
        ("dim 3\nstructure L order 3 = (1)*e1^e2^e3\nstructure L order 3 = (1)*e1^e2^e3", 3),
        ("dim 3\nsection s = (1)*e1^e2", 2),
        ("dim 3\nsection s = (w)*dx1^dx2", 2),
        ("dim 3\nfunc x1 = 2", 2),
        ("dim 3\nwedge a = 1", 2),
        ("dim 3 4", 1),
        ("dim 2\nsection s = (1)*dx1 + (1)*dx1^dx2", 2),
        ("dim 2\nsection s = (1/0)*dx1", 2),
        ("dim 2\nsection s = (1)*dx1 $", 2),
        ("", 1),
    ],
)
def test_scene_errors_carry_positions(text, line):
    with pytest.raises(ParseError) as info:
        parse_scene(text)
    assert info.value.line == line
    assert info.value.column >= 1
    assert str(info.value).startswith(f"{line}:")


def test_degree_checks():
    with pytest.raises(DegreeMismatch):
        parse_scene("dim 3\nstructure L order 3 = (1)*e1^e2")
    with pytest.raises(DegreeMismatch):
        parse_scene(CANONICAL + "section s = (1)*dx1")


def test_unknown_names_in_scene():
    scene = parse_scene(CANONICAL)
    with pytest.raises(SceneError):
        scene.structure("M")
    with pytest.raises(SceneError):
        scene.section("a")


def test_parse_expression_examples():
    x1, x2 = R2.coordinate(0), R2.coordinate(1)
    form = parse_expression("(2/3)*dx1 + (x1^2)*dx2", R2, "form")
    assert form == DifferentialForm(R2, 1, {(0,): Fraction(2, 3), (1,): x1 ** 2})
    assert len(form.components) == 2
    assert parse_expression("(x1)*e1^e2^e3", R3, "multivector") == MultivectorField.basis(R3, (0, 1, 2), R3.coordinate(0))
    assert parse_expression("dx2^dx1", R2, "form") == -DifferentialForm.basis(R2, (0, 1))
    assert parse_expression("-(x1 - x2)^2 + 3", R2, "function") == -((x1 - x2) ** 2) + 3
    assert parse_expression("(x1*x2)", R2, "form") == DifferentialForm.function(R2, x1 * x2)


@pytest.mark.parametrize(
    "text, kind",
    [
        ("dx1^^dx2", "form"),
        ("(x1)*e1", "form"),
        ("(x1)*dx1", "multivector"),
        ("dx3", "form"),
        ("x1*dx1", "form"),
        ("(x1", "function"),
        ("x1 x2", "function"),
        ("", "form"),
    ],
)
def test_parse_expression_errors(text, kind):
    with pytest.raises(ParseError):
        parse_expression(text, R2, kind)


def test_kind_mismatch_names_the_basis():
    with pytest.raises(ParseError) as info:
        parse_expression("(1)*e1", R2, "form")
    assert "multivector basis" in info.value.message


def test_render_examples():
    scene = parse_scene(CANONICAL + "section c = (1)*dx1^dx2\n")
    structure = scene.structure()
    assert render(DifferentialForm.zero(R3, 0)) == "(0)"
    assert render(anchor_pi(structure, scene.section("c"))) == "(1)*e3"
    assert render(derive_anchor(structure, IBANEZ, scene.section("c"))) == "(1)*e3"
    assert render(structure) == "(1)*e1^e2^e3"
    assert render(scene.chart.coordinate(0) ** 2, scene.chart) == "x^2"
    with pytest.raises(TypeError):
        render(object())


def test_round_trip_on_samples():
    chart = Chart(("x", "y", "z"))
    rng = np.random.default_rng(2024)
    for _ in range(10):
        degree = int(rng.integers(0, 4))
        form = sample_form(rng, chart, degree, 2, 3).scale(Fraction(1, int(rng.integers(1, 5))))
        assert parse_expression(render(form), chart, "form") == form
        field = sample_multivector(rng, chart, degree, 2, 3)
        assert parse_expression(render(field), chart, "multivector") == field
        f = sample_polynomial(rng, 3, 3, 5)
        assert parse_expression(render(f, chart), chart, "function") == f
    zeros = [
        (DifferentialForm.zero(chart, 2), "form"),
        (DifferentialForm.zero(chart, 0), "form"),
        (MultivectorField.zero(chart, 3), "multivector"),
    ]
    for zero, kind in zeros:
        assert parse_expression(render(zero), chart, kind) == zero


def test_tokenizer_positions():
    tokens = tokenize("dim 3\n  coords x")
    assert [(t.kind, t.text, t.line, t.column) for t in tokens] == [
        ("IDENT", "dim", 1, 1),
        ("INT", "3", 1, 5),
        ("NEWLINE", "\n", 1, 6),
        ("IDENT", "coords", 2, 3),
        ("IDENT", "x", 2, 10),
        ("END", "", 2, 11),
    ]
