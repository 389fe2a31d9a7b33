"""
Graded alternating algebra over a single polynomial chart.

Components live only on strictly increasing multi-indices; any other index order is
folded in at construction with its permutation sign. Conventions used throughout:

    <e_I, dx^J> = delta_IJ                      (no factorial weights)
    <i(b)P, g>  = <P, b ^ g>                    (contraction, b leftmost)
"""

import re
from dataclasses import dataclass
from itertools import combinations

from .errors import ChartMismatch, DegreeMismatch, DimensionMismatch, IndexOutOfRange
from .ring import Polynomial, sample_polynomial

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Chart:
    coordinate_names: tuple

    def __post_init__(self):
        names = tuple(self.coordinate_names)
        object.__setattr__(self, "coordinate_names", names)
        if not names:
            raise DimensionMismatch("a chart needs at least one coordinate")
        for name in names:
            if not IDENTIFIER.match(name):
                raise ValueError(f"invalid coordinate name: {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in {names}")

    @classmethod
    def standard(cls, dimension):
        return cls(tuple(f"x{i + 1}" for i in range(dimension)))

    @property
    def dimension(self):
        return len(self.coordinate_names)

    def coordinate(self, index):
        return Polynomial.variable(self.dimension, index)

    def constant(self, value):
        return Polynomial.constant(self.dimension, value)


def sort_with_sign(indices):
    """Sort a multi-index; return (sign, sorted tuple), sign 0 when an index repeats"""
    indices = tuple(indices)
    if len(set(indices)) != len(indices):
        return 0, indices
    inversions = sum(
        1 for a in range(len(indices)) for b in range(a + 1, len(indices)) if indices[a] > indices[b]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


def basis_indices(dimension, degree):
    return list(combinations(range(dimension), degree))


class AlternatingTensor:
    """Shared machinery for forms and multivector fields"""

    basis_symbol = ""
    __slots__ = ("chart", "degree", "_components", "_hash")

    def __init__(self, chart, degree, components=None):
        if degree < 0:
            raise DegreeMismatch(f"negative degree {degree}")
        self.chart = chart
        self.degree = degree
        self._hash = None
        n = chart.dimension
        clean = {}
        items = components.items() if isinstance(components, dict) else (components or ())
        for indices, coeff in items:
            indices = tuple(indices)
            if len(indices) != degree:
                raise DegreeMismatch(f"multi-index {indices} does not have length {degree}")
            for i in indices:
                if not 0 <= i < n:
                    raise IndexOutOfRange(f"index {i} outside 0..{n - 1}")
            coeff = self._coefficient(coeff)
            sign, key = sort_with_sign(indices)
            if not sign or coeff.is_zero():
                continue
            clean[key] = clean[key] + sign * coeff if key in clean else sign * coeff
        self._components = {k: v for k, v in clean.items() if not v.is_zero()}

    def _coefficient(self, value):
        if isinstance(value, Polynomial):
            if value.dimension != self.chart.dimension:
                raise DimensionMismatch(
                    f"coefficient in {value.dimension} variables on a {self.chart.dimension}-dimensional chart"
                )
            return value
        return self.chart.constant(value)

    @classmethod
    def _build(cls, chart, degree, components):
        # trusted constructor: keys sorted, values nonzero polynomials
        tensor = cls.__new__(cls)
        tensor.chart = chart
        tensor.degree = degree
        tensor._hash = None
        tensor._components = components
        return tensor

    @classmethod
    def zero(cls, chart, degree):
        return cls._build(chart, degree, {})

    @classmethod
    def basis(cls, chart, indices, coeff=1):
        return cls(chart, len(tuple(indices)), {tuple(indices): coeff})

    @property
    def components(self):
        """(multi-index, coefficient) pairs in multi-index lex order"""
        return sorted(self._components.items())

    def component(self, indices):
        sign, key = sort_with_sign(indices)
        if not sign or key not in self._components:
            return Polynomial.zero(self.chart.dimension)
        return sign * self._components[key]

    def is_zero(self):
        return not self._components

    def _check_compatible(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.chart != self.chart:
            raise ChartMismatch(f"{self.chart} vs {other.chart}")
        if other.degree != self.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check_compatible(other)
        merged = dict(self._components)
        for key, value in other._components.items():
            total = merged[key] + value if key in merged else value
            if total.is_zero():
                merged.pop(key, None)
            else:
                merged[key] = total
        return self._build(self.chart, self.degree, merged)

    def __neg__(self):
        return self._build(self.chart, self.degree, {k: -v for k, v in self._components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        """Multiply every component by a polynomial or rational"""
        factor = self._coefficient(factor)
        if factor.is_zero():
            return self.zero(self.chart, self.degree)
        scaled = {}
        for key, value in self._components.items():
            product = value * factor
            if not product.is_zero():
                scaled[key] = product
        return self._build(self.chart, self.degree, scaled)

    def __mul__(self, factor):
        if isinstance(factor, AlternatingTensor):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and self.degree == other.degree and self._components == other._components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.chart, self.degree, frozenset(self._components.items())))
        return self._hash

    def basis_text(self, indices):
        return "^".join(f"{self.basis_symbol}{i + 1}" for i in indices)

    def render(self):
        """Canonical text, e.g. ``(x)*dx1^dx2 + (1)*dx2^dx3``; parses back to an equal value"""
        names = self.chart.coordinate_names
        if self.degree == 0:
            return f"({self.component(()).render(names)})"
        if not self._components:
            return f"(0)*{self.basis_text(tuple(range(self.degree)))}"
        return " + ".join(f"({coeff.render(names)})*{self.basis_text(key)}" for key, coeff in self.components)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"{type(self).__name__}({self.render()!r}, degree={self.degree})"


class DifferentialForm(AlternatingTensor):
    basis_symbol = "dx"
    __slots__ = ()

    @classmethod
    def function(cls, chart, f):
        """Degree-0 form wrapping a polynomial"""
        return cls(chart, 0, {(): f})

    def as_function(self):
        if self.degree != 0:
            raise DegreeMismatch(f"expected a 0-form, got degree {self.degree}")
        return self.component(())


class MultivectorField(AlternatingTensor):
    basis_symbol = "e"
    __slots__ = ()

    @classmethod
    def vector_field(cls, chart, coefficients):
        """Degree-1 field from a mapping index -> coefficient"""
        return cls(chart, 1, {(i,): c for i, c in coefficients.items()})

    def vector_component(self, index):
        if self.degree != 1:
            raise DegreeMismatch(f"expected a vector field, got degree {self.degree}")
        return self.component((index,))


def _check_chart(a, b):
    if a.chart != b.chart:
        raise ChartMismatch(f"{a.chart} vs {b.chart}")


def _wedge(a, b, cls):
    _check_chart(a, b)
    result = {}
    for i_a, c_a in a._components.items():
        for i_b, c_b in b._components.items():
            sign, key = sort_with_sign(i_a + i_b)
            if not sign:
                continue
            term = c_a * c_b
            if sign < 0:
                term = -term
            result[key] = result[key] + term if key in result else term
    return cls._build(a.chart, a.degree + b.degree, {k: v for k, v in result.items() if not v.is_zero()})


def wedge_form(omega, eta):
    return _wedge(omega, eta, DifferentialForm)


def wedge_multivector(p, q):
    return _wedge(p, q, MultivectorField)


def pairing(multivector, form):
    """Full contraction <P, w> = sum over matching multi-indices of component products"""
    _check_chart(multivector, form)
    if multivector.degree != form.degree:
        raise DegreeMismatch(f"pairing degree {multivector.degree} with degree {form.degree}")
    total = Polynomial.zero(form.chart.dimension)
    for key, coeff in multivector._components.items():
        other = form._components.get(key)
        if other is not None:
            total = total + coeff * other
    return total


def contract_form_into_multivector(beta, multivector):
    """i(beta)P, the multivector with <i(beta)P, g> = <P, beta ^ g>"""
    _check_chart(beta, multivector)
    if beta.degree > multivector.degree:
        raise DegreeMismatch(f"cannot contract a {beta.degree}-form into a {multivector.degree}-vector")
    result = {}
    for i_b, c_b in beta._components.items():
        for i_p, c_p in multivector._components.items():
            if not set(i_b) <= set(i_p):
                continue
            rest = tuple(i for i in i_p if i not in i_b)
            sign, _ = sort_with_sign(i_b + rest)
            term = c_b * c_p
            if sign < 0:
                term = -term
            result[rest] = result[rest] + term if rest in result else term
    return MultivectorField._build(
        beta.chart, multivector.degree - beta.degree, {k: v for k, v in result.items() if not v.is_zero()}
    )


def interior_product(vector, form):
    """Antiderivation i_X: removes each slot j with sign (-1)^(j-1)"""
    _check_chart(vector, form)
    if vector.degree != 1:
        raise DegreeMismatch(f"interior product needs a vector field, got degree {vector.degree}")
    if form.degree == 0:
        raise DegreeMismatch("interior product of a 0-form is undefined")
    result = {}
    for (i,), x in vector._components.items():
        for indices, coeff in form._components.items():
            if i not in indices:
                continue
            position = indices.index(i)
            key = indices[:position] + indices[position + 1:]
            term = x * coeff
            if position % 2:
                term = -term
            result[key] = result[key] + term if key in result else term
    return DifferentialForm._build(
        form.chart, form.degree - 1, {k: v for k, v in result.items() if not v.is_zero()}
    )


def apply_vector_field(vector, f):
    """X(f) = sum_i X^i d_i f"""
    if vector.degree != 1:
        raise DegreeMismatch(f"expected a vector field, got degree {vector.degree}")
    if f.dimension != vector.chart.dimension:
        raise DimensionMismatch(f"function in {f.dimension} variables on a {vector.chart.dimension}-dimensional chart")
    total = Polynomial.zero(f.dimension)
    for (i,), x in vector._components.items():
        total = total + x * f.partial(i)
    return total


def _sample_components(rng, chart, degree, max_degree, max_abs_coeff):
    return {
        key: sample_polynomial(rng, chart.dimension, max_degree, max_abs_coeff)
        for key in basis_indices(chart.dimension, degree)
    }


def sample_form(rng, chart, degree, max_degree, max_abs_coeff):
    return DifferentialForm(chart, degree, _sample_components(rng, chart, degree, max_degree, max_abs_coeff))


def sample_multivector(rng, chart, degree, max_degree, max_abs_coeff):
    return MultivectorField(chart, degree, _sample_components(rng, chart, degree, max_degree, max_abs_coeff))
