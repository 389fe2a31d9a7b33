"""
Leibniz algebroid attached to a Nambu structure of order p.

Sections are differential forms of degree p-1. The anchor is Pi(a) = i(a)Lambda, and two
brackets are available:

    ibanez:    [[a,b]] = L_{Pi(a)} b + s <Lambda, da> b,   s = (-1)^n or (-1)^p
    hagiwara:  [[a,b]] = L_{Pi(a)} b - i_{Pi(b)} da

derive_anchor recovers the anchor from the bracket alone through
(a(X)f) Y = [[X, fY]] - f [[X, Y]].
"""

from dataclasses import dataclass
from enum import Enum

from .calculus import exterior_derivative, lie_derivative_form, vf_commutator
from .errors import ChartMismatch, DegreeMismatch, ExtractionFailure, NotDivisible
from .exterior import (
    DifferentialForm,
    MultivectorField,
    apply_vector_field,
    basis_indices,
    contract_form_into_multivector,
    interior_product,
    pairing,
)
from .ring import Polynomial, exact_div


class BracketKind(str, Enum):
    IBANEZ = "ibanez"
    HAGIWARA = "hagiwara"


class SignExponent(str, Enum):
    DIMENSION = "dimension"
    ORDER = "order"


@dataclass(frozen=True)
class BracketVariant:
    kind: BracketKind = BracketKind.IBANEZ
    sign_exponent: SignExponent = SignExponent.DIMENSION

    def ibanez_sign(self, structure):
        exponent = structure.dimension if self.sign_exponent == SignExponent.DIMENSION else structure.order
        return -1 if exponent % 2 else 1

    def assemble(self, structure, alpha, beta, anchor_alpha):
        """Evaluate the bracket formula; anchor_alpha is Pi(alpha)"""
        result = lie_derivative_form(anchor_alpha, beta)
        d_alpha = exterior_derivative(alpha)
        if self.kind == BracketKind.IBANEZ:
            weight = pairing(structure.lam, d_alpha)
            return result + beta.scale(weight * self.ibanez_sign(structure))
        return result - interior_product(anchor_pi(structure, beta), d_alpha)

    def describe(self):
        if self.kind == BracketKind.IBANEZ:
            return f"{self.kind.value}({self.sign_exponent.value})"
        return self.kind.value


@dataclass(frozen=True)
class ExtractedAnchor:
    """Vector-field action a(X) recovered from the bracket: action[i] = a(X) x_i"""

    source: DifferentialForm
    action: dict

    def apply(self, f):
        total = Polynomial.zero(f.dimension)
        for i, coeff in self.action.items():
            total = total + coeff * f.partial(i)
        return total

    def as_vector_field(self):
        return MultivectorField.vector_field(self.source.chart, self.action)


@dataclass(frozen=True)
class AntisymmetryDefects:
    bracket_defect: DifferentialForm
    anchored_defect: MultivectorField


@dataclass(frozen=True)
class VariantDifference:
    raw_difference: DifferentialForm
    anchored_difference: MultivectorField


def _check_section(structure, section):
    if not isinstance(section, DifferentialForm):
        raise DegreeMismatch(f"sections are differential forms, got {type(section).__name__}")
    if section.chart != structure.chart:
        raise ChartMismatch("section lives on a different chart than the structure")
    if section.degree != structure.order - 1:
        raise DegreeMismatch(f"section degree {section.degree}, structure of order {structure.order} needs {structure.order - 1}")


def anchor_pi(structure, alpha):
    """Pi(alpha) = i(alpha)Lambda"""
    _check_section(structure, alpha)
    return contract_form_into_multivector(alpha, structure.lam)


def bracket(structure, variant, alpha, beta):
    _check_section(structure, alpha)
    _check_section(structure, beta)
    return variant.assemble(structure, alpha, beta, anchor_pi(structure, alpha))


def basis_probes(structure):
    chart = structure.chart
    return [DifferentialForm.basis(chart, indices) for indices in basis_indices(chart.dimension, structure.order - 1)]


def _common_quotient(residual, probe):
    """g with residual == g * probe, or ExtractionFailure naming the offending component"""
    probe_keys = {key for key, _ in probe.components}
    for key, _ in residual.components:
        if key not in probe_keys:
            raise ExtractionFailure(
                f"residual has component {key} outside the probe {probe.render()}", probe=probe.render(), component=key
            )
    quotient = None
    for key, coeff in probe.components:
        try:
            candidate = exact_div(residual.component(key), coeff)
        except NotDivisible:
            raise ExtractionFailure(
                f"residual component {key} is not a multiple of the probe coefficient", probe=probe.render(), component=key
            ) from None
        if quotient is None:
            quotient = candidate
        elif candidate != quotient:
            raise ExtractionFailure(
                f"component {key} gives a different quotient than earlier components", probe=probe.render(), component=key
            )
    return quotient


def derive_anchor(structure, variant, alpha, probes=None):
    """Recover a(alpha) on coordinates from [[alpha, fY]] - f[[alpha, Y]] = (a(alpha)f) Y, without using Pi"""
    _check_section(structure, alpha)
    chart = structure.chart
    probes = [p for p in (probes or basis_probes(structure)) if not p.is_zero()]
    for probe in probes:
        _check_section(structure, probe)
    plain = [bracket(structure, variant, alpha, probe) for probe in probes]
    action = {}
    for i in range(chart.dimension):
        f = chart.coordinate(i)
        quotient = None
        for probe, base in zip(probes, plain):
            residual = bracket(structure, variant, alpha, probe.scale(f)) - base.scale(f)
            candidate = _common_quotient(residual, probe)
            if quotient is None:
                quotient = candidate
            elif candidate != quotient:
                raise ExtractionFailure(
                    f"probe {probe.render()} gives a different value of a(alpha) on {chart.coordinate_names[i]}",
                    probe=probe.render(),
                    component=probe.components[0][0],
                )
        action[i] = quotient if quotient is not None else Polynomial.zero(chart.dimension)
    return ExtractedAnchor(source=alpha, action=action)


def check_leibniz_identity(structure, variant, alpha, beta, gamma):
    """[[a,[[b,c]]]] - [[[[a,b]],c]] - [[b,[[a,c]]]]"""
    br = lambda x, y: bracket(structure, variant, x, y)  # noqa: E731
    return br(alpha, br(beta, gamma)) - br(br(alpha, beta), gamma) - br(beta, br(alpha, gamma))


def check_anchor_homomorphism(structure, variant, alpha, beta, derived=False):
    """rho([[a,b]]) - [rho(a), rho(b)] with rho = Pi, or the bracket-derived anchor when derived=True"""
    if derived:
        rho = lambda s: derive_anchor(structure, variant, s).as_vector_field()  # noqa: E731
    else:
        rho = lambda s: anchor_pi(structure, s)  # noqa: E731
    return rho(bracket(structure, variant, alpha, beta)) - vf_commutator(rho(alpha), rho(beta))


def check_leibniz_rule(structure, variant, alpha, beta, f):
    """[[a, fb]] - f[[a,b]] - (Pi(a)f) b"""
    anchored = apply_vector_field(anchor_pi(structure, alpha), f)
    return (
        bracket(structure, variant, alpha, beta.scale(f))
        - bracket(structure, variant, alpha, beta).scale(f)
        - beta.scale(anchored)
    )


def check_derivation_property(structure, variant, alpha, f, g):
    """a(fg) - f a(g) - g a(f) for the bracket-derived anchor a = a(alpha)"""
    anchor = derive_anchor(structure, variant, alpha)
    return anchor.apply(f * g) - f * anchor.apply(g) - g * anchor.apply(f)


def check_extraction_consistency(structure, variant, alpha):
    return derive_anchor(structure, variant, alpha).as_vector_field() - anchor_pi(structure, alpha)


def check_antisymmetry_defects(structure, variant, alpha, beta):
    raw = bracket(structure, variant, alpha, beta) + bracket(structure, variant, beta, alpha)
    return AntisymmetryDefects(bracket_defect=raw, anchored_defect=anchor_pi(structure, raw))


def compare_variants(structure, alpha, beta, sign_exponent=SignExponent.DIMENSION):
    ibanez = bracket(structure, BracketVariant(BracketKind.IBANEZ, sign_exponent), alpha, beta)
    hagiwara = bracket(structure, BracketVariant(BracketKind.HAGIWARA, sign_exponent), alpha, beta)
    raw = ibanez - hagiwara
    return VariantDifference(raw_difference=raw, anchored_difference=anchor_pi(structure, raw))
