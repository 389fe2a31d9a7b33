"""
Differential operators on the polynomial chart and the Nambu-Poisson layer built on them.
"""

from dataclasses import dataclass, field
from itertools import combinations, islice, product

import numpy as np
from joblib import Parallel, delayed

from .errors import ArityMismatch, ChartMismatch, DegreeMismatch, DegreeOverflow
from .exterior import (
    DifferentialForm,
    MultivectorField,
    apply_vector_field,
    contract_form_into_multivector,
    interior_product,
    pairing,
    sample_form,
    sample_multivector,
    sort_with_sign,
    wedge_form,
)
from .report import VerificationReport, Violation
from .ring import sample_polynomial


@dataclass(frozen=True)
class NambuStructure:
    """Order-p multivector field Lambda on a chart, 2 <= p <= n"""

    chart: object
    order: int
    lam: MultivectorField
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.lam.chart != self.chart:
            raise ChartMismatch("structure tensor lives on a different chart")
        if not 2 <= self.order <= self.chart.dimension:
            raise DegreeMismatch(f"order {self.order} outside 2..{self.chart.dimension}")
        if self.lam.degree != self.order:
            raise DegreeMismatch(f"tensor degree {self.lam.degree} does not match order {self.order}")

    @property
    def dimension(self):
        return self.chart.dimension

    def describe(self):
        body = self.lam.render()
        return f"{self.label}: {body}" if self.label else body


def _check_chart(a, b):
    if a.chart != b.chart:
        raise ChartMismatch(f"{a.chart} vs {b.chart}")


def exterior_derivative(omega):
    """d(f dx^I) = sum_i (d_i f) dx^i ^ dx^I"""
    n = omega.chart.dimension
    if omega.degree >= n:
        raise DegreeOverflow(f"d of a degree-{omega.degree} form on a {n}-dimensional chart")
    result = {}
    for indices, coeff in omega.components:
        for i in range(n):
            if i in indices:
                continue
            derivative = coeff.partial(i)
            if derivative.is_zero():
                continue
            sign, key = sort_with_sign((i,) + indices)
            term = derivative if sign > 0 else -derivative
            result[key] = result[key] + term if key in result else term
    return DifferentialForm(omega.chart, omega.degree + 1, result)


def differential(chart, f):
    """df as a 1-form"""
    return exterior_derivative(DifferentialForm.function(chart, f))


def lie_derivative_form(vector, omega):
    """Cartan formula L_X w = d(i_X w) + i_X(dw); X(f) on 0-forms"""
    _check_chart(vector, omega)
    if omega.degree == 0:
        return DifferentialForm.function(omega.chart, apply_vector_field(vector, omega.as_function()))
    result = exterior_derivative(interior_product(vector, omega))
    if omega.degree < omega.chart.dimension:
        result = result + interior_product(vector, exterior_derivative(omega))
    return result


def vf_commutator(x, y):
    """[X,Y]^j = sum_i (X^i d_i Y^j - Y^i d_i X^j)"""
    _check_chart(x, y)
    n = x.chart.dimension
    components = {}
    for j in range(n):
        components[(j,)] = apply_vector_field(x, y.vector_component(j)) - apply_vector_field(y, x.vector_component(j))
    return MultivectorField(x.chart, 1, components)


def lie_derivative_multivector(vector, multivector):
    """L_X as a degree-0 derivation of the wedge algebra, with L_X e_k = [X, e_k] = -sum_i (d_k X^i) e_i"""
    _check_chart(vector, multivector)
    n = vector.chart.dimension
    dx = {i: vector.vector_component(i) for i in range(n)}
    result = {}

    def accumulate(indices, term):
        sign, key = sort_with_sign(indices)
        if not sign or term.is_zero():
            return
        if sign < 0:
            term = -term
        result[key] = result[key] + term if key in result else term

    for indices, coeff in multivector.components:
        accumulate(indices, apply_vector_field(vector, coeff))
        for slot, k in enumerate(indices):
            for i in range(n):
                rate = dx[i].partial(k)
                if rate.is_zero():
                    continue
                accumulate(indices[:slot] + (i,) + indices[slot + 1:], -(coeff * rate))
    return MultivectorField(vector.chart, multivector.degree, result)


def _wedge_differentials(chart, functions):
    omega = DifferentialForm.function(chart, chart.constant(1))
    for f in functions:
        omega = wedge_form(omega, differential(chart, f))
    return omega


def nambu_bracket(structure, functions):
    """{f1,...,fp} = <Lambda, df1 ^ ... ^ dfp>"""
    functions = list(functions)
    if len(functions) != structure.order:
        raise ArityMismatch(f"Nambu bracket of order {structure.order} given {len(functions)} functions")
    return pairing(structure.lam, _wedge_differentials(structure.chart, functions))


def hamiltonian_vector_field(structure, functions):
    """X = i(df1 ^ ... ^ df_{p-1}) Lambda, so that X(g) = {f1,...,f_{p-1},g}"""
    functions = list(functions)
    if len(functions) != structure.order - 1:
        raise ArityMismatch(f"Hamiltonian field needs {structure.order - 1} functions, got {len(functions)}")
    return contract_form_into_multivector(_wedge_differentials(structure.chart, functions), structure.lam)


def check_fundamental_identity(structure, fs, gs):
    """FI defect {f..., {g1..gp}} - sum_i {g1, .., {f..., gi}, .., gp}; zero iff FI holds on the tuple"""
    fs, gs = list(fs), list(gs)
    p = structure.order
    if len(fs) != p - 1 or len(gs) != p:
        raise ArityMismatch(f"fundamental identity needs {p - 1} and {p} functions, got {len(fs)} and {len(gs)}")
    defect = nambu_bracket(structure, fs + [nambu_bracket(structure, gs)])
    for i in range(p):
        replaced = list(gs)
        replaced[i] = nambu_bracket(structure, fs + [gs[i]])
        defect = defect - nambu_bracket(structure, replaced)
    return defect


def structured_generators(chart):
    """Coordinates followed by all pairwise coordinate products"""
    n = chart.dimension
    coords = [chart.coordinate(i) for i in range(n)]
    return coords + [coords[i] * coords[j] for i in range(n) for j in range(i, n)]


def _sampled_identity_tuple(structure, seed, index, max_degree, max_abs_coeff):
    rng = np.random.default_rng(seed + index)
    n, p = structure.dimension, structure.order
    fs = [sample_polynomial(rng, n, max_degree, max_abs_coeff) for _ in range(p - 1)]
    gs = [sample_polynomial(rng, n, max_degree, max_abs_coeff) for _ in range(p)]
    return fs, gs, check_fundamental_identity(structure, fs, gs)


def validate_nambu(structure, trials, seed, max_degree, max_abs_coeff=3, structured_cap=400, progress=None, jobs=1):
    """Sampled fundamental-identity check; returns a VerificationReport

    Sound for violations, incomplete for validity: the identity quantifies over all functions
    and only a structured family plus seeded random tuples are tried.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    chart = structure.chart
    names = chart.coordinate_names
    p = structure.order
    violations = []
    render = lambda fs: [f.render(names) for f in fs]  # noqa: E731

    generators = structured_generators(chart)
    coordinates = generators[: chart.dimension]
    hamiltonians = list(islice(combinations(generators, p - 1), structured_cap))
    coordinate_tuples = list(combinations(coordinates, p))
    # identity tuples pair the leading Hamiltonian tuples with every coordinate p-tuple
    per_tuple = max(1, structured_cap // len(coordinate_tuples))
    structured = list(islice(product(hamiltonians[:per_tuple], coordinate_tuples), structured_cap))

    for fs, gs in structured:
        defect = check_fundamental_identity(structure, fs, gs)
        if not defect.is_zero():
            violations.append(
                Violation(-1, {"fs": render(fs), "gs": render(gs)}, defect.render(names), check="fundamental-identity")
            )
    for fs in hamiltonians:
        drift = lie_derivative_multivector(hamiltonian_vector_field(structure, fs), structure.lam)
        if not drift.is_zero():
            violations.append(Violation(-1, {"fs": render(fs)}, drift.render(), check="hamiltonian-invariance"))

    if jobs > 1:
        # joblib returns results in submission order
        sampled = Parallel(n_jobs=jobs)(
            delayed(_sampled_identity_tuple)(structure, seed, t, max_degree, max_abs_coeff) for t in range(trials)
        )
    else:
        iterator = range(trials) if progress is None else progress(range(trials))
        sampled = (_sampled_identity_tuple(structure, seed, t, max_degree, max_abs_coeff) for t in iterator)
    for t, (fs, gs, defect) in enumerate(sampled):
        if not defect.is_zero():
            violations.append(
                Violation(t, {"fs": render(fs), "gs": render(gs)}, defect.render(names), check="fundamental-identity")
            )

    return VerificationReport(
        suite="fundamental-identity",
        structure=structure.describe(),
        variant="n/a",
        trials=trials,
        seed=seed,
        violations=violations,
        notes=[
            f"structured family: {len(structured)} identity tuples, {len(hamiltonians)} Hamiltonian fields",
            "sampled check: a violation is a proof of failure, a pass is evidence only",
        ],
    )


def check_calculus_identities(chart, rng, max_degree, max_abs_coeff):
    """Named defects of the Cartan-calculus identities on freshly sampled inputs; all zero when consistent"""
    n = chart.dimension
    sample_vf = lambda: sample_multivector(rng, chart, 1, max_degree, max_abs_coeff)  # noqa: E731
    x, y = sample_vf(), sample_vf()
    k = int(rng.integers(0, n + 1))
    j = int(rng.integers(0, n - k + 1))
    omega = sample_form(rng, chart, k, max_degree, max_abs_coeff)
    eta = sample_form(rng, chart, j, max_degree, max_abs_coeff)
    inputs = {"X": x.render(), "Y": y.render(), "omega": omega.render(), "eta": eta.render()}
    defects = {}

    if k <= n - 2:
        defects["d-squared"] = exterior_derivative(exterior_derivative(omega))
    if k >= 2:
        defects["interior-squared"] = interior_product(x, interior_product(x, omega))
    if k + j >= 1:
        product_form = wedge_form(omega, eta)
        expected = DifferentialForm.zero(chart, k + j - 1)
        if k >= 1:
            expected = expected + wedge_form(interior_product(x, omega), eta)
        if j >= 1:
            sign = -1 if k % 2 else 1
            expected = expected + sign * wedge_form(omega, interior_product(x, eta))
        defects["interior-antiderivation"] = interior_product(x, product_form) - expected
    defects["lie-product-rule"] = lie_derivative_form(x, wedge_form(omega, eta)) - (
        wedge_form(lie_derivative_form(x, omega), eta) + wedge_form(omega, lie_derivative_form(x, eta))
    )
    bracket = vf_commutator(x, y)
    defects["lie-commutator"] = (
        lie_derivative_form(x, lie_derivative_form(y, omega))
        - lie_derivative_form(y, lie_derivative_form(x, omega))
        - lie_derivative_form(bracket, omega)
    )
    if k >= 1:
        defects["lie-interior-commutator"] = (
            lie_derivative_form(x, interior_product(y, omega))
            - interior_product(y, lie_derivative_form(x, omega))
            - interior_product(bracket, omega)
        )
    if k < n:
        defects["lie-commutes-with-d"] = lie_derivative_form(x, exterior_derivative(omega)) - exterior_derivative(
            lie_derivative_form(x, omega)
        )
    defects["lie-multivector-degree-one"] = lie_derivative_multivector(x, y) - bracket
    return inputs, defects


__all__ = [
    "NambuStructure",
    "check_calculus_identities",
    "check_fundamental_identity",
    "differential",
    "exterior_derivative",
    "hamiltonian_vector_field",
    "lie_derivative_form",
    "lie_derivative_multivector",
    "nambu_bracket",
    "structured_generators",
    "validate_nambu",
    "vf_commutator",
]
