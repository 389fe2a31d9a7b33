"""
Exact coefficient ring: sparse multivariate polynomials over the rationals.

Coefficients are ``fractions.Fraction`` values, normalised to ``int`` whenever the
denominator is 1 (both expose ``numerator``/``denominator`` and compare/hash alike).
Monomials are exponent tuples whose length is the ambient dimension.
"""

from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import DimensionMismatch, DivisionByZero, IndexOutOfRange, NotDivisible


def to_rational(value):
    """Normalise an int/Fraction/str literal to the canonical coefficient form"""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, str)):
        value = Fraction(value)
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"unsupported coefficient type: {type(value).__name__}")


def grlex_key(monomial):
    """Graded lexicographic sort key (total degree first, then exponent tuple)"""
    return (sum(monomial), monomial)


def format_rational(value):
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


class Polynomial:
    """Immutable sparse polynomial in ``dimension`` variables"""

    __slots__ = ("dimension", "_terms", "_hash")

    def __init__(self, dimension, terms=None):
        if dimension < 1:
            raise DimensionMismatch(f"dimension must be positive, got {dimension}")
        self.dimension = dimension
        clean = {}
        for monomial, coeff in (terms or {}).items():
            monomial = tuple(monomial)
            if len(monomial) != dimension or any(e < 0 for e in monomial):
                raise DimensionMismatch(f"bad monomial {monomial} for dimension {dimension}")
            coeff = to_rational(coeff)
            if coeff:
                clean[monomial] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dimension, terms):
        # trusted constructor: terms already validated, no zero coefficients
        poly = cls.__new__(cls)
        poly.dimension = dimension
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, dimension):
        return cls._raw(dimension, {})

    @classmethod
    def constant(cls, dimension, value):
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def variable(cls, dimension, index):
        if not 0 <= index < dimension:
            raise IndexOutOfRange(f"coordinate index {index} outside 0..{dimension - 1}")
        exps = [0] * dimension
        exps[index] = 1
        return cls._raw(dimension, {tuple(exps): 1})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self):
        """(monomial, coefficient) pairs, leading (grlex-largest) term first"""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def coefficient(self, monomial):
        return self._terms.get(tuple(monomial), 0)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(m) for m in self._terms)

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial"""
        return max((sum(m) for m in self._terms), default=-1)

    def leading_term(self):
        if not self._terms:
            return None
        monomial = max(self._terms, key=grlex_key)
        return monomial, self._terms[monomial]

    def evaluate(self, point):
        if len(point) != self.dimension:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.dimension}")
        point = [to_rational(v) for v in point]
        total = 0
        for monomial, coeff in self._terms.items():
            value = coeff
            for x, e in zip(point, monomial):
                if e:
                    value *= x ** e
            total += value
        return to_rational(Fraction(total))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.dimension != self.dimension:
                raise DimensionMismatch(f"dimension {self.dimension} vs {other.dimension}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.dimension, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            total = terms.get(monomial, 0) + coeff
            if total:
                terms[monomial] = to_rational(total) if isinstance(total, Fraction) else total
            else:
                terms.pop(monomial, None)
        return Polynomial._raw(self.dimension, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.dimension, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = tuple(a + b for a, b in zip(m1, m2))
                terms[monomial] = terms.get(monomial, 0) + c1 * c2
        return Polynomial(self.dimension, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.constant(self.dimension, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def partial(self, index):
        if not 0 <= index < self.dimension:
            raise IndexOutOfRange(f"coordinate index {index} outside 0..{self.dimension - 1}")
        terms = {}
        for monomial, coeff in self._terms.items():
            e = monomial[index]
            if e:
                lowered = monomial[:index] + (e - 1,) + monomial[index + 1:]
                terms[lowered] = to_rational(coeff * e) if isinstance(coeff, Fraction) else coeff * e
        return Polynomial._raw(self.dimension, terms)

    # -- comparison and printing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.dimension == other.dimension and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Polynomial.constant(self.dimension, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dimension, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def render(self, names=None):
        """Canonical text: grlex order, explicit ``*`` and ``^``, rationals as ``a/b``"""
        if names is None:
            names = [f"x{i + 1}" for i in range(self.dimension)]
        if not self._terms:
            return "0"
        pieces = []
        for position, (monomial, coeff) in enumerate(self.terms):
            factors = []
            for name, e in zip(names, monomial):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            magnitude = abs(coeff)
            if not factors:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(magnitude)] + factors)
            if position == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.render()!r}, dimension={self.dimension})"


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def partial(p, i):
    return p.partial(i)


def exact_div(p, q):
    """Return r with r*q == p, or raise NotDivisible"""
    if p.dimension != q.dimension:
        raise DimensionMismatch(f"dimension {p.dimension} vs {q.dimension}")
    if q.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    lead_m, lead_c = q.leading_term()
    quotient = {}
    remainder = p
    # grlex is a monomial order, so lt(r*q) = lt(r)*lt(q): if lt(q) fails to divide the
    # current leading term, no polynomial quotient exists
    while not remainder.is_zero():
        m, c = remainder.leading_term()
        if any(a < b for a, b in zip(m, lead_m)):
            raise NotDivisible(f"{p.render()} is not divisible by {q.render()}")
        step_m = tuple(a - b for a, b in zip(m, lead_m))
        step_c = to_rational(Fraction(c) / Fraction(lead_c))
        quotient[step_m] = step_c
        remainder = remainder - Polynomial._raw(p.dimension, {step_m: step_c}) * q
    return Polynomial(p.dimension, quotient)


def monomials_up_to(dimension, max_degree):
    """All exponent tuples of total degree <= max_degree, grlex ascending"""
    result = []
    for total in range(max_degree + 1):
        block = []
        for combo in combinations_with_replacement(range(dimension), total):
            exps = [0] * dimension
            for index in combo:
                exps[index] += 1
            block.append(tuple(exps))
        result.extend(sorted(block))
    return result


def sample_polynomial(rng, dimension, max_degree, max_abs_coeff):
    """Draw integer coefficients in [-max_abs_coeff, max_abs_coeff] for every monomial of degree <= max_degree

    ``rng`` is a ``numpy.random.Generator``; identical generator states give identical output.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if max_abs_coeff < 1:
        raise ValueError("max_abs_coeff must be >= 1")
    monomials = monomials_up_to(dimension, max_degree)
    coeffs = rng.integers(-max_abs_coeff, max_abs_coeff + 1, size=len(monomials))
    return Polynomial(dimension, {m: int(c) for m, c in zip(monomials, coeffs)})
