"""
Exact scalars, polynomials and rational functions in one variable over Q(i).

Scalars are elements of sympy's Gaussian rational field ``QQ_I``. Polynomials
keep ascending coefficient tuples and delegate arithmetic to sympy's dense
``dup_*`` kernels. Rational functions keep their denominator factored into
monic linear factors, so poles are read off directly and Laurent expansions
in the Moebius chart mu = (lam - alpha)/(lam - conj(alpha)) are computed by
exact substitution followed by power-series division.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from sympy.polys.densearith import (
    dup_add,
    dup_div,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_pow,
    dup_sub,
)
from sympy.polys.densebasic import dup_strip
from sympy.polys.densetools import dup_eval
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.factortools import dup_factor_list

from .errors import EvalAtPole, InvalidRealPole, NonSplittingDenominator, ParseError

Scalar = GaussianRational
ScalarLike = Union[GaussianRational, int, Fraction]

ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I_UNIT = GaussianRational(0, 1)


class _Infinity:
    """The point at infinity of the Riemann sphere."""

    def __repr__(self) -> str:
        return "oo"


INFINITY = _Infinity()


# =============================================================================
# Scalars
# =============================================================================

def _rational(value) -> object:
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ.convert(value)


def gq(re: object = 0, im: object = 0) -> Scalar:
    """Build the Gaussian rational re + im*i from ints, Fractions or QQ elements."""
    return GaussianRational(_rational(re), _rational(im))


def as_scalar(value: ScalarLike) -> Scalar:
    if isinstance(value, GaussianRational):
        return value
    return gq(value)


def conj(z: Scalar) -> Scalar:
    """Complex conjugate; Gaussian rationals have no conjugate method of their own."""
    return z.new(z.x, -z.y)


def scalar_key(z: Scalar) -> Tuple[object, object]:
    """Canonical total order on Q(i): lexicographic on (re, im)."""
    return (z.x, z.y)


def is_real(z: Scalar) -> bool:
    return not z.y


def is_imaginary(z: Scalar) -> bool:
    """True for nonzero purely imaginary scalars."""
    return not z.x and bool(z.y)


def _format_rational(q) -> str:
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(z: Scalar) -> str:
    """Render z in the "a/b+c/d*i" syntax, omitting zero parts."""
    if not z.y:
        return _format_rational(z.x)
    if z.y == 1:
        imag = "i"
    elif z.y == -1:
        imag = "-i"
    else:
        imag = f"{_format_rational(z.y)}*i"
    if not z.x:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{_format_rational(z.x)}{sign}{imag}"


_RATIONAL = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?P<re>[+-]?{_RATIONAL})?"
    rf"(?:(?P<sign>[+-])?(?:(?P<im>{_RATIONAL})\*)?(?P<unit>i))?$"
)


def _parse_rational(text: str, source: str):
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in scalar {source!r}")
    return QQ(int(num), int(den) if den else 1)


def parse_scalar(text: str) -> Scalar:
    """Parse "a/b+c/d*i" (either part optional) into a Gaussian rational."""
    source = text
    text = text.strip().replace(" ", "")
    match = _SCALAR_RE.match(text)
    if not text or match is None:
        raise ParseError(f"malformed scalar {source!r}")
    real_text, sign, imag_text, unit = match.group("re", "sign", "im", "unit")
    if real_text and unit and not sign:
        raise ParseError(f"malformed scalar {source!r}")
    real = _parse_rational(real_text, source) if real_text else QQ(0)
    imag = QQ(0)
    if unit:
        imag = _parse_rational(imag_text, source) if imag_text else QQ(1)
        if sign == "-":
            imag = -imag
    return GaussianRational(real, imag)


# =============================================================================
# Polynomials
# =============================================================================

@dataclass(frozen=True)
class Polynomial:
    """Polynomial in lam with ascending Gaussian-rational coefficients."""

    coeffs: Tuple[Scalar, ...] = ()

    @classmethod
    def from_dup(cls, f: List[Scalar]) -> "Polynomial":
        return cls(tuple(reversed(dup_strip(list(f)))))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[ScalarLike]) -> "Polynomial":
        """Build from ascending coefficients, dropping trailing zeros."""
        return cls.from_dup([as_scalar(c) for c in reversed(list(coeffs))])

    @classmethod
    def constant(cls, c: ScalarLike) -> "Polynomial":
        return cls.from_coeffs([c])

    @classmethod
    def linear_factor(cls, root: Scalar) -> "Polynomial":
        """The monic factor lam - root."""
        return cls((-root, ONE))

    @property
    def dup(self) -> List[Scalar]:
        return list(reversed(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __call__(self, x: Scalar) -> Scalar:
        return dup_eval(self.dup, x, QQ_I)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial.from_dup(dup_add(self.dup, other.dup, QQ_I))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial.from_dup(dup_sub(self.dup, other.dup, QQ_I))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial.from_dup(dup_mul(self.dup, other.dup, QQ_I))

    def __neg__(self) -> "Polynomial":
        return Polynomial.from_dup(dup_neg(self.dup, QQ_I))

    def __pow__(self, exponent: int) -> "Polynomial":
        return Polynomial.from_dup(dup_pow(self.dup, exponent, QQ_I))

    def scale(self, c: Scalar) -> "Polynomial":
        return Polynomial.from_dup(dup_mul_ground(self.dup, c, QQ_I))

    def conjugate(self) -> "Polynomial":
        return Polynomial(tuple(conj(c) for c in self.coeffs))

    def reflect(self) -> "Polynomial":
        """p(-lam)."""
        return Polynomial(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def divmod(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        q, r = dup_div(self.dup, other.dup, QQ_I)
        return Polynomial.from_dup(q), Polynomial.from_dup(r)

    def root_multiplicity(self, root: Scalar) -> int:
        if self.is_zero:
            raise ValueError("the zero polynomial vanishes to infinite order")
        f, count = self.dup, 0
        while not dup_eval(f, root, QQ_I):
            f, _ = dup_div(f, [ONE, -root], QQ_I)
            count += 1
        return count

    def split(self) -> List[Tuple[Scalar, int]]:
        """Roots with multiplicity; raises if an irreducible factor of degree >= 2 remains."""
        if self.is_zero:
            raise ValueError("cannot split the zero polynomial")
        _, factors = dup_factor_list(self.dup, QQ_I)
        roots = []
        for factor, multiplicity in factors:
            if len(factor) != 2:
                raise NonSplittingDenominator(
                    f"irreducible factor of degree {len(factor) - 1} over Q(i)"
                )
            roots.append((-factor[1] / factor[0], multiplicity))
        return roots


# =============================================================================
# Rational functions
# =============================================================================

FactorList = Tuple[Tuple[Scalar, int], ...]


def _product_of_factors(factors: Iterable[Tuple[Scalar, int]]) -> List[Scalar]:
    out = [ONE]
    for root, mult in factors:
        if mult:
            out = dup_mul(out, dup_pow([ONE, -root], mult, QQ_I), QQ_I)
    return out


@dataclass(frozen=True)
class RationalFunction:
    """numer / prod (lam - root)^mult in canonical reduced form.

    Canonical means: no denominator root is a root of the numerator, roots are
    distinct and sorted by ``scalar_key``, and the zero function has no factors.
    """

    numer: Polynomial
    denom_factors: FactorList = ()

    @classmethod
    def build(
        cls, numer: Polynomial, factors: Iterable[Tuple[Scalar, int]] = ()
    ) -> "RationalFunction":
        if numer.is_zero:
            return cls(Polynomial())
        mult: Dict[Scalar, int] = {}
        for root, m in factors:
            if m:
                mult[root] = mult.get(root, 0) + m
        f = numer.dup
        for root in mult:
            while mult[root] and not dup_eval(f, root, QQ_I):
                f, _ = dup_div(f, [ONE, -root], QQ_I)
                mult[root] -= 1
        ordered = sorted(
            ((root, m) for root, m in mult.items() if m > 0),
            key=lambda item: scalar_key(item[0]),
        )
        return cls(Polynomial.from_dup(f), tuple(ordered))

    @classmethod
    def constant(cls, c: ScalarLike) -> "RationalFunction":
        return cls(Polynomial.constant(c))

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(Polynomial())

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls.constant(ONE)

    @classmethod
    def lam(cls) -> "RationalFunction":
        return cls(Polynomial((ZERO, ONE)))

    @classmethod
    def mobius(cls, alpha: Scalar, power: int = 1) -> "RationalFunction":
        """((lam - alpha)/(lam - conj(alpha)))**power."""
        top, bottom = alpha, conj(alpha)
        if power < 0:
            top, bottom, power = bottom, top, -power
        numer = Polynomial.linear_factor(top) ** power
        return cls.build(numer, [(bottom, power)])

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.numer.is_zero

    def __bool__(self) -> bool:
        return not self.numer.is_zero

    @property
    def denominator(self) -> Polynomial:
        return Polynomial.from_dup(_product_of_factors(self.denom_factors))

    @property
    def denom_degree(self) -> int:
        return sum(m for _, m in self.denom_factors)

    @property
    def is_polynomial(self) -> bool:
        return not self.denom_factors

    @property
    def finite_at_infinity(self) -> bool:
        return self.is_zero or self.numer.degree <= self.denom_degree

    def poles(self) -> List[Scalar]:
        return [root for root, _ in self.denom_factors]

    def pole_order(self, alpha: Scalar) -> int:
        for root, m in self.denom_factors:
            if root == alpha:
                return m
        return 0

    def zero_order(self, alpha: Scalar) -> int:
        """Order of vanishing at a point that is not a pole."""
        return self.numer.root_multiplicity(alpha)

    def _lift(self, target: Dict[Scalar, int]) -> Polynomial:
        own = dict(self.denom_factors)
        extra = [(root, m - own.get(root, 0)) for root, m in target.items()]
        return self.numer * Polynomial.from_dup(_product_of_factors(extra))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: object) -> "RationalFunction":
        other = _coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        target = dict(self.denom_factors)
        for root, m in other.denom_factors:
            target[root] = max(target.get(root, 0), m)
        return RationalFunction.build(self._lift(target) + other._lift(target), target.items())

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numer, self.denom_factors)

    def __sub__(self, other: object) -> "RationalFunction":
        return self + (-_coerce(other))

    def __rsub__(self, other: object) -> "RationalFunction":
        return _coerce(other) - self

    def __mul__(self, other: object) -> "RationalFunction":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return RationalFunction.zero()
        return RationalFunction.build(
            self.numer * other.numer, self.denom_factors + other.denom_factors
        )

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "RationalFunction":
        return RationalFunction.build(self.numer.scale(c), self.denom_factors)

    def inverse(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("the zero function has no inverse")
        roots = self.numer.split()
        numer = Polynomial.from_dup(_product_of_factors(self.denom_factors))
        return RationalFunction.build(numer.scale(ONE / self.numer.lead), roots)

    def __truediv__(self, other: object) -> "RationalFunction":
        return self * _coerce(other).inverse()

    def __pow__(self, exponent: int) -> "RationalFunction":
        base = self if exponent >= 0 else self.inverse()
        result = RationalFunction.one()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # -- involutions ---------------------------------------------------------

    def conj_coeff(self) -> "RationalFunction":
        """f* with conjugated coefficients: f*(conj(lam)) = conj(f(lam))."""
        return RationalFunction.build(
            self.numer.conjugate(), [(conj(root), m) for root, m in self.denom_factors]
        )

    def reflect(self) -> "RationalFunction":
        """f(-lam)."""
        numer = self.numer.reflect()
        if self.denom_degree % 2:
            numer = -numer
        return RationalFunction.build(numer, [(-root, m) for root, m in self.denom_factors])

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x: object) -> Scalar:
        return self.evaluate(x)

    def evaluate(self, x: object) -> Scalar:
        if x is INFINITY:
            if self.is_zero:
                return ZERO
            if self.numer.degree > self.denom_degree:
                raise EvalAtPole("pole at infinity")
            return self.numer.lead if self.numer.degree == self.denom_degree else ZERO
        x = as_scalar(x)
        denominator = ONE
        for root, m in self.denom_factors:
            if root == x:
                raise EvalAtPole(f"pole at {format_scalar(x)}")
            denominator *= (x - root) ** m
        return self.numer(x) / denominator

    def laurent(self, alpha: Scalar, j_lo: int, j_hi: int) -> List[Scalar]:
        """Coefficients c_j, j_lo <= j <= j_hi, of f(lam(mu)) = sum c_j mu^j at mu = 0."""
        if j_lo > j_hi:
            raise ValueError("empty coefficient window")
        width = j_hi - j_lo + 1
        if self.is_zero:
            return [ZERO] * width
        abar = conj(alpha)
        one_minus_mu = [-ONE, ONE]
        d = self.numer.degree
        top: List[Scalar] = []
        for j, a in enumerate(self.numer.coeffs):
            if a:
                term = dup_mul(
                    dup_pow([-abar, alpha], j, QQ_I), dup_pow(one_minus_mu, d - j, QQ_I), QQ_I
                )
                top = dup_add(top, dup_mul_ground(term, a, QQ_I), QQ_I)
        bottom = [ONE]
        shift = 0
        for root, m in self.denom_factors:
            if root == alpha:
                shift += m
                bottom = dup_mul_ground(bottom, (alpha - abar) ** m, QQ_I)
            else:
                factor = dup_strip([root - abar, alpha - root])
                bottom = dup_mul(bottom, dup_pow(factor, m, QQ_I), QQ_I)
        total = self.denom_degree
        if total >= d:
            top = dup_mul(top, dup_pow(one_minus_mu, total - d, QQ_I), QQ_I)
        else:
            bottom = dup_mul(bottom, dup_pow(one_minus_mu, d - total, QQ_I), QQ_I)
        series = _series_quotient(top, bottom, j_hi + shift + 1)
        return [
            series[j + shift] if 0 <= j + shift < len(series) else ZERO
            for j in range(j_lo, j_hi + 1)
        ]


def _series_quotient(top: List[Scalar], bottom: List[Scalar], count: int) -> List[Scalar]:
    """First ``count`` power-series coefficients of top/bottom, bottom(0) != 0."""
    a = list(reversed(top))
    b = list(reversed(bottom))
    out: List[Scalar] = []
    for n in range(max(count, 0)):
        acc = a[n] if n < len(a) else ZERO
        for i in range(1, min(n, len(b) - 1) + 1):
            acc = acc - b[i] * out[n - i]
        out.append(acc / b[0])
    return out


def _coerce(value: object) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction.constant(as_scalar(value))


# =============================================================================
# Moebius chart and module-level operations
# =============================================================================

@dataclass(frozen=True)
class MoebiusChart:
    """The coordinate mu = (lam - alpha)/(lam - conj(alpha)) around alpha."""

    alpha: Scalar

    def __post_init__(self) -> None:
        if not self.alpha.y:
            raise InvalidRealPole(f"chart centre {format_scalar(self.alpha)} is real")

    def mu(self, power: int = 1) -> RationalFunction:
        return RationalFunction.mobius(self.alpha, power)

    def lam_at(self, mu: Scalar) -> Scalar:
        """Inverse chart: lam(mu) = (alpha - conj(alpha)*mu)/(1 - mu)."""
        return (self.alpha - conj(self.alpha) * mu) / (ONE - mu)


def rf_normalize(numer: Polynomial, denom: Polynomial) -> RationalFunction:
    if denom.is_zero:
        raise ZeroDivisionError("zero denominator")
    roots = denom.split()
    return RationalFunction.build(numer.scale(ONE / denom.lead), roots)


def rf_eval(f: RationalFunction, point: object) -> Scalar:
    return f.evaluate(point)


def rf_conj_coeff(f: RationalFunction) -> RationalFunction:
    return f.conj_coeff()


def moebius_laurent(
    f: RationalFunction, chart: MoebiusChart, j_lo: int, j_hi: int
) -> List[Scalar]:
    return f.laurent(chart.alpha, j_lo, j_hi)


def pole_order(f: RationalFunction, alpha: Scalar) -> int:
    return f.pole_order(alpha)
