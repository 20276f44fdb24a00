"""
Simple elements and twisted q-elements.

A ``SimpleFactorSpec`` is the symbolic descriptor of a simple loop: its group
variant, its pole alpha and the subspace data. ``materialize`` builds the
exact loop from hermitian projections and the Moebius factor
mu = (lam - alpha)/(lam - conj(alpha)):

    GL, CSp   mu pi_W + (I - pi_W)
    SO        mu^-1 pi_conj(L) + (I - pi_L - pi_conj(L)) + mu pi_L
    G2        the SO formula with the coassociative plane C in place of L
    G2 pair   SO(alpha, L) * SO(alpha, K)
    SO pair   SO(alpha, L) * SO(alpha, K), L + K isotropic and L, K hermitian-orthogonal

``moved_spec`` implements the subspace transport p -> p' shared by the
q-elements, dressing and permutability.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import List, Tuple, Union

from .errors import (
    AlphaOnAxis,
    HolomorphyPrecondition,
    IdentityMismatch,
    InvalidFactorSpec,
    SingularAtAlpha,
)
from .exactnum import RationalFunction, Scalar, conj, format_scalar, is_imaginary
from .formsla import (
    FormContext,
    MatrixC,
    Subspace,
    bilinear,
    conj_vector,
    hermitian,
    hermitian_projection,
    isotropic_classify,
)
from .loops import GroupKind, MatrixLoop, TwistContext
from .octonion import coassoc_classify

logger = logging.getLogger(__name__)


class FactorVariant(Enum):
    GL = "GL"
    SO = "SO"
    CSP = "CSp"
    G2 = "G2"
    G2_PAIR = "G2Pair"
    SO_PAIR = "SOPair"


_GROUP_OF_VARIANT = {
    FactorVariant.GL: GroupKind.GL,
    FactorVariant.SO: GroupKind.SO,
    FactorVariant.CSP: GroupKind.CSP,
    FactorVariant.G2: GroupKind.G2,
    FactorVariant.G2_PAIR: GroupKind.G2,
    FactorVariant.SO_PAIR: GroupKind.SO,
}

PAIR_VARIANTS = frozenset({FactorVariant.G2_PAIR, FactorVariant.SO_PAIR})


@dataclass(frozen=True)
class SimpleFactorSpec:
    """p_{alpha, data}; data is (W,), (L,), (W,), (C,) or (L, K) by variant."""

    variant: FactorVariant
    alpha: Scalar
    data: Tuple[Subspace, ...]

    @classmethod
    def gl(cls, alpha: Scalar, w: Subspace) -> "SimpleFactorSpec":
        return cls(FactorVariant.GL, alpha, (w,))

    @classmethod
    def so(cls, alpha: Scalar, line: Subspace) -> "SimpleFactorSpec":
        return cls(FactorVariant.SO, alpha, (line,))

    @classmethod
    def csp(cls, alpha: Scalar, w: Subspace) -> "SimpleFactorSpec":
        return cls(FactorVariant.CSP, alpha, (w,))

    @classmethod
    def g2(cls, alpha: Scalar, plane: Subspace) -> "SimpleFactorSpec":
        return cls(FactorVariant.G2, alpha, (plane,))

    @classmethod
    def g2_pair(cls, alpha: Scalar, line: Subspace, other: Subspace) -> "SimpleFactorSpec":
        return cls(FactorVariant.G2_PAIR, alpha, (line, other))

    @classmethod
    def so_pair(cls, alpha: Scalar, line: Subspace, other: Subspace) -> "SimpleFactorSpec":
        return cls(FactorVariant.SO_PAIR, alpha, (line, other))

    @property
    def is_pair(self) -> bool:
        return self.variant in PAIR_VARIANTS

    @property
    def size(self) -> int:
        return self.data[0].ambient

    @property
    def group(self) -> GroupKind:
        return _GROUP_OF_VARIANT[self.variant]

    @property
    def subspace(self) -> Subspace:
        return self.data[0]

    def describe(self) -> str:
        dims = ", ".join(f"dim {s.dim}" for s in self.data)
        return f"{self.variant.value}({format_scalar(self.alpha)}; {dims})"


@dataclass(frozen=True)
class TwistedQSpec:
    """q_base = p'_partner * p_base; ``inverted`` stands for q^-1."""

    base: SimpleFactorSpec
    twist: TwistContext
    inverted: bool = False

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def alpha(self) -> Scalar:
        return self.base.alpha

    def describe(self) -> str:
        mark = "^-1" if self.inverted else ""
        return f"q[{self.base.describe()}]{mark}"


FactorSpec = Union[SimpleFactorSpec, TwistedQSpec]


# =============================================================================
# Validation
# =============================================================================

@dataclass
class ValidationReport:
    ok: bool
    violations: List[str] = field(default_factory=list)


def _pair_plane(line: Subspace, other: Subspace) -> Subspace:
    """L + pi K with pi the hermitian projection onto (L + conj(L))^perp."""
    complement = (line + line.conjugate()).hermitian_complement()
    pi = hermitian_projection(complement)
    return line + other.image(pi)


def validate(spec: SimpleFactorSpec) -> ValidationReport:
    problems: List[str] = []
    if not spec.alpha.y:
        problems.append(f"pole {format_scalar(spec.alpha)} is real")
    if any(s.ambient != spec.size for s in spec.data):
        problems.append("subspaces live in different ambient spaces")
        return ValidationReport(False, problems)
    bilinear_form = FormContext.bilinear()

    if spec.variant is FactorVariant.SO:
        line = spec.subspace
        if line.dim != 1:
            problems.append(f"L must be a line, got dimension {line.dim}")
        elif not bilinear_form.vanishes_on(line):
            problems.append("L is not isotropic")
    elif spec.variant is FactorVariant.CSP:
        w = spec.subspace
        if spec.size % 2:
            problems.append("CSp factors need an even ambient dimension")
        elif not isotropic_classify(w, FormContext.symplectic(spec.size // 2)).lagrangian:
            problems.append("W is not Lagrangian")
    elif spec.variant is FactorVariant.G2:
        if spec.size != 7:
            problems.append("G2 factors act on C^7")
        elif not coassoc_classify(spec.subspace).complex_coassociative:
            problems.append("C is not complex coassociative")
    elif spec.variant is FactorVariant.G2_PAIR:
        problems.extend(_pair_violations(*spec.data))
    elif spec.variant is FactorVariant.SO_PAIR:
        problems.extend(_so_pair_violations(*spec.data))
    return ValidationReport(not problems, problems)


def _pair_violations(line: Subspace, other: Subspace) -> List[str]:
    problems: List[str] = []
    if line.ambient != 7:
        return ["G2 pairs act on C^7"]
    if line.dim != 1 or other.dim != 1:
        return ["L and K must be lines"]
    l, k = line.basis[0], other.basis[0]
    if bilinear(l, l) or bilinear(k, k):
        problems.append("L and K must be isotropic")
    # K inside the bilinear complement of conj(L)
    if bilinear(conj_vector(l), k):
        problems.append("K is not orthogonal to conj(L)")
    plane = _pair_plane(line, other)
    if plane.dim != 2 or not coassoc_classify(plane).complex_coassociative:
        problems.append("L + pi(K) is not complex coassociative")
    return problems


def _so_pair_violations(line: Subspace, other: Subspace) -> List[str]:
    if line.dim != 1 or other.dim != 1:
        return ["L and K must be lines"]
    l, k = line.basis[0], other.basis[0]
    problems: List[str] = []
    if bilinear(l, l) or bilinear(k, k) or bilinear(l, k):
        problems.append("L + K is not isotropic")
    if hermitian(l, k):
        problems.append("L and K are not hermitian-orthogonal")
    if (line + other).dim != 2:
        problems.append("L and K coincide")
    return problems


def require_valid(spec: SimpleFactorSpec) -> None:
    report = validate(spec)
    if not report.ok:
        raise InvalidFactorSpec(f"{spec.describe()}: " + "; ".join(report.violations))


# =============================================================================
# Materialization
# =============================================================================

def _so_shape(alpha: Scalar, space: Subspace) -> MatrixLoop:
    n = space.ambient
    pi = hermitian_projection(space)
    pi_bar = hermitian_projection(space.conjugate())
    middle = MatrixC.identity(n) - pi - pi_bar
    return MatrixLoop.weighted_sum(
        [
            (RationalFunction.mobius(alpha, -1), pi_bar),
            (RationalFunction.one(), middle),
            (RationalFunction.mobius(alpha, 1), pi),
        ]
    )


def _scaled_shape(alpha: Scalar, space: Subspace, power: int) -> MatrixLoop:
    n = space.ambient
    pi = hermitian_projection(space)
    return MatrixLoop.weighted_sum(
        [
            (RationalFunction.mobius(alpha, power), pi),
            (RationalFunction.one(), MatrixC.identity(n) - pi),
        ]
    )


@lru_cache(maxsize=512)
def _materialize_simple(spec: SimpleFactorSpec) -> MatrixLoop:
    if spec.variant in (FactorVariant.GL, FactorVariant.CSP):
        return _scaled_shape(spec.alpha, spec.subspace, 1)
    if spec.is_pair:
        line, other = spec.data
        return _so_shape(spec.alpha, line) @ _so_shape(spec.alpha, other)
    return _so_shape(spec.alpha, spec.subspace)


def materialize(spec: FactorSpec) -> MatrixLoop:
    """The exact loop of a simple element or q-element."""
    if isinstance(spec, TwistedQSpec):
        return make_twisted_q(spec)[0]
    return _materialize_simple(spec)


def inverse_spec(spec: FactorSpec) -> FactorSpec:
    """The simple element whose loop is the inverse of ``spec``'s loop."""
    if isinstance(spec, TwistedQSpec):
        return TwistedQSpec(spec.base, spec.twist, not spec.inverted)
    if spec.variant in (FactorVariant.GL, FactorVariant.CSP):
        return SimpleFactorSpec(spec.variant, conj(spec.alpha), spec.data)
    if spec.is_pair:
        line, other = spec.data
        return SimpleFactorSpec(spec.variant, spec.alpha, (other.conjugate(), line.conjugate()))
    return SimpleFactorSpec(spec.variant, spec.alpha, (spec.subspace.conjugate(),))


def inverse_closed_form(spec: FactorSpec) -> MatrixLoop:
    if isinstance(spec, SimpleFactorSpec) and spec.variant in (FactorVariant.GL, FactorVariant.CSP):
        return _scaled_shape(spec.alpha, spec.subspace, -1)
    return materialize(inverse_spec(spec))


def as_pair(spec: SimpleFactorSpec) -> SimpleFactorSpec:
    """Rewrite G2(alpha, C) as the pair (L, C intersect L^perp) with the same loop."""
    if spec.variant is not FactorVariant.G2:
        return spec
    plane = spec.subspace
    line = Subspace.line(plane.basis[0])
    return SimpleFactorSpec.g2_pair(spec.alpha, line, plane.intersect(line.hermitian_complement()))


def collapse_pair(spec: SimpleFactorSpec) -> SimpleFactorSpec:
    """G2(alpha, L + K) when K already lies in (L + conj(L))^perp."""
    if spec.variant is not FactorVariant.G2_PAIR:
        return spec
    line, other = spec.data
    if (line + line.conjugate()).hermitian_complement().contains_subspace(other):
        plane = line + other
        if coassoc_classify(plane).complex_coassociative:
            return SimpleFactorSpec.g2(spec.alpha, plane)
    return spec


# =============================================================================
# Subspace transport
# =============================================================================

def _value_inverse(h: MatrixLoop, point: Scalar) -> MatrixC:
    if h.pole_order(point):
        raise HolomorphyPrecondition(f"loop has a pole at {format_scalar(point)}")
    value = h.evaluate(point)
    if not value.det():
        raise SingularAtAlpha(f"loop is singular at {format_scalar(point)}")
    return value.inverse()


def moved_spec(spec: SimpleFactorSpec, h: MatrixLoop) -> SimpleFactorSpec:
    """p' for p = spec: the factor with p h p'^-1 holomorphic at the poles of p.

    GL, CSp and SO move their subspace by h(alpha)^-1. A pair (L, K) first
    moves K' = h(alpha)^-1 K and then L' = h1(alpha)^-1 L with
    h1 = p_K h p_K'^-1.
    """
    alpha = spec.alpha
    if spec.group in (GroupKind.SO, GroupKind.G2):
        _value_inverse(h, conj(alpha))
    if spec.variant is FactorVariant.G2:
        return collapse_pair(moved_spec(as_pair(spec), h))
    if not spec.is_pair:
        moved = spec.subspace.image(_value_inverse(h, alpha))
        logger.debug("moved %s to dimension-%d subspace", spec.describe(), moved.dim)
        return SimpleFactorSpec(spec.variant, alpha, (moved,))
    line, other = spec.data
    other_moved = other.image(_value_inverse(h, alpha))
    h1 = (
        _so_shape(alpha, other)
        @ h
        @ inverse_closed_form(SimpleFactorSpec.so(alpha, other_moved))
    )
    if h1.pole_order(alpha):
        raise IdentityMismatch("p_K h p_K'^-1 is not holomorphic at the pole")
    line_moved = line.image(_value_inverse(h1, alpha))
    logger.debug("moved pair %s", spec.describe())
    return SimpleFactorSpec(spec.variant, alpha, (line_moved, other_moved))


# =============================================================================
# Twisted q-elements
# =============================================================================

def twist_subspace(space: Subspace, twist: TwistContext) -> Subspace:
    return space.image(twist.s)


def _partner(spec: SimpleFactorSpec, twist: TwistContext) -> SimpleFactorSpec:
    """The factor at the reflected pole that the q-element pairs with ``spec``."""
    beta = spec.alpha
    if spec.variant is FactorVariant.CSP:
        return SimpleFactorSpec.csp(-conj(beta), spec.subspace.conjugate())
    if spec.variant is FactorVariant.SO:
        return SimpleFactorSpec.so(-beta, twist_subspace(spec.subspace, twist))
    line, other = spec.data
    return SimpleFactorSpec(
        spec.variant, -beta, (twist_subspace(line, twist), twist_subspace(other, twist))
    )


def q_constituents(spec: TwistedQSpec) -> Tuple[SimpleFactorSpec, SimpleFactorSpec]:
    """(p', p) with q = p' p."""
    base = as_pair(spec.base)
    beta = base.alpha
    if not beta.y or is_imaginary(beta):
        raise AlphaOnAxis(f"q-elements need a pole off the axes, got {format_scalar(beta)}")
    if base.variant is FactorVariant.GL:
        raise InvalidFactorSpec("GL factors have no twisted q-element")
    if base.group is not spec.twist.group():
        raise InvalidFactorSpec(
            f"{spec.twist.flavor.value} twist does not act on {base.variant.value} factors"
        )
    partner = moved_spec(_partner(base, spec.twist), inverse_closed_form(base))
    return partner, base


def make_twisted_q(spec: TwistedQSpec) -> Tuple[MatrixLoop, List[SimpleFactorSpec]]:
    """The loop q (or q^-1 when inverted) with its constituent factor specs."""
    partner, base = q_constituents(spec)
    if spec.inverted:
        loop = inverse_closed_form(base) @ inverse_closed_form(partner)
    else:
        loop = materialize(partner) @ materialize(base)
    return loop, [partner, base]


def factor_poles(spec: FactorSpec) -> List[Scalar]:
    """Poles of the materialized loop."""
    alpha = spec.alpha
    points = [alpha, conj(alpha)]
    if isinstance(spec, TwistedQSpec):
        points += [-alpha, -conj(alpha)]
    return points
