"""
Dressing of loops by simple elements and the permutability identities.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .errors import DimensionMismatch, IdentityMismatch, InvalidFactorSpec, PoleClash
from .exactnum import conj, format_scalar
from .formsla import Subspace
from .loops import GroupContext, GroupKind, MatrixLoop, membership
from .simplefactor import (
    FactorVariant,
    SimpleFactorSpec,
    inverse_closed_form,
    materialize,
    moved_spec,
    require_valid,
)

logger = logging.getLogger(__name__)

_DATA_NAMES = {
    FactorVariant.GL: ("W",),
    FactorVariant.CSP: ("W",),
    FactorVariant.SO: ("L",),
    FactorVariant.G2: ("C",),
    FactorVariant.G2_PAIR: ("L", "K"),
    FactorVariant.SO_PAIR: ("L", "K"),
}


@dataclass
class DressingOutcome:
    conjugated: MatrixLoop  # p h p'^-1
    right_factor: SimpleFactorSpec  # p'
    moved_subspaces: Dict[str, Subspace] = field(default_factory=dict)


def group_of(spec: SimpleFactorSpec) -> GroupContext:
    return GroupContext(spec.group, spec.size)


def dress(p: SimpleFactorSpec, h: MatrixLoop) -> DressingOutcome:
    """p * h = p h p'^-1, holomorphic at the poles of p."""
    if h.n != p.size:
        raise DimensionMismatch(f"factor acts on C^{p.size}, loop has size {h.n}")
    moved = moved_spec(p, h)
    conjugated = materialize(p) @ h @ inverse_closed_form(moved)

    points = [p.alpha]
    if p.group in (GroupKind.SO, GroupKind.G2):
        points.append(conj(p.alpha))
    for point in points:
        if conjugated.pole_order(point):
            raise IdentityMismatch(f"dressed loop keeps a pole at {format_scalar(point)}")
    if not membership(conjugated, group_of(p)).member:
        raise IdentityMismatch("dressed loop left the group")

    names = _DATA_NAMES[moved.variant]
    logger.debug("dressed by %s; moved to %s", p.describe(), moved.describe())
    return DressingOutcome(conjugated, moved, dict(zip(names, moved.data)))


def permute(
    p1: SimpleFactorSpec, p2: SimpleFactorSpec
) -> Tuple[SimpleFactorSpec, SimpleFactorSpec]:
    """(p2hat, p1hat) with p2hat p1 == p1hat p2, asserted exactly."""
    alpha, beta = p1.alpha, p2.alpha
    if alpha == beta or alpha == conj(beta):
        raise PoleClash(
            f"poles {format_scalar(alpha)} and {format_scalar(beta)} coincide up to conjugation"
        )
    if p1.group is not p2.group or p1.size != p2.size:
        raise InvalidFactorSpec("permutability needs two factors of the same group")
    require_valid(p1)
    require_valid(p2)

    p2hat = moved_spec(p2, inverse_closed_form(p1))
    p1hat = moved_spec(p1, inverse_closed_form(p2))
    if materialize(p2hat) @ materialize(p1) != materialize(p1hat) @ materialize(p2):
        raise IdentityMismatch("permutability identity failed")
    logger.debug("permuted %s and %s", p1.describe(), p2.describe())
    return p2hat, p1hat
