"""
Document-level operations shared by the CLI and the MCP server.

Each function takes parsed JSON documents (or plain arguments) and returns
a JSON-ready document. Library errors propagate unchanged.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .affineg2 import (
    AbelianData,
    TorusData,
    affine_basis,
    eigenspace_dimensions,
    in_g2,
    in_phat,
    theta_coefficients,
    theta_curvature,
    v_from_pqr,
)
from .documents import (
    Document,
    check_report_document,
    loop_from_document,
    loop_to_document,
    result_from_document,
    result_to_document,
    specs_from_document,
    specs_to_document,
    spec_to_json,
)
from .dressperm import dress, permute
from .errors import DimensionMismatch, InvalidFactorSpec
from .exactnum import format_scalar, parse_scalar
from .factorize import DEFAULT_BUDGET_MULTIPLIER, factor_loop, factor_twisted, verify_product
from .formsla import Subspace
from .loops import GroupContext, GroupKind, TwistContext, membership, pole_spectrum, symmetry_check
from .octonion import (
    MULTIPLICATION_TABLE,
    coassoc_classify,
    g2_algebra_basis,
    multiplier_plane,
    relation_rank,
    unit_product,
)
from .sampler import LoopSampler
from .simplefactor import SimpleFactorSpec

logger = logging.getLogger(__name__)


def check(doc: Document) -> Document:
    """Membership, reality, normalization, twisting and pole data of a loop."""
    parsed = loop_from_document(doc)
    report = membership(parsed.loop, parsed.group)
    symmetry = symmetry_check(parsed.loop, parsed.group, parsed.twist)
    return check_report_document(
        parsed.group, parsed.twist, report, symmetry, pole_spectrum(parsed.loop)
    )


def factor(
    doc: Document, budget_multiplier: int = DEFAULT_BUDGET_MULTIPLIER, trace: bool = False
) -> Document:
    parsed = loop_from_document(doc)
    if parsed.twist is not None:
        result = factor_twisted(parsed.loop, parsed.twist, budget_multiplier)
    else:
        result = factor_loop(parsed.loop, parsed.group, budget_multiplier)
    logger.info("factored %s loop into %d factors", parsed.group.kind.value, len(result.factors))
    return result_to_document(result, trace=trace)


def verify(loop_doc: Document, result_doc: Document) -> Document:
    parsed = loop_from_document(loop_doc)
    result = result_from_document(result_doc)
    ok = verify_product(result, parsed.loop)
    return {"verified": ok, "factors": len(result.factors)}


def _single_spec(doc: Document, count: int) -> Tuple[GroupContext, List[SimpleFactorSpec]]:
    group, _twist, factors = specs_from_document(doc)
    if len(factors) != count:
        raise InvalidFactorSpec(f"expected {count} factor(s), found {len(factors)}")
    if not all(isinstance(f, SimpleFactorSpec) for f in factors):
        raise InvalidFactorSpec("dressing and permutability take simple elements")
    return group, list(factors)


def dress_loop(spec_doc: Document, loop_doc: Document) -> Document:
    group, (p,) = _single_spec(spec_doc, 1)
    parsed = loop_from_document(loop_doc)
    outcome = dress(p, parsed.loop)
    doc = loop_to_document(outcome.conjugated, group)
    doc["right_factor"] = spec_to_json(outcome.right_factor)
    return doc


def permute_pair(spec_doc: Document) -> Document:
    """(p1, p2) -> (p2hat, p1hat) with p2hat p1 == p1hat p2."""
    group, (p1, p2) = _single_spec(spec_doc, 2)
    p2hat, p1hat = permute(p1, p2)
    doc = specs_to_document([p2hat, p1hat], group)
    doc["identity"] = "p2hat p1 == p1hat p2"
    return doc


def _group_for(name: str, n: int) -> GroupContext:
    kind = GroupKind(name)
    if kind is GroupKind.CSP:
        return GroupContext.csp(n)
    if kind is GroupKind.G2:
        return GroupContext.g2()
    return GroupContext(kind, n)


def random_loop(
    group: str,
    n: int,
    factors: int = 3,
    seed: int = 0,
    twist: Optional[str] = None,
    k: int = 0,
    entry_range: int = 3,
    pole_range: int = 3,
) -> Tuple[Document, Document]:
    """(loop document, factor document) of a seeded random product.

    ``n`` is the group index: SO(n), CSp(n) of size 2n, ignored for G2.
    """
    ctx = _group_for(group, n)
    if ctx.size < 1:
        raise DimensionMismatch("group size must be positive")
    sampler = LoopSampler(seed, entry_range, pole_range)
    if twist is None:
        specs = sampler.factor_specs(ctx, factors)
        twist_ctx = None
    else:
        twist_ctx = TwistContext.parse(twist, ctx.size, k)
        if twist_ctx.group() is not ctx.kind:
            raise DimensionMismatch(f"twist {twist} does not act on {group} loops")
        specs = sampler.twisted_specs(twist_ctx, factors)
    factor_doc = specs_to_document(specs, ctx, twist_ctx)
    product = result_from_document(factor_doc).product()
    return loop_to_document(product, ctx, twist_ctx), factor_doc


# =============================================================================
# Octonion and affine queries
# =============================================================================

def octonion_table() -> Document:
    return {"table": [list(row) for row in MULTIPLICATION_TABLE]}


def octonion_product(i: int, j: int) -> Document:
    if not (1 <= i <= 7 and 1 <= j <= 7):
        raise DimensionMismatch("unit indices run from 1 to 7")
    sign, k = unit_product(i, j)
    return {"i": i, "j": j, "sign": sign, "unit": k}


def g2_dimension() -> Document:
    return {"relation_rank": relation_rank(), "dimension": len(g2_algebra_basis())}


def _parse_vectors(vectors: Sequence[Sequence[str]]) -> List[Tuple[Any, ...]]:
    parsed = [tuple(parse_scalar(c) for c in v) for v in vectors]
    if any(len(v) != 7 for v in parsed):
        raise DimensionMismatch("octonion queries take vectors in C^7")
    return parsed


def _basis_json(space: Subspace) -> List[List[str]]:
    return [[format_scalar(c) for c in v] for v in space.basis]


def octonion_multiplier(vector: Sequence[str]) -> Document:
    """The plane of vectors annihilated on the right by an isotropic line."""
    (v,) = _parse_vectors([vector])
    return {"multiplier_plane": _basis_json(multiplier_plane(Subspace.line(v)))}


def octonion_classify(vectors: Sequence[Sequence[str]]) -> Document:
    plane = Subspace.from_vectors(_parse_vectors(vectors), 7)
    report = coassoc_classify(plane)
    ok = report.complex_coassociative
    return {
        "complex_coassociative": ok,
        "associative_part": _basis_json(report.associative_part) if ok else None,
    }


def affine_eigenspaces() -> Document:
    plus, minus = eigenspace_dimensions()
    return {"basis": len(affine_basis()), "khat": plus, "phat": minus}


def affine_curvature(values: Dict[str, str], lam: Optional[str] = None) -> Document:
    """Flatness of the connection for v built from (p, q, r)."""
    data = AbelianData.of(**{key: parse_scalar(v) for key, v in values.items()})
    v = v_from_pqr(data)
    squared, linear, constant = theta_coefficients(v)
    torus = TorusData.standard()
    doc: Document = {
        "in_phat": in_phat(v),
        "in_g2": in_g2(v),
        "torus_commute": torus.b1.commutator(torus.b2).is_zero,
        "flat": squared.is_zero and linear.is_zero and constant.is_zero,
        "vanishing": {"lam2": squared.is_zero, "lam1": linear.is_zero, "lam0": constant.is_zero},
    }
    if lam is not None:
        doc["curvature_zero_at_lam"] = theta_curvature(v, parse_scalar(lam)).is_zero
    return doc
