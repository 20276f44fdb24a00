"""
JSON documents for loops, factor lists and results.

A loop document::

    {
      "group": "so",
      "n": 3,
      "twist": null,
      "entries": [[{"num": ["1", "i"], "den": [{"root": "i", "mult": 1}], "scale": "1"}, ...], ...]
    }

``n`` is the matrix size. Coefficients are ascending, scalars use the
"a/b+c/d*i" syntax, and ``scale`` multiplies the numerator on read. Emitted
documents are canonical: reduced entries, sorted denominator roots and
``scale`` "1", so emit(parse(emit(x))) == emit(x).
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from .errors import DimensionMismatch, ParseError
from .exactnum import Polynomial, RationalFunction, Scalar, format_scalar, parse_scalar
from .factorize import FactorizationResult, FactorStep
from .formsla import Subspace, Vector
from .loops import (
    GroupContext,
    MatrixLoop,
    MembershipReport,
    SymmetryReport,
    TotalDegree,
    TwistContext,
)
from .simplefactor import (
    PAIR_VARIANTS,
    FactorSpec,
    FactorVariant,
    SimpleFactorSpec,
    TwistedQSpec,
)

Document = Dict[str, Any]


def loads(text: str) -> Document:
    """Decode JSON, reporting the position of syntax errors."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from e
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object", path="$")
    return data


def read_document(path: Union[str, Path]) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    return loads(text)


def dumps(doc: Document) -> str:
    return json.dumps(doc, indent=2) + "\n"


# =============================================================================
# Field helpers
# =============================================================================

def _field(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path=path)
    if key not in obj:
        raise ParseError(f"missing field {key!r}", path=path)
    return obj[key]


def _list(value: Any, path: str) -> List[Any]:
    if not isinstance(value, list):
        raise ParseError("expected a list", path=path)
    return value


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError("expected an integer", path=path)
    return value


def _scalar(value: Any, path: str) -> Scalar:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError("expected a scalar string", path=path)
    try:
        return parse_scalar(str(value))
    except ParseError as e:
        raise ParseError(str(e), path=path) from e


# =============================================================================
# Rational functions and loops
# =============================================================================

def rf_to_json(f: RationalFunction) -> Document:
    return {
        "num": [format_scalar(c) for c in f.numer.coeffs],
        "den": [{"root": format_scalar(r), "mult": m} for r, m in f.denom_factors],
        "scale": "1",
    }


def rf_from_json(obj: Any, path: str) -> RationalFunction:
    num = _list(_field(obj, "num", path), f"{path}.num")
    coeffs = [_scalar(c, f"{path}.num[{k}]") for k, c in enumerate(num)]
    den = _list(obj.get("den", []), f"{path}.den")
    factors = []
    for k, item in enumerate(den):
        where = f"{path}.den[{k}]"
        mult = _int(_field(item, "mult", where), f"{where}.mult")
        if mult < 0:
            raise ParseError("multiplicity must be non-negative", path=f"{where}.mult")
        factors.append((_scalar(_field(item, "root", where), f"{where}.root"), mult))
    scale = _scalar(obj.get("scale", "1"), f"{path}.scale")
    numer = Polynomial.from_coeffs(coeffs).scale(scale)
    return RationalFunction.build(numer, factors)


@dataclass(frozen=True)
class LoopDocument:
    group: GroupContext
    loop: MatrixLoop
    twist: Optional[TwistContext] = None


def twist_to_json(twist: Optional[TwistContext]) -> Optional[Document]:
    if twist is None:
        return None
    return {"flavor": twist.flavor.value, "k": twist.k}


def _twist_from_json(obj: Any, size: int) -> Optional[TwistContext]:
    if obj is None:
        return None
    if isinstance(obj, str):
        obj = {"flavor": obj}
    flavor = _field(obj, "flavor", "$.twist")
    k = _int(obj.get("k", 0), "$.twist.k")
    try:
        return TwistContext.parse(str(flavor), size, k)
    except ValueError as e:
        raise ParseError(f"unknown twist flavor {flavor!r}", path="$.twist.flavor") from e


def _header_from_json(doc: Document) -> tuple:
    name = _field(doc, "group", "$")
    size = _int(_field(doc, "n", "$"), "$.n")
    if size < 1:
        raise DimensionMismatch("matrix size must be positive")
    try:
        group = GroupContext.parse(str(name), size)
    except ValueError as e:
        raise ParseError(f"unknown group {name!r}", path="$.group") from e
    return group, _twist_from_json(doc.get("twist"), size)


def _header_to_json(group: GroupContext, twist: Optional[TwistContext]) -> Document:
    return {"group": group.kind.value, "n": group.size, "twist": twist_to_json(twist)}


def loop_to_document(loop: MatrixLoop, group: GroupContext, twist: Optional[TwistContext] = None) -> Document:
    doc = _header_to_json(group, twist)
    doc["entries"] = [[rf_to_json(e) for e in row] for row in loop.entries]
    return doc


def loop_from_document(doc: Document) -> LoopDocument:
    group, twist = _header_from_json(doc)
    rows = _list(_field(doc, "entries", "$"), "$.entries")
    if len(rows) != group.size:
        raise DimensionMismatch(f"expected {group.size} rows, found {len(rows)}")
    entries = []
    for i, row in enumerate(rows):
        row = _list(row, f"$.entries[{i}]")
        if len(row) != group.size:
            raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {group.size}")
        entries.append([rf_from_json(e, f"$.entries[{i}][{j}]") for j, e in enumerate(row)])
    return LoopDocument(group, MatrixLoop.from_rows(entries), twist)


def identity_document(group: GroupContext) -> Document:
    return loop_to_document(MatrixLoop.identity(group.size), group)


# =============================================================================
# Factor specifications
# =============================================================================

def _vectors_to_json(space: Subspace) -> List[List[str]]:
    return [[format_scalar(c) for c in v] for v in space.basis]


def _subspace_from_json(value: Any, ambient: int, path: str) -> Subspace:
    vectors: List[Vector] = []
    for k, v in enumerate(_list(value, path)):
        v = _list(v, f"{path}[{k}]")
        if len(v) != ambient:
            raise DimensionMismatch(f"vector at {path}[{k}] has length {len(v)}, expected {ambient}")
        vectors.append(tuple(_scalar(c, f"{path}[{k}][{j}]") for j, c in enumerate(v)))
    return Subspace.from_vectors(vectors, ambient)


def spec_to_json(spec: FactorSpec) -> Document:
    if isinstance(spec, TwistedQSpec):
        return {"variant": "q", "base": spec_to_json(spec.base), "inverted": spec.inverted}
    return {
        "variant": spec.variant.value,
        "alpha": format_scalar(spec.alpha),
        "data": [_vectors_to_json(s) for s in spec.data],
    }


def spec_from_json(
    obj: Any, size: int, twist: Optional[TwistContext] = None, path: str = "$"
) -> FactorSpec:
    variant = _field(obj, "variant", path)
    if variant == "q":
        if twist is None:
            raise ParseError("q-elements need a twist in the document header", path=path)
        base = spec_from_json(_field(obj, "base", path), size, None, f"{path}.base")
        if not isinstance(base, SimpleFactorSpec):
            raise ParseError("the base of a q-element must be a simple element", path=f"{path}.base")
        return TwistedQSpec(base, twist, bool(obj.get("inverted", False)))
    try:
        kind = FactorVariant(variant)
    except ValueError as e:
        raise ParseError(f"unknown variant {variant!r}", path=f"{path}.variant") from e
    alpha = _scalar(_field(obj, "alpha", path), f"{path}.alpha")
    data = _list(_field(obj, "data", path), f"{path}.data")
    expected = 2 if kind in PAIR_VARIANTS else 1
    if len(data) != expected:
        raise ParseError(f"{kind.value} takes {expected} subspace(s)", path=f"{path}.data")
    spaces = tuple(
        _subspace_from_json(d, size, f"{path}.data[{k}]") for k, d in enumerate(data)
    )
    return SimpleFactorSpec(kind, alpha, spaces)


def specs_from_document(doc: Document) -> tuple:
    """(group, twist, factors) of a document carrying a "factors" list."""
    group, twist = _header_from_json(doc)
    items = _list(_field(doc, "factors", "$"), "$.factors")
    factors = [
        spec_from_json(item, group.size, twist, f"$.factors[{k}]") for k, item in enumerate(items)
    ]
    return group, twist, factors


def specs_to_document(
    factors: Sequence[FactorSpec], group: GroupContext, twist: Optional[TwistContext] = None
) -> Document:
    doc = _header_to_json(group, twist)
    doc["factors"] = [spec_to_json(f) for f in factors]
    return doc


# =============================================================================
# Results and reports
# =============================================================================

def _degree_to_json(d: TotalDegree) -> List[int]:
    return d.as_list()


def step_to_json(step: FactorStep) -> Document:
    return {
        "pole": format_scalar(step.pole),
        "branch": step.branch,
        "before": _degree_to_json(step.before),
        "after": _degree_to_json(step.after),
        "det_zero_before": step.det_zero_before,
        "det_zero_after": step.det_zero_after,
        "factor": step.factor,
        "decreased": step.decreased,
    }


def result_to_document(result: FactorizationResult, trace: bool = False) -> Document:
    doc = specs_to_document(result.factors, result.group, result.twist)
    doc["residual"] = "identity"
    if trace:
        doc["steps"] = [step_to_json(s) for s in result.steps]
    return doc


def result_from_document(doc: Document) -> FactorizationResult:
    group, twist, factors = specs_from_document(doc)
    return FactorizationResult(group, list(factors), twist=twist)


def rf_text(f: Optional[RationalFunction]) -> Optional[str]:
    """Compact "num / den" rendering for reports."""
    if f is None:
        return None
    terms = [
        f"({format_scalar(c)})*lam^{k}" if k else f"({format_scalar(c)})"
        for k, c in enumerate(f.numer.coeffs)
        if c
    ]
    numer = " + ".join(terms) or "0"
    if not f.denom_factors:
        return numer
    denom = " * ".join(
        f"(lam - ({format_scalar(r)}))" + (f"^{m}" if m != 1 else "") for r, m in f.denom_factors
    )
    return f"[{numer}] / [{denom}]"


def check_report_document(
    group: GroupContext,
    twist: Optional[TwistContext],
    membership: MembershipReport,
    symmetry: SymmetryReport,
    poles: Sequence[tuple],
) -> Document:
    """The ``check`` report: membership, reality, normalization and pole data."""
    doc = _header_to_json(group, twist)
    doc.update(
        {
            "member": membership.member,
            "reason": membership.reason or None,
            "multiplier": rf_text(membership.multiplier),
            "normalized": symmetry.normalized,
            "real": symmetry.real,
            "twisted": symmetry.twisted,
            "poles": [
                {"pole": format_scalar(p), "k": d.k, "rank": d.rank} for p, d in poles
            ],
        }
    )
    doc["ok"] = bool(
        membership.member
        and symmetry.normalized
        and symmetry.real
        and symmetry.twisted is not False
    )
    return doc
