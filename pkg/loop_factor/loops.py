"""
Matrix loops: square matrices of rational functions in lam.

Provides the group contexts (GL, SO, CSp, G2) and twist contexts, loop
arithmetic, determinants and inverses computed by exact interpolation,
Laurent expansions in the Moebius chart at a pole, group membership, the
reality / normalization / twisting checks and the pole spectrum with total
degrees.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.densearith import dup_add, dup_mul
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ_I

from .errors import DimensionMismatch, InvalidRealPole, NotAMember, SingularLoop
from .exactnum import (
    INFINITY,
    ONE,
    ZERO,
    Polynomial,
    RationalFunction,
    Scalar,
    conj,
    format_scalar,
    gq,
    scalar_key,
)
from .formsla import FormContext, MatrixC, symplectic_form, unit_vector
from .octonion import mul_im7

logger = logging.getLogger(__name__)


# =============================================================================
# Contexts
# =============================================================================

class GroupKind(Enum):
    GL = "gl"
    SO = "so"
    CSP = "csp"
    G2 = "g2"


@dataclass(frozen=True)
class GroupContext:
    """A loop group in its fundamental representation.

    ``size`` is the matrix size: n for GL(n) and SO(n), 2n for CSp(n), 7 for G2.
    """

    kind: GroupKind
    size: int

    @classmethod
    def gl(cls, n: int) -> "GroupContext":
        return cls(GroupKind.GL, n)

    @classmethod
    def so(cls, n: int) -> "GroupContext":
        return cls(GroupKind.SO, n)

    @classmethod
    def csp(cls, n: int) -> "GroupContext":
        return cls(GroupKind.CSP, 2 * n)

    @classmethod
    def g2(cls) -> "GroupContext":
        return cls(GroupKind.G2, 7)

    @classmethod
    def parse(cls, name: str, size: int) -> "GroupContext":
        """Build from a document group name and the matrix size."""
        kind = GroupKind(name.lower())
        if kind is GroupKind.CSP and size % 2:
            raise DimensionMismatch("CSp loops need an even matrix size")
        if kind is GroupKind.G2 and size != 7:
            raise DimensionMismatch("G2 loops are 7x7")
        return cls(kind, size)

    @property
    def half(self) -> int:
        return self.size // 2

    @property
    def J(self) -> MatrixC:
        return symplectic_form(self.half)

    @property
    def form(self) -> FormContext:
        if self.kind is GroupKind.CSP:
            return FormContext.symplectic(self.half)
        if self.kind is GroupKind.GL:
            return FormContext.hermitian()
        return FormContext.bilinear()

    @property
    def conjugation_real(self) -> bool:
        """Reality is coefficientwise conjugation (SO, G2) rather than g* g = Id."""
        return self.kind in (GroupKind.SO, GroupKind.G2)


class TwistFlavor(Enum):
    SO_GRASSMANNIAN = "so-grassmannian"
    SO_U = "so-u"
    G2_SO4 = "g2-so4"
    CSP_U = "csp-u"


@dataclass(frozen=True)
class TwistContext:
    """The involution sigma of a twisted loop group.

    For SO and G2 sigma(A) = s A s^-1 with an orthogonal s. For CSp it is
    sigma_c(A) = c_A^-1 J A J^-1 and ``s`` holds J.
    """

    flavor: TwistFlavor
    s: MatrixC
    k: int = 0

    @classmethod
    def so_grassmannian(cls, n: int, k: int) -> "TwistContext":
        if not 0 <= k <= n:
            raise DimensionMismatch(f"Grassmannian index {k} out of range for SO({n})")
        return cls(TwistFlavor.SO_GRASSMANNIAN, MatrixC.diag([1] * k + [-1] * (n - k)), k)

    @classmethod
    def so_u(cls, m: int) -> "TwistContext":
        return cls(TwistFlavor.SO_U, symplectic_form(m))

    @classmethod
    def g2_so4(cls) -> "TwistContext":
        return cls(TwistFlavor.G2_SO4, MatrixC.diag([-1] * 4 + [1] * 3))

    @classmethod
    def csp_u(cls, n: int) -> "TwistContext":
        return cls(TwistFlavor.CSP_U, symplectic_form(n))

    @classmethod
    def parse(cls, name: str, size: int, k: int = 0) -> "TwistContext":
        flavor = TwistFlavor(name)
        if flavor is TwistFlavor.SO_GRASSMANNIAN:
            return cls.so_grassmannian(size, k)
        if flavor is TwistFlavor.SO_U:
            if size % 2:
                raise DimensionMismatch("SO(2m)/U(m) needs an even size")
            return cls.so_u(size // 2)
        if flavor is TwistFlavor.G2_SO4:
            if size != 7:
                raise DimensionMismatch("the G2 twist acts on C^7")
            return cls.g2_so4()
        if size % 2:
            raise DimensionMismatch("CSp twist needs an even size")
        return cls.csp_u(size // 2)

    @property
    def is_symplectic(self) -> bool:
        return self.flavor is TwistFlavor.CSP_U

    def group(self) -> GroupKind:
        if self.flavor is TwistFlavor.CSP_U:
            return GroupKind.CSP
        if self.flavor is TwistFlavor.G2_SO4:
            return GroupKind.G2
        return GroupKind.SO

    def twist_vector(self, v: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        """The antilinear map v -> s*conj(v)."""
        return self.s.apply(tuple(conj(c) for c in v))


# =============================================================================
# Matrix loops
# =============================================================================

Entries = Tuple[Tuple[RationalFunction, ...], ...]


@dataclass(frozen=True)
class MatrixLoop:
    entries: Entries

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[object]]) -> "MatrixLoop":
        data = tuple(
            tuple(e if isinstance(e, RationalFunction) else RationalFunction.constant(e) for e in r)
            for r in rows
        )
        if any(len(r) != len(data) for r in data):
            raise DimensionMismatch("matrix loops must be square")
        return cls(data)

    @classmethod
    def identity(cls, n: int) -> "MatrixLoop":
        return cls.constant(MatrixC.identity(n))

    @classmethod
    def constant(cls, m: MatrixC) -> "MatrixLoop":
        return cls(tuple(tuple(RationalFunction.constant(c) for c in r) for r in m.rows))

    @classmethod
    def weighted_sum(cls, terms: Sequence[Tuple[RationalFunction, MatrixC]]) -> "MatrixLoop":
        """sum f_k M_k for scalar functions f_k and constant matrices M_k."""
        n = terms[0][1].shape[0]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                total = RationalFunction.zero()
                for f, m in terms:
                    if m[i, j]:
                        total = total + f.scale(m[i, j])
                row.append(total)
            rows.append(tuple(row))
        return cls(tuple(rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> RationalFunction:
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> Tuple[RationalFunction, ...]:
        return tuple(row[j] for row in self.entries)

    def __matmul__(self, other: "MatrixLoop") -> "MatrixLoop":
        return loop_mul(self, other)

    def __add__(self, other: "MatrixLoop") -> "MatrixLoop":
        return MatrixLoop(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "MatrixLoop") -> "MatrixLoop":
        return MatrixLoop(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def times(self, f: RationalFunction) -> "MatrixLoop":
        return MatrixLoop(tuple(tuple(e * f for e in r) for r in self.entries))

    def map(self, fn) -> "MatrixLoop":
        return MatrixLoop(tuple(tuple(fn(e) for e in r) for r in self.entries))

    def transpose(self) -> "MatrixLoop":
        return MatrixLoop(tuple(self.column(j) for j in range(self.n)))

    def conj_coeff(self) -> "MatrixLoop":
        return self.map(lambda e: e.conj_coeff())

    def reflect(self) -> "MatrixLoop":
        """g(-lam)."""
        return self.map(lambda e: e.reflect())

    def left(self, m: MatrixC) -> "MatrixLoop":
        return MatrixLoop.constant(m) @ self

    def right(self, m: MatrixC) -> "MatrixLoop":
        return self @ MatrixLoop.constant(m)

    def evaluate(self, x: object) -> MatrixC:
        return MatrixC.from_rows([[e.evaluate(x) for e in r] for r in self.entries], self.n)

    def poles(self) -> List[Scalar]:
        seen: Dict[Scalar, None] = {}
        for row in self.entries:
            for e in row:
                for root in e.poles():
                    seen[root] = None
        return sorted(seen, key=scalar_key)

    def pole_order(self, alpha: Scalar) -> int:
        return max(e.pole_order(alpha) for row in self.entries for e in row)

    def is_identity(self) -> bool:
        return self == MatrixLoop.identity(self.n)

    @property
    def is_constant(self) -> bool:
        return all(e.is_zero or (e.is_polynomial and e.numer.degree == 0) for r in self.entries for e in r)


def loop_mul(a: MatrixLoop, b: MatrixLoop) -> MatrixLoop:
    if a.n != b.n:
        raise DimensionMismatch(f"cannot multiply loops of size {a.n} and {b.n}")
    rows = []
    for i in range(a.n):
        row = []
        for j in range(b.n):
            total = RationalFunction.zero()
            for k in range(a.n):
                if a.entries[i][k] and b.entries[k][j]:
                    total = total + a.entries[i][k] * b.entries[k][j]
            row.append(total)
        rows.append(tuple(row))
    return MatrixLoop(tuple(rows))


def loop_product(loops: Sequence[MatrixLoop], n: int) -> MatrixLoop:
    result = MatrixLoop.identity(n)
    for g in loops:
        result = result @ g
    return result


# =============================================================================
# Determinant and inverse by interpolation
# =============================================================================

def interpolate(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> Polynomial:
    """The polynomial of degree < len(xs) through the points (Newton form)."""
    coef = list(ys)
    count = len(xs)
    for j in range(1, count):
        for i in range(count - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result: List[Scalar] = dup_strip([coef[-1]])
    for i in range(count - 2, -1, -1):
        result = dup_add(dup_mul(result, [ONE, -xs[i]], QQ_I), dup_strip([coef[i]]), QQ_I)
    return Polynomial.from_dup(result)


@dataclass
class _ClearedRows:
    """g = diag(1/D_i) N with polynomial rows N_i and row denominators D_i."""

    numerators: List[List[Polynomial]]
    row_factors: List[Dict[Scalar, int]]
    bound: int

    @classmethod
    def of(cls, g: MatrixLoop) -> "_ClearedRows":
        numerators, row_factors, bound = [], [], 0
        for row in g.entries:
            target: Dict[Scalar, int] = {}
            for e in row:
                for root, m in e.denom_factors:
                    target[root] = max(target.get(root, 0), m)
            polys = [e._lift(target) if e else Polynomial() for e in row]
            numerators.append(polys)
            row_factors.append(target)
            bound += max((p.degree for p in polys if not p.is_zero), default=0)
        return cls(numerators, row_factors, bound)

    def at(self, x: Scalar) -> MatrixC:
        return MatrixC.from_rows([[p(x) for p in row] for row in self.numerators])


def _det_numerator(cleared: _ClearedRows) -> Polynomial:
    xs = [gq(k) for k in range(cleared.bound + 1)]
    return interpolate(xs, [cleared.at(x).det() for x in xs])


def loop_det(g: MatrixLoop) -> RationalFunction:
    """det g as a rational function."""
    cleared = _ClearedRows.of(g)
    numer = _det_numerator(cleared)
    factors = [item for target in cleared.row_factors for item in target.items()]
    return RationalFunction.build(numer, factors)


def zero_order_of_det(g: MatrixLoop, alpha: Scalar) -> int:
    det = loop_det(g)
    if det.is_zero:
        raise SingularLoop("determinant vanishes identically")
    if det.pole_order(alpha):
        return 0
    return det.zero_order(alpha)


def loop_inv(g: MatrixLoop) -> MatrixLoop:
    """g^-1 = adj(N) diag(D) / det(N) with adj(N) interpolated at regular points."""
    cleared = _ClearedRows.of(g)
    det_n = _det_numerator(cleared)
    if det_n.is_zero:
        raise SingularLoop("loop is not invertible: determinant vanishes identically")
    roots = det_n.split() if det_n.degree > 0 else []
    samples: List[Tuple[Scalar, MatrixC]] = []
    k = 0
    while len(samples) < cleared.bound + 1:
        x = gq(k)
        k += 1
        d = det_n(x)
        if not d:
            continue
        samples.append((x, cleared.at(x).inverse().scale(d)))
    xs = [x for x, _ in samples]
    lead_inv = ONE / det_n.lead
    n = g.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            adj = interpolate(xs, [m[i, j] for _, m in samples])
            row.append(
                RationalFunction.build(adj.scale(lead_inv), roots)
                * RationalFunction(_denominator_poly(cleared.row_factors[j]))
            )
        rows.append(tuple(row))
    return MatrixLoop(tuple(rows))


def _denominator_poly(target: Dict[Scalar, int]) -> Polynomial:
    result = Polynomial.constant(ONE)
    for root, m in target.items():
        result = result * Polynomial.linear_factor(root) ** m
    return result


# =============================================================================
# Laurent expansion and total degree
# =============================================================================

@dataclass(frozen=True, order=True)
class TotalDegree:
    """(k, rank g_-k), compared lexicographically."""

    k: int
    rank: int

    def as_list(self) -> List[int]:
        return [self.k, self.rank]


@dataclass
class LaurentExpansion:
    alpha: Scalar
    k: int
    coeffs: Dict[int, MatrixC] = field(default_factory=dict)

    def coeff(self, j: int) -> MatrixC:
        return self.coeffs[j]

    @property
    def leading(self) -> MatrixC:
        return self.coeffs[-self.k]


def laurent_at(g: MatrixLoop, alpha: Scalar, depth: int = 1) -> Tuple[LaurentExpansion, TotalDegree]:
    """Coefficients g_j, -k <= j <= -k + depth, in mu = (lam - alpha)/(lam - conj(alpha))."""
    if not alpha.y:
        raise InvalidRealPole(f"expansion point {format_scalar(alpha)} is real")
    k = g.pole_order(alpha)
    lo, hi = -k, -k + depth
    series = [[e.laurent(alpha, lo, hi) for e in row] for row in g.entries]
    coeffs = {
        j: MatrixC.from_rows([[series[r][c][j - lo] for c in range(g.n)] for r in range(g.n)], g.n)
        for j in range(lo, hi + 1)
    }
    expansion = LaurentExpansion(alpha, k, coeffs)
    return expansion, TotalDegree(k, expansion.leading.rank() if k else 0)


def pole_spectrum(g: MatrixLoop) -> List[Tuple[Scalar, TotalDegree]]:
    """Poles with total degrees, upper half-plane representatives first."""
    poles = g.poles()
    for alpha in poles:
        if not alpha.y:
            raise InvalidRealPole(f"real pole at {format_scalar(alpha)}")
    ordered = [a for a in poles if a.y > 0] + [a for a in poles if a.y < 0]
    return [(alpha, laurent_at(g, alpha, 0)[1]) for alpha in ordered]


# =============================================================================
# Membership and symmetry
# =============================================================================

@dataclass
class MembershipReport:
    member: bool
    multiplier: Optional[RationalFunction] = None
    reason: str = ""


def symplectic_multiplier(g: MatrixLoop, J: MatrixC) -> Optional[RationalFunction]:
    """c with transpose(g) J g == c J, or None."""
    product = g.transpose() @ (MatrixLoop.constant(J) @ g)
    half = g.n // 2
    c = product[0, half]
    expected = MatrixLoop.constant(J).times(c)
    return c if product == expected else None


def _is_orthogonal(g: MatrixLoop) -> bool:
    return (g.transpose() @ g).is_identity()


def _is_automorphism(g: MatrixLoop) -> bool:
    columns = [g.column(j) for j in range(7)]
    for i in range(7):
        for j in range(i + 1, 7):
            image = mul_im7(unit_vector(7, i), unit_vector(7, j))
            k = next(idx for idx, c in enumerate(image) if c)
            lhs = tuple(e.scale(image[k]) for e in columns[k])
            if lhs != mul_im7(columns[i], columns[j]):
                return False
    return True


def membership(g: MatrixLoop, ctx: GroupContext) -> MembershipReport:
    if g.n != ctx.size:
        return MembershipReport(False, reason=f"loop has size {g.n}, group needs {ctx.size}")
    det = loop_det(g)
    if det.is_zero:
        return MembershipReport(False, reason="determinant vanishes identically")
    if ctx.kind is GroupKind.GL:
        return MembershipReport(True)
    if ctx.kind is GroupKind.CSP:
        c = symplectic_multiplier(g, ctx.J)
        if c is None:
            return MembershipReport(False, reason="transpose(g) J g is not a multiple of J")
        return MembershipReport(True, multiplier=c)
    if not _is_orthogonal(g):
        return MembershipReport(False, reason="transpose(g) g is not the identity")
    if det != RationalFunction.one():
        return MembershipReport(False, reason="determinant is not 1")
    if ctx.kind is GroupKind.G2 and not _is_automorphism(g):
        return MembershipReport(False, reason="g does not preserve the octonion product")
    return MembershipReport(True)


def require_member(g: MatrixLoop, ctx: GroupContext) -> MembershipReport:
    report = membership(g, ctx)
    if not report.member:
        raise NotAMember(report.reason)
    return report


@dataclass
class SymmetryReport:
    normalized: bool
    real: bool
    twisted: Optional[bool] = None


def is_normalized(g: MatrixLoop) -> bool:
    if not all(e.finite_at_infinity for row in g.entries for e in row):
        return False
    return g.evaluate(INFINITY).is_identity()


def is_real(g: MatrixLoop, ctx: GroupContext) -> bool:
    if ctx.conjugation_real:
        return g.conj_coeff() == g
    return (g.conj_coeff().transpose() @ g).is_identity()


def is_twisted(g: MatrixLoop, twist: TwistContext) -> bool:
    reflected = g.reflect()
    if twist.is_symplectic:
        J = twist.s
        c = symplectic_multiplier(g, J)
        if c is None:
            return False
        lhs = reflected.left(J).right(J.inverse())
        return lhs == g.times(c.reflect())
    return reflected.left(twist.s).right(twist.s.T) == g


def symmetry_check(
    g: MatrixLoop, ctx: GroupContext, twist: Optional[TwistContext] = None
) -> SymmetryReport:
    return SymmetryReport(
        normalized=is_normalized(g),
        real=is_real(g, ctx),
        twisted=None if twist is None else is_twisted(g, twist),
    )
