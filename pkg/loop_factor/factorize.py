"""
Factorization of rational loops into simple elements.

Every driver repeatedly picks a pole, multiplies the loop on the left by a
simple element P that lowers the total degree (k, rank g_-k) there (or the
order of vanishing of det g for the symplectic zero phase) and records the
inverse of P. When no pole is left the residual is normalized and pole free,
so it must be the identity; anything else raises ``LiouvilleViolation``.

Recorded factors multiply left to right to the input loop.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import (
    IdentityMismatch,
    InvalidRealPole,
    LiouvilleViolation,
    NonTermination,
    NoSplittingLine,
    NotAMember,
    NotTwisted,
    RankSurprise,
)
from .exactnum import I_UNIT, ONE, Scalar, conj, format_scalar, gq, is_imaginary, scalar_key
from .formsla import (
    FormContext,
    MatrixC,
    Subspace,
    Vector,
    add_vectors,
    antilinear_fixed_line,
    bilinear,
    conj_vector,
    extend_to_lagrangian,
    is_zero_vector,
    scale_vector,
    unit_vector,
)
from .loops import (
    GroupContext,
    GroupKind,
    MatrixLoop,
    TotalDegree,
    TwistContext,
    TwistFlavor,
    laurent_at,
    loop_product,
    require_member,
    symmetry_check,
    symplectic_multiplier,
    zero_order_of_det,
)
from .octonion import coassoc_classify, mul_im7, multiplier_plane
from .simplefactor import (
    FactorSpec,
    SimpleFactorSpec,
    TwistedQSpec,
    inverse_spec,
    make_twisted_q,
    materialize,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET_MULTIPLIER = 4


@dataclass
class FactorStep:
    """One reduction of the audit log."""

    pole: Scalar
    branch: str
    before: TotalDegree
    after: TotalDegree
    det_zero_before: int = 0
    det_zero_after: int = 0
    factor: str = ""

    @property
    def decreased(self) -> bool:
        return self.after < self.before or self.det_zero_after < self.det_zero_before


@dataclass
class FactorizationResult:
    group: GroupContext
    factors: List[FactorSpec] = field(default_factory=list)
    steps: List[FactorStep] = field(default_factory=list)
    twist: Optional[TwistContext] = None

    def product(self) -> MatrixLoop:
        return loop_product([materialize(f) for f in self.factors], self.group.size)


def column_space(m: MatrixC) -> Subspace:
    return Subspace.from_vectors(m.columns(), m.shape[0])


# =============================================================================
# G2 pair splitting
# =============================================================================

def split_pair(alpha: Scalar, line: Subspace, other: Subspace) -> List[SimpleFactorSpec]:
    """Rewrite p_L p_K as one or two G2 simple elements with the same product."""
    if (line + line.conjugate()).hermitian_complement().contains_subspace(other):
        plane = line + other
        if not coassoc_classify(plane).complex_coassociative:
            raise IdentityMismatch("L + K is not complex coassociative")
        return [SimpleFactorSpec.g2(alpha, plane)]

    k = other.basis[0]
    b1, b2 = multiplier_plane(line).basis
    # conj(x b1 + y b2) * k = 0 is linear in (conj x, conj y)
    system = MatrixC.from_columns([mul_im7(conj_vector(b1), k), mul_im7(conj_vector(b2), k)], 7)
    solutions = system.nullspace()
    if not solutions:
        raise NoSplittingLine("no line R in B(L) with conj(R) * K = 0")
    xbar, ybar = solutions[0]
    r = add_vectors(scale_vector(conj(xbar), b1), scale_vector(conj(ybar), b2))
    r_line = Subspace.line(r)
    first = SimpleFactorSpec.g2(alpha, line + r_line)
    second = SimpleFactorSpec.g2(alpha, r_line.conjugate() + other)
    if materialize(first) @ materialize(second) != materialize(
        SimpleFactorSpec.g2_pair(alpha, line, other)
    ):
        raise IdentityMismatch("G2 split does not reproduce p_L p_K")
    return [first, second]


def _extract_lines(
    g: MatrixLoop, alpha: Scalar, choose: Callable[[Subspace], Subspace]
) -> Tuple[List[Subspace], MatrixLoop]:
    """SO(7) reduction of a simple pole at alpha: the lines used and the residual."""
    lines: List[Subspace] = []
    current = g
    while True:
        expansion, degree = laurent_at(current, alpha, 0)
        if degree.k == 0:
            break
        if degree.k > 1 or len(lines) == 2:
            raise RankSurprise(f"G2 pole at {format_scalar(alpha)} is not a pair of lines")
        line = choose(column_space(expansion.leading))
        lines.append(line)
        current = materialize(SimpleFactorSpec.so(alpha, line)) @ current
    if len(lines) != 2:
        raise RankSurprise(f"simple G2 pole at {format_scalar(alpha)} has rank {len(lines)}")
    return lines, current


def split_simple_pole_pair(g: MatrixLoop, alpha: Scalar) -> List[SimpleFactorSpec]:
    """G2 simple elements P with g = P1 (P2) h and h holomorphic at alpha."""
    lines, _ = _extract_lines(g, alpha, lambda v: Subspace.line(v.basis[0]))
    return split_pair(alpha, lines[0].conjugate(), lines[1].conjugate())


# =============================================================================
# Reduction driver
# =============================================================================

class _Reducer:
    def __init__(
        self,
        g: MatrixLoop,
        ctx: GroupContext,
        twist: Optional[TwistContext],
        budget_multiplier: int,
    ):
        self.g = g
        self.ctx = ctx
        self.twist = twist
        self.result = FactorizationResult(ctx, twist=twist)
        self.budget = budget_multiplier * (self._complexity() + 1)

    # -- bookkeeping ---------------------------------------------------------

    def _upper_points(self) -> List[Scalar]:
        points = set()
        for beta in self.g.poles():
            if not beta.y:
                raise InvalidRealPole(f"real pole at {format_scalar(beta)}")
            up = beta if beta.y > 0 else conj(beta)
            if self.twist is not None:
                up = gq(abs(up.x), up.y)
            points.add(up)
        return sorted(points, key=scalar_key)

    def _complexity(self) -> int:
        total = 0
        for beta in self.g.poles():
            if beta.y:
                total += 2 * self.g.pole_order(beta) * self.ctx.size
        if self.ctx.kind is GroupKind.CSP:
            for alpha in self._upper_points():
                total += zero_order_of_det(self.g, alpha)
        return total

    def _det_zero(self, alpha: Scalar) -> int:
        if self.ctx.kind is GroupKind.CSP:
            return zero_order_of_det(self.g, alpha)
        return 0

    def _on_axis(self, alpha: Scalar) -> bool:
        return self.twist is not None and is_imaginary(alpha)

    def _apply(
        self,
        alpha: Scalar,
        spec: SimpleFactorSpec,
        branch: str,
        recorded: Optional[Sequence[FactorSpec]] = None,
    ) -> None:
        before = laurent_at(self.g, alpha, 0)[1]
        zero_before = self._det_zero(alpha)
        if self.twist is not None and not is_imaginary(spec.alpha):
            loop = make_twisted_q(TwistedQSpec(spec, self.twist))[0]
            recorded = [TwistedQSpec(spec, self.twist, inverted=True)]
            branch = f"{branch}+q"
        else:
            loop = materialize(spec)
            if recorded is None:
                recorded = [inverse_spec(spec)]
        self.g = loop @ self.g
        self.result.factors.extend(recorded)
        step = FactorStep(
            pole=alpha,
            branch=branch,
            before=before,
            after=laurent_at(self.g, alpha, 0)[1],
            det_zero_before=zero_before,
            det_zero_after=self._det_zero(alpha),
            factor=spec.describe(),
        )
        self.result.steps.append(step)
        logger.debug(
            "%s at %s: %s -> %s via %s",
            branch,
            format_scalar(alpha),
            before.as_list(),
            step.after.as_list(),
            step.factor,
        )
        if not step.decreased:
            raise RankSurprise(
                f"{branch} step at {format_scalar(alpha)} did not lower the degree: "
                f"{before.as_list()} -> {step.after.as_list()}"
            )

    # -- per-group steps -----------------------------------------------------

    def _choose_line(self, space: Subspace, alpha: Scalar) -> Subspace:
        if self._on_axis(alpha):
            return antilinear_fixed_line(space, self.twist.s)
        return Subspace.line(space.basis[0])

    def _step_csp(self, alpha: Scalar) -> bool:
        n = self.ctx.half
        real = self._on_axis(alpha)
        flavor = "real" if real else "any"
        form = FormContext.symplectic(n)
        standard = Subspace.span_of_units(2 * n, range(n))
        expansion, degree = laurent_at(self.g, alpha, 0)
        if degree.k >= 1:
            c = symplectic_multiplier(self.g, self.ctx.J)
            if c is None:
                raise NotAMember("loop lost its symplectic multiplier")
            if c.pole_order(alpha) == 2 * degree.k:
                self._apply(alpha, SimpleFactorSpec.csp(alpha, standard), "csp-invertible")
            else:
                w = extend_to_lagrangian(column_space(expansion.leading), form, flavor)
                self._apply(alpha, SimpleFactorSpec.csp(alpha, w), "csp-pole")
            return True
        value = expansion.coeff(0)
        if value.is_zero:
            self._apply(alpha, SimpleFactorSpec.csp(conj(alpha), standard), "csp-vanishing")
            return True
        if not value.det():
            u = extend_to_lagrangian(column_space(value), form, flavor)
            w = u.conjugate().image(self.ctx.J)
            self._apply(alpha, SimpleFactorSpec.csp(conj(alpha), w), "csp-zero")
            return True
        return False

    def _step_so(self, alpha: Scalar) -> bool:
        expansion, degree = laurent_at(self.g, alpha, 1)
        if degree.k == 0:
            return False
        if self._on_axis(alpha) and self.twist.flavor is TwistFlavor.SO_U:
            # v -> s conj(v) squares to -1, so lines come in pairs (L, s conj L)
            l = self._so_u_line(expansion.leading, expansion.coeff(-degree.k + 1))
            pair = SimpleFactorSpec.so_pair(
                alpha, Subspace.line(l), Subspace.line(self.twist.twist_vector(l))
            )
            self._apply(alpha, pair, "so-pair")
            return True
        line = self._choose_line(column_space(expansion.leading), alpha)
        self._apply(alpha, SimpleFactorSpec.so(alpha, line), "so")
        return True

    def _so_u_line(self, leading: MatrixC, following: MatrixC) -> Vector:
        """l = g_-k x in Im g_-k with transpose(g_-k+1 x) s conj(l) == 0.

        Falls back to the first nonzero column; ``_apply`` then rejects the step
        if the degree does not drop.
        """
        columns = [j for j in range(leading.shape[1]) if not is_zero_vector(leading.column(j))]
        candidates: List[Vector] = [unit_vector(self.g.n, j) for j in columns]
        for a, i in enumerate(columns):
            for j in columns[a + 1 :]:
                for c in (ONE, -ONE, I_UNIT, -I_UNIT):
                    shifted = scale_vector(c, unit_vector(self.g.n, j))
                    candidates.append(add_vectors(unit_vector(self.g.n, i), shifted))
        for x in candidates:
            l = leading.apply(x)
            if is_zero_vector(l):
                continue
            if not bilinear(following.apply(x), self.twist.twist_vector(l)):
                return l
        return leading.column(columns[0])

    def _step_g2(self, alpha: Scalar) -> bool:
        expansion, degree = laurent_at(self.g, alpha, 1)
        if degree.k == 0:
            return False
        if degree.rank > 2:
            raise RankSurprise(f"rank {degree.rank} leading coefficient in a G2 loop")
        if degree.k == 1:
            self._pair_step(alpha)
            return True
        leading = expansion.leading
        following = expansion.coeff(-degree.k + 1)
        if self._on_axis(alpha):
            line, v = self._fixed_line_and_preimage(leading)
        else:
            j = next(j for j in range(7) if not is_zero_vector(leading.column(j)))
            v = unit_vector(7, j)
            line = Subspace.line(leading.apply(v))
        plane = multiplier_plane(line)
        w = following.apply(v)
        c1, c2 = (bilinear(w, b) for b in plane.basis)
        if not c1 and not c2:
            if self._on_axis(alpha):
                m_line = antilinear_fixed_line(plane, self.twist.s)
            else:
                m_line = Subspace.line(plane.basis[0])
        else:
            b1, b2 = plane.basis
            m_line = Subspace.line(add_vectors(scale_vector(c2, b1), scale_vector(-c1, b2)))
        self._apply(alpha, SimpleFactorSpec.g2(alpha, line + m_line), "g2-plane")
        return True

    def _fixed_line_and_preimage(self, leading: MatrixC) -> Tuple[Subspace, Vector]:
        line = antilinear_fixed_line(column_space(leading), self.twist.s)
        l = line.basis[0]
        # leading v = t l with t != 0
        stacked = MatrixC.from_columns(leading.columns() + [tuple(-c for c in l)], 7)
        preimages = [sol[:7] for sol in stacked.nullspace() if sol[7]]
        for b in preimages:
            tb = self.twist.twist_vector(b)
            odd = add_vectors(b, tuple(-c for c in tb))
            for v in (add_vectors(b, tb), scale_vector(I_UNIT, odd)):
                if not is_zero_vector(leading.apply(v)):
                    return line, v
        raise RankSurprise("no twist-fixed preimage of the fixed line")

    def _pair_step(self, alpha: Scalar) -> None:
        lines, _ = _extract_lines(self.g, alpha, lambda v: self._choose_line(v, alpha))
        first, second = lines
        applied = SimpleFactorSpec.g2_pair(alpha, second, first)
        recorded: Optional[List[FactorSpec]] = None
        if self.twist is None:
            recorded = list(split_pair(alpha, first.conjugate(), second.conjugate()))
        self._apply(alpha, applied, "g2-pair", recorded)

    # -- loop ----------------------------------------------------------------

    def run(self) -> FactorizationResult:
        step = {
            GroupKind.CSP: self._step_csp,
            GroupKind.SO: self._step_so,
            GroupKind.G2: self._step_g2,
        }[self.ctx.kind]
        while True:
            points = self._upper_points()
            if not points:
                break
            if len(self.result.steps) >= self.budget:
                raise NonTermination(f"iteration budget of {self.budget} steps exhausted")
            if not any(step(alpha) for alpha in points):
                raise LiouvilleViolation(
                    "poles remain but no reduction applies at "
                    + ", ".join(format_scalar(p) for p in points)
                )
        if not self.g.is_identity():
            raise LiouvilleViolation("pole-free residual is not the identity loop")
        logger.info(
            "factored %s loop of size %d into %d factors",
            self.ctx.kind.value,
            self.ctx.size,
            len(self.result.factors),
        )
        return self.result


# =============================================================================
# Entry points
# =============================================================================

def _require_untwisted_input(g: MatrixLoop, ctx: GroupContext) -> None:
    require_member(g, ctx)
    report = symmetry_check(g, ctx)
    if not report.normalized:
        raise NotAMember("loop is not normalized at infinity")
    if not report.real:
        raise NotAMember("loop does not satisfy the reality condition")


def factor_loop(
    g: MatrixLoop, ctx: GroupContext, budget_multiplier: int = DEFAULT_BUDGET_MULTIPLIER
) -> FactorizationResult:
    if ctx.kind is GroupKind.GL:
        raise NotAMember("GL loops are not factored; use so, csp or g2")
    _require_untwisted_input(g, ctx)
    return _Reducer(g, ctx, None, budget_multiplier).run()


def factor_csp(g: MatrixLoop, budget_multiplier: int = DEFAULT_BUDGET_MULTIPLIER) -> FactorizationResult:
    return factor_loop(g, GroupContext(GroupKind.CSP, g.n), budget_multiplier)


def factor_so(g: MatrixLoop, budget_multiplier: int = DEFAULT_BUDGET_MULTIPLIER) -> FactorizationResult:
    return factor_loop(g, GroupContext.so(g.n), budget_multiplier)


def factor_g2(g: MatrixLoop, budget_multiplier: int = DEFAULT_BUDGET_MULTIPLIER) -> FactorizationResult:
    return factor_loop(g, GroupContext.g2(), budget_multiplier)


def factor_twisted(
    g: MatrixLoop, twist: TwistContext, budget_multiplier: int = DEFAULT_BUDGET_MULTIPLIER
) -> FactorizationResult:
    ctx = GroupContext(twist.group(), g.n)
    _require_untwisted_input(g, ctx)
    if not symmetry_check(g, ctx, twist).twisted:
        raise NotTwisted(f"loop does not satisfy the {twist.flavor.value} twisting condition")
    return _Reducer(g, ctx, twist, budget_multiplier).run()


def verify_product(result: FactorizationResult, g: MatrixLoop) -> bool:
    """Exact equality of the ordered product of the factors with g."""
    if g.n != result.group.size:
        return False
    return result.product() == g
