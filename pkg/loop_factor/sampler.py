"""
Seeded random subspaces, simple elements and loops.

Everything is drawn from ``random.Random(seed)`` with Gaussian-integer
entries bounded by ``entry_range`` and poles a + b*i with |a|, b bounded by
``pole_range``, so identical seeds give identical loops.
"""

import random
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import InvalidFactorSpec
from .exactnum import I_UNIT, ONE, ZERO, Scalar, gq
from .formsla import (
    MatrixC,
    Subspace,
    Vector,
    add_vectors,
    bilinear,
    conj_vector,
    scale_vector,
    unit_vector,
)
from .loops import GroupContext, GroupKind, MatrixLoop, TwistContext, TwistFlavor, loop_product
from .octonion import ROTATION_GENERATORS, WeightFrame, g2_rotation, multiplier_plane
from .simplefactor import FactorSpec, SimpleFactorSpec, TwistedQSpec, materialize

# A coassociative plane fixed by v -> diag(-I4, I3) conj(v): span(e5 + i e1, e6 - i e4).
_G2_FIXED_PLANE = Subspace.from_vectors(
    [
        (I_UNIT, ZERO, ZERO, ZERO, ONE, ZERO, ZERO),
        (ZERO, ZERO, ZERO, -I_UNIT, ZERO, ONE, ZERO),
    ],
    7,
)


class LoopSampler:
    def __init__(self, seed: int = 0, entry_range: int = 3, pole_range: int = 3):
        self.rng = random.Random(seed)
        self.entry_range = max(entry_range, 1)
        self.pole_range = max(pole_range, 1)

    # -- scalars -------------------------------------------------------------

    def integer(self, low: Optional[int] = None) -> int:
        low = -self.entry_range if low is None else low
        return self.rng.randint(low, self.entry_range)

    def gaussian_integer(self, real: bool = False) -> Scalar:
        return gq(self.integer(), 0 if real else self.integer())

    def rational(self) -> Fraction:
        return Fraction(self.integer(), self.rng.randint(1, self.entry_range))

    def pole(self, kind: str = "any") -> Scalar:
        """A pole in the upper half plane: "any", "imaginary" or "off-axis"."""
        b = self.rng.randint(1, self.pole_range)
        if kind == "imaginary":
            return gq(0, b)
        a = self.rng.randint(-self.pole_range, self.pole_range)
        if kind == "off-axis":
            while a == 0:
                a = self.rng.randint(-self.pole_range, self.pole_range)
        return gq(a, b)

    def vector(self, n: int, real: bool = False) -> Vector:
        return tuple(self.gaussian_integer(real) for _ in range(n))

    # -- subspaces -----------------------------------------------------------

    def lagrangian(self, n: int, real: bool = False) -> Subspace:
        """Column span of (I; S) for a random symmetric S."""
        s = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s[i][j] = s[j][i] = self.gaussian_integer(real)
        columns = [unit_vector(n, j) + tuple(s[i][j] for i in range(n)) for j in range(n)]
        return Subspace.from_vectors(columns, 2 * n)

    def isotropic_line(self, n: int) -> Subspace:
        """l0 + t a with l0 = e1 + i e2 and t chosen to make the line isotropic."""
        base = tuple(ONE if k == 0 else I_UNIT if k == 1 else ZERO for k in range(n))
        while True:
            a = self.vector(n)
            norm = bilinear(a, a)
            if norm:
                break
        t = -(bilinear(base, a) + bilinear(base, a)) / norm
        return Subspace.line(add_vectors(base, scale_vector(t, a)))

    def fixed_isotropic_line(self, even: Sequence[int], odd: Sequence[int], n: int) -> Subspace:
        """u + i w with u on the ``even`` coordinates, w on the ``odd`` ones, |u| = |w|."""
        size = min(len(even), len(odd))
        if size == 0:
            raise InvalidFactorSpec("no twist-fixed isotropic lines for this involution")
        values = [self.rng.randint(1, self.entry_range) for _ in range(size)]
        u = [ZERO] * n
        w = [ZERO] * n
        for index, c in zip(self.rng.sample(list(even), size), values):
            u[index] = gq(c * self.rng.choice((1, -1)))
        for index, c in zip(self.rng.sample(list(odd), size), values):
            w[index] = gq(c * self.rng.choice((1, -1)))
        return Subspace.line(add_vectors(tuple(u), scale_vector(I_UNIT, tuple(w))))

    def so_u_pair_lines(self, twist: TwistContext) -> Sequence[Subspace]:
        """(L, s conj(L)) with L + s conj(L) isotropic, for s = J on C^(2m).

        l = u + i w with |u| = |w| and u, w supported on disjoint coordinate
        pairs {j, j + m}, so that <u, w> = 0 and u^T J w = 0.
        """
        m = twist.s.shape[0] // 2
        if m < 2:
            raise InvalidFactorSpec("SO(2m)/U(m) pairs need m >= 2")
        slots = list(range(m))
        self.rng.shuffle(slots)
        cut = self.rng.randint(1, m - 1)
        size = min(cut, m - cut)
        u = [ZERO] * (2 * m)
        w = [ZERO] * (2 * m)
        for j, h in zip(slots[:size], slots[cut : cut + size]):
            c = self.rng.randint(1, self.entry_range)
            u[j + self.rng.choice((0, m))] = gq(c * self.rng.choice((1, -1)))
            w[h + self.rng.choice((0, m))] = gq(c * self.rng.choice((1, -1)))
        l = add_vectors(tuple(u), scale_vector(I_UNIT, tuple(w)))
        return Subspace.line(l), Subspace.line(twist.twist_vector(l))

    def g2_element(self, count: int = 2, generators: Sequence[MatrixC] = ROTATION_GENERATORS) -> MatrixC:
        m = MatrixC.identity(7)
        for _ in range(count):
            m = g2_rotation(self.rng.choice(list(generators)), self.rational()) @ m
        return m

    def g2_isotropic_line(self) -> Subspace:
        return WeightFrame.standard().line(1).image(self.g2_element())

    def coassociative_plane(self) -> Subspace:
        frame = WeightFrame.standard()
        return (frame.line(1) + frame.line(2)).image(self.g2_element())

    def fixed_coassociative_plane(self) -> Subspace:
        """Image of a twist-fixed plane under rotations commuting with diag(-I4, I3)."""
        return _G2_FIXED_PLANE.image(self.g2_element(generators=ROTATION_GENERATORS[:2]))

    def g2_pair_lines(self) -> Sequence[Subspace]:
        """(L, K) with K = b conj(l) + k', k' in the multiplier plane of L."""
        line = self.g2_isotropic_line()
        l = line.basis[0]
        b1, b2 = multiplier_plane(line).basis
        while True:
            x, y = self.gaussian_integer(), self.gaussian_integer()
            if x or y:
                break
        k_prime = add_vectors(scale_vector(x, b1), scale_vector(y, b2))
        k = add_vectors(scale_vector(self.gaussian_integer(), conj_vector(l)), k_prime)
        return line, Subspace.line(k)

    # -- simple elements -----------------------------------------------------

    def simple_spec(self, ctx: GroupContext, alpha: Optional[Scalar] = None) -> SimpleFactorSpec:
        alpha = self.pole() if alpha is None else alpha
        if ctx.kind is GroupKind.GL:
            dim = self.rng.randint(1, ctx.size - 1) if ctx.size > 1 else 1
            return SimpleFactorSpec.gl(alpha, Subspace.from_vectors([self.vector(ctx.size) for _ in range(dim)], ctx.size))
        if ctx.kind is GroupKind.SO:
            return SimpleFactorSpec.so(alpha, self.isotropic_line(ctx.size))
        if ctx.kind is GroupKind.CSP:
            return SimpleFactorSpec.csp(alpha, self.lagrangian(ctx.half))
        if self.rng.random() < 0.5:
            return SimpleFactorSpec.g2(alpha, self.coassociative_plane())
        return SimpleFactorSpec.g2_pair(alpha, *self.g2_pair_lines())

    def axis_spec(self, twist: TwistContext, alpha: Optional[Scalar] = None) -> SimpleFactorSpec:
        """A twist-compatible simple element at an imaginary pole.

        SO(2m)/U(m) has no twist-fixed lines, so it gets an SO pair instead.
        """
        alpha = self.pole("imaginary") if alpha is None else alpha
        n = twist.s.shape[0]
        if twist.flavor is TwistFlavor.CSP_U:
            return SimpleFactorSpec.csp(alpha, self.lagrangian(n // 2, real=True))
        if twist.flavor is TwistFlavor.G2_SO4:
            return SimpleFactorSpec.g2(alpha, self.fixed_coassociative_plane())
        if twist.flavor is TwistFlavor.SO_GRASSMANNIAN:
            return SimpleFactorSpec.so(alpha, self.fixed_isotropic_line(range(twist.k), range(twist.k, n), n))
        return SimpleFactorSpec.so_pair(alpha, *self.so_u_pair_lines(twist))

    # -- loops ---------------------------------------------------------------

    def factor_specs(self, ctx: GroupContext, count: int) -> List[SimpleFactorSpec]:
        """``count`` simple elements spread over at most two pole pairs."""
        poles = [self.pole() for _ in range(min(2, max(count, 1)))]
        return [self.simple_spec(ctx, self.rng.choice(poles)) for _ in range(count)]

    def twisted_specs(self, twist: TwistContext, count: int) -> List[FactorSpec]:
        ctx = GroupContext(twist.group(), twist.s.shape[0])
        specs: List[FactorSpec] = []
        axis_allowed = twist.flavor is not TwistFlavor.SO_U or twist.s.shape[0] >= 4
        for _ in range(count):
            if axis_allowed and self.rng.random() < 0.5:
                specs.append(self.axis_spec(twist))
            else:
                base = self.simple_spec(ctx, self.pole("off-axis"))
                specs.append(TwistedQSpec(base, twist))
        return specs

    def loop(self, ctx: GroupContext, count: int) -> MatrixLoop:
        return loop_product([materialize(s) for s in self.factor_specs(ctx, count)], ctx.size)

    def twisted_loop(self, twist: TwistContext, count: int) -> MatrixLoop:
        n = twist.s.shape[0]
        return loop_product([materialize(s) for s in self.twisted_specs(twist, count)], n)
