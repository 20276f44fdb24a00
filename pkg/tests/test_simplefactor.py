"""
Tests for simple elements, their inverses and the twisted q-elements.
"""

import pytest

from loop_factor.errors import AlphaOnAxis, InvalidFactorSpec
from loop_factor.exactnum import I_UNIT, ONE, ZERO, gq
from loop_factor.formsla import Subspace, unit_vector
from loop_factor.loops import GroupContext, MatrixLoop, TwistContext, membership, symmetry_check
from loop_factor.simplefactor import (
    FactorVariant,
    SimpleFactorSpec,
    TwistedQSpec,
    as_pair,
    factor_poles,
    inverse_closed_form,
    inverse_spec,
    make_twisted_q,
    materialize,
    q_constituents,
    require_valid,
    validate,
)


class TestValidation:
    """Subspace conditions per variant."""

    def test_valid_so(self, alpha, sampler):
        assert validate(SimpleFactorSpec.so(alpha, sampler.isotropic_line(4))).ok

    def test_non_isotropic_line(self, alpha):
        report = validate(SimpleFactorSpec.so(alpha, Subspace.line(unit_vector(3, 0))))
        assert not report.ok
        assert "isotropic" in report.violations[0]

    def test_real_pole(self, sampler):
        report = validate(SimpleFactorSpec.so(gq(2), sampler.isotropic_line(3)))
        assert not report.ok

    def test_not_lagrangian(self, alpha):
        spec = SimpleFactorSpec.csp(alpha, Subspace.span_of_units(4, [0]))
        with pytest.raises(InvalidFactorSpec):
            require_valid(spec)

    def test_valid_g2(self, alpha, sampler):
        assert validate(SimpleFactorSpec.g2(alpha, sampler.coassociative_plane())).ok

    def test_valid_g2_pair(self, alpha, sampler):
        assert validate(SimpleFactorSpec.g2_pair(alpha, *sampler.g2_pair_lines())).ok

    def test_valid_so_pair(self):
        line = Subspace.line((ONE, I_UNIT, ZERO, ZERO))
        other = Subspace.line((ZERO, ZERO, ONE, -I_UNIT))
        assert validate(SimpleFactorSpec.so_pair(gq(0, 1), line, other)).ok

    def test_so_pair_with_one_line(self):
        line = Subspace.line((ONE, I_UNIT, ZERO, ZERO))
        report = validate(SimpleFactorSpec.so_pair(gq(0, 1), line, line))
        assert not report.ok
        assert "L and K coincide" in report.violations

    def test_sampled_so_pair(self, sampler):
        twist = TwistContext.so_u(3)
        spec = SimpleFactorSpec.so_pair(gq(0, 1), *sampler.so_u_pair_lines(twist))
        assert validate(spec).ok
        assert (materialize(spec) @ materialize(inverse_spec(spec))).is_identity()

    def test_so_u_needs_two_blocks(self, sampler):
        with pytest.raises(InvalidFactorSpec):
            sampler.so_u_pair_lines(TwistContext.so_u(1))


class TestMaterialize:
    """Exact loops of simple elements."""

    def test_gl_inverse(self, alpha, sampler):
        spec = sampler.simple_spec(GroupContext.gl(3), alpha)
        assert (inverse_closed_form(spec) @ materialize(spec)).is_identity()
        assert (materialize(inverse_spec(spec)) @ materialize(spec)).is_identity()

    @pytest.mark.parametrize(
        "ctx",
        [GroupContext.so(3), GroupContext.so(4), GroupContext.csp(2), GroupContext.g2()],
        ids=["so3", "so4", "csp2", "g2"],
    )
    def test_inverse_spec(self, ctx, alpha, sampler):
        spec = sampler.simple_spec(ctx, alpha)
        product = materialize(spec) @ materialize(inverse_spec(spec))
        assert product.is_identity()

    def test_members_are_real_and_normalized(self, alpha, sampler):
        ctx = GroupContext.g2()
        g = materialize(sampler.simple_spec(ctx, alpha))
        assert membership(g, ctx).member
        report = symmetry_check(g, ctx)
        assert report.normalized and report.real

    def test_as_pair_keeps_the_loop(self, alpha, sampler):
        spec = SimpleFactorSpec.g2(alpha, sampler.coassociative_plane())
        pair = as_pair(spec)
        assert pair.variant is FactorVariant.G2_PAIR
        assert materialize(pair) == materialize(spec)

    def test_gl_values(self, alpha):
        """mu on W and 1 on its complement."""
        w = Subspace.line((ONE, ZERO))
        g = materialize(SimpleFactorSpec.gl(alpha, w))
        assert g == MatrixLoop.from_rows([[g[0, 0], 0], [0, 1]])
        assert g[0, 0].evaluate(alpha) == ZERO


class TestTwistedQ:
    """q = p' p for poles off the axes."""

    def test_q_is_twisted(self, sampler):
        twist = TwistContext.so_grassmannian(3, 1)
        ctx = GroupContext.so(3)
        base = sampler.simple_spec(ctx, gq(1, 1))
        loop, constituents = make_twisted_q(TwistedQSpec(base, twist))
        assert len(constituents) == 2
        assert membership(loop, ctx).member
        assert symmetry_check(loop, ctx, twist).twisted

    def test_inverted_q(self, sampler):
        twist = TwistContext.so_grassmannian(3, 2)
        base = sampler.simple_spec(GroupContext.so(3), gq(2, 1))
        q = TwistedQSpec(base, twist)
        product = materialize(q) @ materialize(inverse_spec(q))
        assert product.is_identity()

    def test_axis_pole_rejected(self, sampler):
        twist = TwistContext.so_grassmannian(3, 1)
        base = sampler.simple_spec(GroupContext.so(3), gq(0, 1))
        with pytest.raises(AlphaOnAxis):
            q_constituents(TwistedQSpec(base, twist))

    def test_group_mismatch(self, sampler):
        base = sampler.simple_spec(GroupContext.csp(2), gq(1, 1))
        with pytest.raises(InvalidFactorSpec):
            q_constituents(TwistedQSpec(base, TwistContext.so_grassmannian(4, 2)))

    def test_q_poles(self, sampler):
        base = sampler.simple_spec(GroupContext.so(3), gq(1, 1))
        q = TwistedQSpec(base, TwistContext.so_grassmannian(3, 1))
        assert set(factor_poles(q)) == {gq(1, 1), gq(1, -1), gq(-1, -1), gq(-1, 1)}

    def test_describe(self, sampler):
        base = sampler.simple_spec(GroupContext.so(3), gq(1, 1))
        q = TwistedQSpec(base, TwistContext.so_grassmannian(3, 1), inverted=True)
        assert q.describe().startswith("q[SO(1+i")
        assert q.describe().endswith("^-1")
