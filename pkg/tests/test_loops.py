"""
Tests for matrix loops, group contexts and the loop checks.
"""

import pytest

from loop_factor.errors import DimensionMismatch, InvalidRealPole, NotAMember
from loop_factor.exactnum import ONE, Polynomial, RationalFunction, conj, gq
from loop_factor.formsla import MatrixC, Subspace
from loop_factor.loops import (
    GroupContext,
    GroupKind,
    MatrixLoop,
    TotalDegree,
    TwistContext,
    laurent_at,
    loop_det,
    loop_inv,
    membership,
    pole_spectrum,
    require_member,
    symmetry_check,
)
from loop_factor.simplefactor import SimpleFactorSpec, materialize


@pytest.fixture
def so_element(alpha, sampler):
    return materialize(SimpleFactorSpec.so(alpha, sampler.isotropic_line(3)))


class TestContexts:
    """Group and twist contexts."""

    def test_sizes(self):
        assert GroupContext.csp(2).size == 4
        assert GroupContext.g2().size == 7
        assert GroupContext.parse("SO", 5) == GroupContext.so(5)

    def test_parse_rejects_bad_sizes(self):
        with pytest.raises(DimensionMismatch):
            GroupContext.parse("csp", 3)
        with pytest.raises(DimensionMismatch):
            GroupContext.parse("g2", 6)

    def test_unknown_group(self):
        with pytest.raises(ValueError):
            GroupContext.parse("sl", 3)

    def test_twist_groups(self):
        assert TwistContext.parse("so-grassmannian", 3, 1).group() is GroupKind.SO
        assert TwistContext.parse("g2-so4", 7).group() is GroupKind.G2
        assert TwistContext.parse("csp-u", 4).group() is GroupKind.CSP

    def test_grassmannian_index_range(self):
        with pytest.raises(DimensionMismatch):
            TwistContext.so_grassmannian(3, 4)


class TestArithmetic:
    """Products, determinants and inverses."""

    def test_identity(self):
        assert MatrixLoop.identity(3).is_identity()
        assert MatrixLoop.identity(3).is_constant

    def test_square_only(self):
        with pytest.raises(DimensionMismatch):
            MatrixLoop.from_rows([[1, 0]])

    def test_size_mismatch(self):
        with pytest.raises(DimensionMismatch):
            MatrixLoop.identity(2) @ MatrixLoop.identity(3)

    def test_det_of_so_element(self, so_element):
        assert loop_det(so_element) == RationalFunction.one()

    def test_inverse(self, so_element):
        assert (loop_inv(so_element) @ so_element).is_identity()

    def test_inverse_of_diagonal(self, alpha):
        mu = RationalFunction.mobius(alpha)
        g = MatrixLoop.from_rows([[mu, 0], [0, 1]])
        expected = MatrixLoop.from_rows([[RationalFunction.mobius(alpha, -1), 0], [0, 1]])
        assert loop_inv(g) == expected

    def test_evaluate(self, alpha):
        g = MatrixLoop.from_rows([[RationalFunction.mobius(alpha), 0], [0, 1]])
        assert g.evaluate(alpha) == MatrixC.diag([0, 1])


class TestLaurent:
    """Expansion at a pole and total degrees."""

    def test_simple_element_degree(self, so_element, alpha):
        expansion, degree = laurent_at(so_element, alpha, 1)
        assert degree == TotalDegree(1, 1)
        assert expansion.leading.rank() == 1

    def test_pole_spectrum(self, so_element, alpha):
        spectrum = pole_spectrum(so_element)
        assert [p for p, _ in spectrum] == [alpha, conj(alpha)]
        assert all(d == TotalDegree(1, 1) for _, d in spectrum)

    def test_real_pole_rejected(self):
        f = RationalFunction.build(Polynomial.constant(1), [(ONE, 1)])
        g = MatrixLoop.from_rows([[f, 0], [0, 1]])
        with pytest.raises(InvalidRealPole):
            pole_spectrum(g)

    def test_degree_order(self):
        assert TotalDegree(1, 2) < TotalDegree(2, 1)
        assert TotalDegree(1, 1) < TotalDegree(1, 2)


class TestMembership:
    """Group membership and the symmetry checks."""

    def test_so_member(self, so_element, so3):
        assert membership(so_element, so3).member
        report = symmetry_check(so_element, so3)
        assert report.normalized
        assert report.real
        assert report.twisted is None

    def test_not_orthogonal(self, so3):
        g = MatrixLoop.constant(MatrixC.diag([2, 1, 1]))
        report = membership(g, so3)
        assert not report.member
        assert "identity" in report.reason

    def test_require_member_raises(self, so3):
        with pytest.raises(NotAMember):
            require_member(MatrixLoop.constant(MatrixC.diag([2, 1, 1])), so3)

    def test_wrong_size(self, so3):
        assert not membership(MatrixLoop.identity(2), so3).member

    def test_csp_multiplier(self, alpha, sampler):
        ctx = GroupContext.csp(2)
        g = materialize(SimpleFactorSpec.csp(alpha, sampler.lagrangian(2)))
        report = membership(g, ctx)
        assert report.member
        assert report.multiplier == RationalFunction.mobius(alpha)
        assert symmetry_check(g, ctx).real

    def test_constant_rotation_is_not_normalized(self, so3):
        g = MatrixLoop.constant(MatrixC.diag([-1, -1, 1]))
        assert membership(g, so3).member
        assert not symmetry_check(g, so3).normalized

    def test_twisted_axis_element(self, sampler):
        """A simple element at an imaginary pole with a fixed line is twisted."""
        twist = TwistContext.so_grassmannian(3, 1)
        spec = sampler.axis_spec(twist, gq(0, 2))
        g = materialize(spec)
        assert symmetry_check(g, GroupContext.so(3), twist).twisted

    def test_untwisted_off_axis_element(self, so_element, so3):
        twist = TwistContext.so_grassmannian(3, 1)
        assert not symmetry_check(so_element, so3, twist).twisted

    def test_real_line_subspace(self):
        assert Subspace.line((1, 0, 0)).conjugate() == Subspace.line((1, 0, 0))
