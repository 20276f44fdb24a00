"""
Tests for the affine algebra g2 x| C^7 and its connection family.
"""

import pytest

from loop_factor.affineg2 import (
    AbelianData,
    AffineG2Element,
    TorusData,
    affine_basis,
    affine_bracket,
    eigenspace_dimensions,
    in_g2,
    in_khat,
    in_phat,
    is_flat,
    sigma_hat,
    tau_hat,
    theta_coefficients,
    theta_curvature,
    v_from_pqr,
)
from loop_factor.errors import ClosureViolation, NotInPhat
from loop_factor.exactnum import I_UNIT, ONE, ZERO
from loop_factor.formsla import MatrixC
from loop_factor.octonion import H1


class TestAlgebra:
    """Basis, brackets and involutions."""

    def test_basis_size(self):
        basis = affine_basis()
        assert len(basis) == 21
        assert all(e.is_valid() for e in basis)

    def test_eigenspaces(self):
        """so(4) + C^3 is even, the rest odd."""
        assert eigenspace_dimensions() == (9, 12)

    def test_bracket_closes(self):
        basis = affine_basis()
        for xi in basis[:4]:
            for eta in basis[12:16]:
                assert affine_bracket(xi, eta).is_valid()

    def test_bracket_rejects_invalid(self):
        bad = AffineG2Element(MatrixC.identity(8))
        with pytest.raises(ClosureViolation):
            affine_bracket(bad, AffineG2Element.zero())

    def test_involutions(self):
        xi = AffineG2Element.from_lie(H1.scale(I_UNIT), (ONE,) + (ZERO,) * 6)
        assert tau_hat(tau_hat(xi)) == xi
        assert sigma_hat(sigma_hat(xi)) == xi
        assert in_khat(AffineG2Element.from_lie(H1))

    def test_translation_parity(self):
        first = AffineG2Element.from_lie(MatrixC.zeros(7, 7), (ONE,) + (ZERO,) * 6)
        last = AffineG2Element.from_lie(MatrixC.zeros(7, 7), (ZERO,) * 6 + (ONE,))
        assert in_phat(first)
        assert in_khat(last)


class TestConnection:
    """theta_lam = sum (lam b_i + [b_i, v]) dx_i."""

    def test_torus_commutes(self):
        torus = TorusData.standard()
        assert torus.b1.commutator(torus.b2).is_zero

    def test_v_is_odd(self):
        v = v_from_pqr(AbelianData.of(p1=1, q2=2, r1=3))
        assert in_phat(v)

    def test_in_g2_iff_p1_equals_p2(self):
        assert in_g2(v_from_pqr(AbelianData.of(p1=2, p2=2, q1=1, r3=1)))
        assert not in_g2(v_from_pqr(AbelianData.of(p1=1)))

    def test_zero_v_is_flat(self):
        v = AffineG2Element.zero()
        assert is_flat(v)
        assert theta_curvature(v, 3).is_zero

    def test_leading_coefficient_vanishes(self):
        squared, _, _ = theta_coefficients(v_from_pqr(AbelianData.of(p1=1, q3=2)))
        assert squared.is_zero

    def test_curvature_matches_coefficients(self):
        v = v_from_pqr(AbelianData.of(p1=1, p2=1, q1=2, r2=1))
        squared, linear, constant = theta_coefficients(v)
        lam = 2 * ONE
        expected = squared.scale(lam * lam) + linear.scale(lam) + constant
        assert theta_curvature(v, lam) == expected

    def test_even_v_rejected(self):
        with pytest.raises(NotInPhat):
            theta_curvature(AffineG2Element.from_lie(H1), 1)
