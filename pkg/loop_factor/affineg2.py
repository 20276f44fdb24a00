"""
The affine algebra g2 x| C^7 in 8x8 block form.

An element is

    ( C   -B^T  X )
    ( B   nu(C) Y )
    ( 0    0    0 )

with C in so(4), B a 3x4 block, X in C^4 and Y in C^3. The involutions are
tau(xi) = conj(xi) and sigma(xi) = S xi S with S = diag(-I4, I3, 1); the
torus elements b1, b2 and the connection family
theta_lam = sum (lam b_i + [b_i, v]) dx_i are built for constant v.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import ClosureViolation, NotInPhat
from .exactnum import ONE, ZERO, Scalar, as_scalar
from .formsla import MatrixC, block_matrix
from .octonion import g2_algebra_basis, g2_lie_relations, nu

SIZE = 8


def _sub(m: MatrixC, rows: range, cols: range) -> MatrixC:
    return MatrixC.from_rows([[m[i, j] for j in cols] for i in rows], len(cols))


@dataclass(frozen=True)
class AffineG2Element:
    matrix: MatrixC

    @classmethod
    def from_blocks(
        cls,
        c: MatrixC,
        b: MatrixC,
        x: Tuple[Scalar, ...] = (ZERO,) * 4,
        y: Tuple[Scalar, ...] = (ZERO,) * 3,
        lower: Optional[MatrixC] = None,
    ) -> "AffineG2Element":
        """Assemble the block matrix; ``lower`` defaults to nu(C)."""
        lower = nu(c) if lower is None else lower
        top = block_matrix(
            [
                [c, -b.T, MatrixC.from_columns([x], 4)],
                [b, lower, MatrixC.from_columns([y], 3)],
            ]
        )
        return cls(MatrixC(top.rows + ((ZERO,) * SIZE,), SIZE))

    @classmethod
    def from_lie(cls, x: MatrixC, translation: Tuple[Scalar, ...] = (ZERO,) * 7) -> "AffineG2Element":
        rows = [tuple(x.rows[i]) + (translation[i],) for i in range(7)]
        return cls(MatrixC(tuple(rows) + ((ZERO,) * SIZE,), SIZE))

    @classmethod
    def zero(cls) -> "AffineG2Element":
        return cls(MatrixC.zeros(SIZE, SIZE))

    @property
    def lie_part(self) -> MatrixC:
        return _sub(self.matrix, range(7), range(7))

    @property
    def c_block(self) -> MatrixC:
        return _sub(self.matrix, range(4), range(4))

    @property
    def b_block(self) -> MatrixC:
        return _sub(self.matrix, range(4, 7), range(4))

    @property
    def lower_block(self) -> MatrixC:
        return _sub(self.matrix, range(4, 7), range(4, 7))

    @property
    def translation(self) -> Tuple[Scalar, ...]:
        return tuple(self.matrix[i, 7] for i in range(7))

    @property
    def is_zero(self) -> bool:
        return self.matrix.is_zero

    def is_valid(self) -> bool:
        last_row_zero = not any(self.matrix.rows[7])
        return last_row_zero and g2_lie_relations(self.lie_part)

    def __add__(self, other: "AffineG2Element") -> "AffineG2Element":
        return AffineG2Element(self.matrix + other.matrix)

    def __sub__(self, other: "AffineG2Element") -> "AffineG2Element":
        return AffineG2Element(self.matrix - other.matrix)

    def scale(self, c: object) -> "AffineG2Element":
        return AffineG2Element(self.matrix.scale(as_scalar(c)))

    def commutator(self, other: "AffineG2Element") -> "AffineG2Element":
        return AffineG2Element(self.matrix.commutator(other.matrix))


def affine_bracket(xi: AffineG2Element, eta: AffineG2Element) -> AffineG2Element:
    if not (xi.is_valid() and eta.is_valid()):
        raise ClosureViolation("bracket arguments are not in the affine algebra")
    result = xi.commutator(eta)
    if not result.is_valid():
        raise ClosureViolation("bracket left the affine algebra")
    return result


# =============================================================================
# Involutions and eigenspaces
# =============================================================================

S_MATRIX = MatrixC.diag([-1] * 4 + [1] * 3 + [1])


def tau_hat(xi: AffineG2Element) -> AffineG2Element:
    return AffineG2Element(xi.matrix.conjugate())


def sigma_hat(xi: AffineG2Element) -> AffineG2Element:
    return AffineG2Element(S_MATRIX @ xi.matrix @ S_MATRIX)


def hat_involutions(xi: AffineG2Element) -> Tuple[AffineG2Element, AffineG2Element]:
    return tau_hat(xi), sigma_hat(xi)


def in_khat(xi: AffineG2Element) -> bool:
    return sigma_hat(xi) == xi


def in_phat(xi: AffineG2Element) -> bool:
    """The sigma-odd block shape (0 -B^T X; B 0 0; 0 0 0)."""
    return sigma_hat(xi) == xi.scale(-1)


def affine_basis() -> List[AffineG2Element]:
    """14 elements of g2 followed by the 7 translations."""
    basis = [AffineG2Element.from_lie(x) for x in g2_algebra_basis()]
    for i in range(7):
        t = tuple(ONE if k == i else ZERO for k in range(7))
        basis.append(AffineG2Element.from_lie(MatrixC.zeros(7, 7), t))
    return basis


def _rank(elements: List[AffineG2Element]) -> int:
    flat = [tuple(c for row in e.matrix.rows for c in row) for e in elements]
    return MatrixC.from_rows(flat, SIZE * SIZE).rank() if flat else 0


def eigenspace_split(basis: List[AffineG2Element]) -> Tuple[List[AffineG2Element], List[AffineG2Element]]:
    """The (+1, -1) parts (xi +- sigma(xi))/2 of each basis element."""
    half = ONE / as_scalar(2)
    even = [(e + sigma_hat(e)).scale(half) for e in basis]
    odd = [(e - sigma_hat(e)).scale(half) for e in basis]
    return [e for e in even if not e.is_zero], [e for e in odd if not e.is_zero]


def eigenspace_dimensions() -> Tuple[int, int]:
    even, odd = eigenspace_split(affine_basis())
    return _rank(even), _rank(odd)


# =============================================================================
# Torus and connection family
# =============================================================================

A1 = MatrixC.from_rows([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]])
A2 = MatrixC.from_rows([[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def torus_element(a: MatrixC) -> AffineG2Element:
    """a -> (0 -a^T 0; a 0 0; 0 0 0)."""
    return AffineG2Element.from_blocks(MatrixC.zeros(4, 4), a)


def beta_pattern(beta1: object, beta2: object) -> MatrixC:
    """(b1 0 0 0; 0 0 0 b2; 0 0 b1+b2 0)."""
    b1, b2 = as_scalar(beta1), as_scalar(beta2)
    return MatrixC.from_rows([[b1, 0, 0, 0], [0, 0, 0, b2], [0, 0, b1 + b2, 0]])


@dataclass(frozen=True)
class TorusData:
    a1: MatrixC
    a2: MatrixC
    b1: AffineG2Element
    b2: AffineG2Element

    @classmethod
    def standard(cls) -> "TorusData":
        b1, b2 = torus_element(A1), torus_element(A2)
        if not b1.commutator(b2).is_zero:
            raise ClosureViolation("torus elements do not commute")
        return cls(A1, A2, b1, b2)


@dataclass(frozen=True)
class AbelianData:
    p1: Scalar = ZERO
    p2: Scalar = ZERO
    p3: Scalar = ZERO
    q1: Scalar = ZERO
    q2: Scalar = ZERO
    q3: Scalar = ZERO
    r1: Scalar = ZERO
    r2: Scalar = ZERO
    r3: Scalar = ZERO

    @classmethod
    def of(cls, **values: object) -> "AbelianData":
        return cls(**{k: as_scalar(v) for k, v in values.items()})


def v_from_pqr(d: AbelianData) -> AffineG2Element:
    """The p-hat element with blocks B(p, q) and X = (r1, 0, r3, r2).

    The B block is used verbatim; it satisfies the g2 relations exactly
    when p1 == p2 (see ``in_g2``).
    """
    b = MatrixC.from_rows(
        [
            [ZERO, d.p1, d.q1 - d.p2, -(d.p3 + d.q2)],
            [-d.q2, -d.p2, -(d.p2 + d.q3), ZERO],
            [-d.q1, -d.p3, ZERO, d.q3],
        ]
    )
    x = (d.r1, ZERO, d.r3, d.r2)
    return AffineG2Element.from_blocks(MatrixC.zeros(4, 4), b, x, lower=MatrixC.zeros(3, 3))


def in_g2(xi: AffineG2Element) -> bool:
    return g2_lie_relations(xi.lie_part)


def _connection_terms(v: AffineG2Element) -> Tuple[TorusData, AffineG2Element, AffineG2Element]:
    if not in_phat(v):
        raise NotInPhat("v is not in the sigma-odd part")
    torus = TorusData.standard()
    return torus, torus.b1.commutator(v), torus.b2.commutator(v)


def theta_coefficients(v: AffineG2Element) -> Tuple[AffineG2Element, AffineG2Element, AffineG2Element]:
    """Coefficients of lam^2, lam^1, lam^0 in [lam b1 + [b1,v], lam b2 + [b2,v]]."""
    torus, c1, c2 = _connection_terms(v)
    squared = torus.b1.commutator(torus.b2)
    linear = torus.b1.commutator(c2) + c1.commutator(torus.b2)
    constant = c1.commutator(c2)
    return squared, linear, constant


def theta_curvature(v: AffineG2Element, lam: object) -> AffineG2Element:
    """[lam b1 + [b1, v], lam b2 + [b2, v]] for constant v."""
    torus, c1, c2 = _connection_terms(v)
    lam = as_scalar(lam)
    first = torus.b1.scale(lam) + c1
    second = torus.b2.scale(lam) + c2
    return first.commutator(second)


def is_flat(v: AffineG2Element) -> bool:
    return all(c.is_zero for c in theta_coefficients(v))
