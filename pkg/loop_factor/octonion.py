"""
Complexified octonions and the G2 plane constructions.

The multiplication table of the imaginary units e1..e7 is transcribed once as
data (``MULTIPLICATION_TABLE``); every product, the g2 relations, the weight
frame and the coassociative-plane helpers are computed from it.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from .errors import DegeneratePlane, RankSurprise
from .exactnum import I_UNIT, ONE, ZERO, Scalar, gq
from .formsla import (
    MatrixC,
    Subspace,
    Vector,
    add_vectors,
    bilinear,
    is_zero_vector,
    scale_vector,
    unit_vector,
)

# =============================================================================
# Multiplication table
# =============================================================================

# MULTIPLICATION_TABLE[i][j] encodes e_(i+1) * e_(j+1): +k / -k means +e_k / -e_k,
# 0 on the diagonal means -1.
MULTIPLICATION_TABLE: Tuple[Tuple[int, ...], ...] = (
    (0, -5, -6, -7, 2, 3, 4),
    (5, 0, -7, 6, -1, -4, 3),
    (6, 7, 0, -5, 4, -1, -2),
    (7, -6, 5, 0, -3, 2, -1),
    (-2, 1, -4, 3, 0, 7, -6),
    (-3, 4, 1, -2, -7, 0, 5),
    (-4, -3, 2, 1, 6, -5, 0),
)


def unit_product(i: int, j: int) -> Tuple[int, int]:
    """e_i * e_j for 1-based indices as (sign, k); k == 0 stands for the unit 1."""
    if i == j:
        return -1, 0
    code = MULTIPLICATION_TABLE[i - 1][j - 1]
    return (1 if code > 0 else -1), abs(code)


def mul_im7(x: Sequence[Any], y: Sequence[Any]) -> Tuple[Any, ...]:
    """Imaginary part of x*y for x, y in C^7.

    Works on any coefficient ring with + and *, so it also multiplies columns
    of matrix loops.
    """
    out: List[Any] = [x[0] - x[0] for _ in range(7)]
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if i == j or not b:
                continue
            code = MULTIPLICATION_TABLE[i][j]
            k = abs(code) - 1
            term = a * b
            out[k] = out[k] + term if code > 0 else out[k] - term
    return tuple(out)


def mul8(x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """Full octonion product on coordinates (1, e1..e7)."""
    x0, xv = x[0], tuple(x[1:])
    y0, yv = y[0], tuple(y[1:])
    im = mul_im7(xv, yv)
    real = x0 * y0 - bilinear(xv, yv)
    return (real,) + tuple(x0 * b + y0 * a + c for a, b, c in zip(xv, yv, im))


@dataclass(frozen=True)
class Octonion8:
    coords: Vector

    def __mul__(self, other: "Octonion8") -> "Octonion8":
        return Octonion8(mul8(self.coords, other.coords))

    def conjugate(self) -> "Octonion8":
        """Octonion conjugation 1 -> 1, e_i -> -e_i (coefficients untouched)."""
        return Octonion8((self.coords[0],) + tuple(-c for c in self.coords[1:]))

    @property
    def real(self) -> Scalar:
        return self.coords[0]


@dataclass(frozen=True)
class ImOcta7:
    coords: Vector

    def __mul__(self, other: "ImOcta7") -> "ImOcta7":
        return ImOcta7(mul_im7(self.coords, other.coords))


def octonion_inner(x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    """Re(x * conj(y)), the complex-bilinear extension of the natural metric."""
    return (Octonion8(tuple(x)) * Octonion8(tuple(y)).conjugate()).real


def unit_octonion(k: int) -> Vector:
    """Coordinates of 1 (k == 0) or e_k in C^8."""
    return unit_vector(8, k)


# =============================================================================
# g2 relations
# =============================================================================

# Each relation is a sum of coefficient * X[i][j] (1-based) that must vanish.
G2_RELATIONS: Tuple[Tuple[Tuple[int, int, int], ...], ...] = (
    ((1, 6, 7), (-1, 1, 2), (-1, 3, 4)),
    ((1, 7, 5), (-1, 1, 3), (-1, 4, 2)),
    ((1, 5, 6), (-1, 1, 4), (-1, 2, 3)),
    ((1, 5, 1), (1, 6, 4), (-1, 7, 3)),
    ((1, 5, 2), (1, 6, 3), (1, 7, 4)),
    ((1, 5, 3), (-1, 6, 2), (1, 7, 1)),
    ((1, 5, 4), (-1, 6, 1), (-1, 7, 2)),
)

_UPPER_PAIRS: Tuple[Tuple[int, int], ...] = tuple(
    (i, j) for i in range(1, 8) for j in range(i + 1, 8)
)


def is_antisymmetric(x: MatrixC) -> bool:
    return x.T == -x


def relation_values(x: MatrixC) -> List[Scalar]:
    values = []
    for relation in G2_RELATIONS:
        total = ZERO
        for coef, i, j in relation:
            total += x[i - 1, j - 1] * coef
        values.append(total)
    return values


def g2_lie_relations(x: MatrixC) -> bool:
    """True iff an antisymmetric 7x7 matrix lies in g2."""
    if x.shape != (7, 7) or not is_antisymmetric(x):
        return False
    return not any(relation_values(x))


def _relation_system() -> MatrixC:
    """The relations as a 7x21 system on the coordinates X_ij, i < j."""
    index = {pair: k for k, pair in enumerate(_UPPER_PAIRS)}
    rows = []
    for relation in G2_RELATIONS:
        row = [ZERO] * len(_UPPER_PAIRS)
        for coef, i, j in relation:
            if i < j:
                row[index[(i, j)]] += gq(coef)
            else:
                row[index[(j, i)]] -= gq(coef)
        rows.append(row)
    return MatrixC.from_rows(rows, len(_UPPER_PAIRS))


def antisymmetric_from_upper(coords: Sequence[Scalar]) -> MatrixC:
    rows = [[ZERO] * 7 for _ in range(7)]
    for (i, j), c in zip(_UPPER_PAIRS, coords):
        rows[i - 1][j - 1] = c
        rows[j - 1][i - 1] = -c
    return MatrixC.from_rows(rows, 7)


def g2_algebra_basis() -> List[MatrixC]:
    """A basis of g2 inside so(7): the nullspace of the relation system."""
    return [antisymmetric_from_upper(v) for v in _relation_system().nullspace()]


def relation_rank() -> int:
    return _relation_system().rank()


def nu(a: MatrixC) -> MatrixC:
    """The so(3) block completing an so(4) block A to an element of g2.

    Solved from the relations with the off-diagonal block set to zero: each
    relation carries exactly one unknown from the lower-right block.
    """
    if a.shape != (4, 4) or not is_antisymmetric(a):
        raise ValueError("nu expects an antisymmetric 4x4 matrix")
    block: Dict[Tuple[int, int], Scalar] = {}
    for relation in G2_RELATIONS:
        unknown = [(c, i, j) for c, i, j in relation if i > 4 and j > 4]
        known = [(c, i, j) for c, i, j in relation if i <= 4 and j <= 4]
        if len(unknown) != 1:
            continue
        coef, i, j = unknown[0]
        rest = ZERO
        for c, p, q in known:
            rest += a[p - 1, q - 1] * c
        value = -rest / gq(coef)
        block[(i, j)] = value
        block[(j, i)] = -value
    return MatrixC.from_rows(
        [[block.get((i, j), ZERO) for j in range(5, 8)] for i in range(5, 8)], 3
    )


def is_derivation(x: MatrixC) -> bool:
    """X(e_i*e_j) == Xe_i*e_j + e_i*Xe_j for all basis pairs."""
    for i in range(7):
        ei = unit_vector(7, i)
        xi = x.apply(ei)
        for j in range(7):
            ej = unit_vector(7, j)
            lhs = x.apply(mul_im7(ei, ej))
            rhs = add_vectors(mul_im7(xi, ej), mul_im7(ei, x.apply(ej)))
            if lhs != rhs:
                return False
    return True


def g2_group_check(m: MatrixC) -> bool:
    """Orthogonal, determinant one and an automorphism of the product."""
    if m.shape != (7, 7):
        return False
    if not (m.T @ m).is_identity() or m.det() != ONE:
        return False
    columns = m.columns()
    for i in range(7):
        for j in range(i + 1, 7):
            if m.apply(mul_im7(unit_vector(7, i), unit_vector(7, j))) != mul_im7(
                columns[i], columns[j]
            ):
                return False
    return True


# =============================================================================
# Torus, weight lines and rotations
# =============================================================================

def _sparse(entries: Dict[Tuple[int, int], int]) -> MatrixC:
    rows = [[ZERO] * 7 for _ in range(7)]
    for (i, j), v in entries.items():
        rows[i - 1][j - 1] = gq(v)
    return MatrixC.from_rows(rows, 7)


H1 = _sparse({(1, 2): -1, (2, 1): 1, (3, 4): 1, (4, 3): -1})
H2 = _sparse({(1, 2): -1, (2, 1): 1, (3, 4): -1, (4, 3): 1, (6, 7): -2, (7, 6): 2})

# Elements of g2 with X^3 = -X; exp(tX) then has a rational closed form.
ROTATION_GENERATORS: Tuple[MatrixC, ...] = (
    H1,
    _sparse({(3, 4): -1, (4, 3): 1, (6, 7): -1, (7, 6): 1}),
    _sparse({(5, 1): 1, (1, 5): -1, (7, 3): 1, (3, 7): -1}),
    _sparse({(6, 4): 1, (4, 6): -1, (7, 3): 1, (3, 7): -1}),
)


def pythagorean_pair(m: object) -> Tuple[Scalar, Scalar]:
    """(cos t, sin t) = ((1-m^2)/(1+m^2), 2m/(1+m^2)) for rational m."""
    q = gq(m)
    denominator = ONE + q * q
    return (ONE - q * q) / denominator, (q + q) / denominator


def g2_rotation(x: MatrixC, m: object) -> MatrixC:
    """exp(tX) = I + sin(t) X + (1 - cos(t)) X^2 for X with X^3 = -X."""
    square = x @ x
    if square @ x != -x:
        raise ValueError("rotation generator must satisfy X^3 = -X")
    c, s = pythagorean_pair(m)
    return MatrixC.identity(7) + x.scale(s) + square.scale(ONE - c)


@dataclass(frozen=True)
class WeightFrame:
    """Torus generators H1, H2 and the weight lines L0..L3."""

    h1: MatrixC
    h2: MatrixC
    lines: Tuple[Subspace, Subspace, Subspace, Subspace]

    @classmethod
    def standard(cls) -> "WeightFrame":
        i = I_UNIT
        l0 = unit_vector(7, 4)
        l1 = (ONE, i, ZERO, ZERO, ZERO, ZERO, ZERO)
        l2 = (ZERO, ZERO, ONE, -i, ZERO, ZERO, ZERO)
        l3 = (ZERO, ZERO, ZERO, ZERO, ZERO, ONE, -i)
        return cls(H1, H2, tuple(Subspace.line(v) for v in (l0, l1, l2, l3)))

    def line(self, k: int) -> Subspace:
        return self.lines[k]

    @staticmethod
    def weight(h: MatrixC, line: Subspace) -> Scalar:
        """The eigenvalue of h on an eigenline."""
        v = line.basis[0]
        hv = h.apply(v)
        k = next(idx for idx, c in enumerate(v) if c)
        mu = hv[k] / v[k]
        if hv != scale_vector(mu, v):
            raise ValueError("line is not an eigenline")
        return mu

    def weights(self) -> List[Tuple[Scalar, Scalar]]:
        return [(self.weight(self.h1, l), self.weight(self.h2, l)) for l in self.lines]


# =============================================================================
# Planes
# =============================================================================

def products_vanish(vectors: Sequence[Vector], others: Sequence[Vector]) -> bool:
    return all(is_zero_vector(mul_im7(v, w)) for v in vectors for w in others)


def associative_extension(plane: Subspace) -> Subspace:
    """The associative 3-plane span(x, y, x*y) containing a real 2-plane."""
    if plane.ambient != 7 or plane.dim != 2:
        raise DegeneratePlane("associative extension needs a 2-plane in C^7")
    if plane.conjugate() != plane:
        raise DegeneratePlane("plane is not real")
    x, y = plane.basis
    gram = MatrixC.from_rows([[bilinear(x, x), bilinear(x, y)], [bilinear(y, x), bilinear(y, y)]])
    if not gram.det():
        raise DegeneratePlane("plane is degenerate")
    extended = Subspace.from_vectors([x, y, mul_im7(x, y)], 7)
    if extended.dim != 3:
        raise DegeneratePlane("x*y lies in the plane")
    return extended


@dataclass
class CoassociativeReport:
    complex_coassociative: bool
    associative_part: Subspace


def coassoc_classify(plane: Subspace) -> CoassociativeReport:
    """Decide whether a 2-plane C is isotropic with C*C = 0."""
    if plane.ambient != 7 or plane.dim != 2:
        return CoassociativeReport(False, Subspace(plane.ambient))
    basis = plane.basis
    isotropic = all(not bilinear(v, w) for v in basis for w in basis)
    if not (isotropic and products_vanish(basis, basis)):
        return CoassociativeReport(False, Subspace(7))
    return CoassociativeReport(True, (plane + plane.conjugate()).hermitian_complement())


def multiplier_plane(line: Subspace) -> Subspace:
    """The 2-plane B of vectors hermitian-orthogonal to L + conj(L) with l*B = 0."""
    l = line.basis[0]
    candidates = (line + line.conjugate()).hermitian_complement()
    images = [mul_im7(l, h) for h in candidates.basis]
    kernel = MatrixC.from_columns(images, 7).nullspace()
    vectors = []
    for coeffs in kernel:
        v: Vector = (ZERO,) * 7
        for c, h in zip(coeffs, candidates.basis):
            v = add_vectors(v, scale_vector(c, h))
        vectors.append(v)
    plane = Subspace.from_vectors(vectors, 7)
    if plane.dim != 2:
        raise RankSurprise(f"multiplier plane has dimension {plane.dim}, expected 2")
    return plane
