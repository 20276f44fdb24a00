"""
Exact linear algebra over Q(i)^n.

Matrices wrap sympy ``DomainMatrix`` over ``QQ_I`` for elimination, rank,
nullspaces, determinants and inverses. Subspaces are stored by the reduced
row-echelon form of their span, which makes equality of subspaces plain field
equality. The three forms used throughout (hermitian, symmetric bilinear and
the standard symplectic form) live in ``FormContext``.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Literal, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .errors import (
    DimensionMismatch,
    NoFixedLine,
    NotIsotropic,
    RealExtensionImpossible,
    SingularGram,
)
from .exactnum import I_UNIT, ONE, ZERO, Scalar, as_scalar, conj

Vector = Tuple[Scalar, ...]


# =============================================================================
# Vectors
# =============================================================================

def vector(values: Iterable[object]) -> Vector:
    return tuple(as_scalar(v) for v in values)


def unit_vector(n: int, index: int) -> Vector:
    return tuple(ONE if k == index else ZERO for k in range(n))


def conj_vector(v: Sequence[Scalar]) -> Vector:
    return tuple(conj(c) for c in v)


def add_vectors(v: Sequence[Scalar], w: Sequence[Scalar]) -> Vector:
    return tuple(a + b for a, b in zip(v, w))


def scale_vector(c: Scalar, v: Sequence[Scalar]) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return not any(v)


def bilinear(v: Sequence[Scalar], w: Sequence[Scalar]) -> Scalar:
    """transpose(v)*w."""
    total = ZERO
    for a, b in zip(v, w):
        total += a * b
    return total


def hermitian(v: Sequence[Scalar], w: Sequence[Scalar]) -> Scalar:
    """conj-transpose(v)*w."""
    return bilinear(conj_vector(v), w)


# =============================================================================
# Matrices
# =============================================================================

def _rows_of(dm: DomainMatrix) -> List[List[Scalar]]:
    return [list(row) for row in dm.rep.to_ddm()]


@dataclass(frozen=True)
class MatrixC:
    """Rectangular matrix over Q(i)."""

    rows: Tuple[Vector, ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[object]], cols: Optional[int] = None) -> "MatrixC":
        data = tuple(vector(r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise DimensionMismatch("ragged matrix rows")
        return cls(data, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], n: int) -> "MatrixC":
        return cls(tuple(tuple(col[i] for col in columns) for i in range(n)), len(columns))

    @classmethod
    def identity(cls, n: int) -> "MatrixC":
        return cls(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "MatrixC":
        return cls(tuple((ZERO,) * n for _ in range(m)), n)

    @classmethod
    def diag(cls, values: Sequence[object]) -> "MatrixC":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_domain(self) -> DomainMatrix:
        return DomainMatrix([list(r) for r in self.rows], self.shape, QQ_I)

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> "MatrixC":
        m, n = dm.shape
        if m == 0:
            return cls((), n)
        return cls(tuple(tuple(r) for r in _rows_of(dm)), n)

    # -- arithmetic ----------------------------------------------------------

    def __matmul__(self, other: "MatrixC") -> "MatrixC":
        if self.cols != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if not self.rows or not other.cols:
            return MatrixC.zeros(len(self.rows), other.cols)
        return MatrixC.from_domain(self.to_domain() * other.to_domain())

    def apply(self, v: Sequence[Scalar]) -> Vector:
        return tuple(bilinear(row, v) for row in self.rows)

    def __add__(self, other: "MatrixC") -> "MatrixC":
        return MatrixC(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.cols,
        )

    def __sub__(self, other: "MatrixC") -> "MatrixC":
        return self + other.scale(-ONE)

    def __neg__(self) -> "MatrixC":
        return self.scale(-ONE)

    def scale(self, c: Scalar) -> "MatrixC":
        return MatrixC(tuple(tuple(c * a for a in r) for r in self.rows), self.cols)

    def transpose(self) -> "MatrixC":
        return MatrixC(tuple(self.column(j) for j in range(self.cols)), len(self.rows))

    @property
    def T(self) -> "MatrixC":
        return self.transpose()

    def conjugate(self) -> "MatrixC":
        return MatrixC(tuple(conj_vector(r) for r in self.rows), self.cols)

    @property
    def H(self) -> "MatrixC":
        """Conjugate transpose."""
        return self.transpose().conjugate()

    def commutator(self, other: "MatrixC") -> "MatrixC":
        return self @ other - other @ self

    # -- elimination ---------------------------------------------------------

    def det(self) -> Scalar:
        if not self.rows:
            return ONE
        return self.to_domain().det()

    def inverse(self) -> "MatrixC":
        try:
            return MatrixC.from_domain(self.to_domain().inv())
        except DMNonInvertibleMatrixError as exc:
            raise ZeroDivisionError("singular matrix") from exc

    def rank(self) -> int:
        if not self.rows or not self.cols:
            return 0
        return self.to_domain().rank()

    def nullspace(self) -> List[Vector]:
        """Basis of {x : self*x = 0}."""
        if not self.rows:
            return [unit_vector(self.cols, k) for k in range(self.cols)]
        return [tuple(r) for r in _rows_of(self.to_domain().nullspace())]

    @property
    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_identity(self) -> bool:
        return self == MatrixC.identity(len(self.rows))


def block_matrix(blocks: Sequence[Sequence[MatrixC]]) -> MatrixC:
    rows: List[Vector] = []
    for block_row in blocks:
        for i in range(block_row[0].shape[0]):
            row: List[Scalar] = []
            for block in block_row:
                row.extend(block.rows[i])
            rows.append(tuple(row))
    return MatrixC.from_rows(rows)


# =============================================================================
# Subspaces
# =============================================================================

@dataclass(frozen=True)
class Subspace:
    """Subspace of Q(i)^ambient held by its reduced echelon basis."""

    ambient: int
    basis: Tuple[Vector, ...] = ()

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[object]], ambient: int) -> "Subspace":
        rows = [vector(v) for v in vectors]
        rows = [r for r in rows if not is_zero_vector(r)]
        if not rows:
            return cls(ambient)
        if any(len(r) != ambient for r in rows):
            raise DimensionMismatch(f"vectors do not live in dimension {ambient}")
        reduced, pivots = DomainMatrix([list(r) for r in rows], (len(rows), ambient), QQ_I).rref()
        echelon = _rows_of(reduced)[: len(pivots)]
        return cls(ambient, tuple(tuple(r) for r in echelon))

    @classmethod
    def line(cls, v: Sequence[object]) -> "Subspace":
        return cls.from_vectors([v], len(v))

    @classmethod
    def span_of_units(cls, ambient: int, indices: Iterable[int]) -> "Subspace":
        return cls.from_vectors([unit_vector(ambient, k) for k in indices], ambient)

    @classmethod
    def whole(cls, ambient: int) -> "Subspace":
        return cls.span_of_units(ambient, range(ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    def basis_matrix(self) -> MatrixC:
        """ambient x dim matrix whose columns are the echelon basis."""
        return MatrixC.from_columns(self.basis, self.ambient)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return Subspace.from_vectors(list(self.basis) + [v], self.ambient).dim == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return (self + other).dim == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(list(self.basis) + list(other.basis), self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.is_zero or other.is_zero:
            return Subspace(self.ambient)
        columns = list(self.basis) + [scale_vector(-ONE, w) for w in other.basis]
        stacked = MatrixC.from_columns(columns, self.ambient)
        vectors = []
        for coeffs in stacked.nullspace():
            v = (ZERO,) * self.ambient
            for c, u in zip(coeffs, self.basis):
                v = add_vectors(v, scale_vector(c, u))
            vectors.append(v)
        return Subspace.from_vectors(vectors, self.ambient)

    def conjugate(self) -> "Subspace":
        return Subspace.from_vectors([conj_vector(b) for b in self.basis], self.ambient)

    def image(self, m: MatrixC) -> "Subspace":
        return Subspace.from_vectors([m.apply(b) for b in self.basis], m.shape[0])

    def hermitian_complement(self) -> "Subspace":
        if self.is_zero:
            return Subspace.whole(self.ambient)
        rows = MatrixC.from_rows([conj_vector(b) for b in self.basis], self.ambient)
        return Subspace.from_vectors(rows.nullspace(), self.ambient)

    def complement(self, form: "FormContext") -> "Subspace":
        """{x : form(b, x) = 0 for every basis vector b}."""
        if self.is_zero:
            return Subspace.whole(self.ambient)
        if form.kind is FormKind.HERMITIAN:
            return self.hermitian_complement()
        rows = [form.row_functional(b) for b in self.basis]
        return Subspace.from_vectors(
            MatrixC.from_rows(rows, self.ambient).nullspace(), self.ambient
        )

    def projection(self) -> MatrixC:
        return hermitian_projection(self)


def subspace_from(vectors: Sequence[Sequence[object]], ambient: Optional[int] = None) -> Subspace:
    if ambient is None:
        if not vectors:
            raise DimensionMismatch("ambient dimension needed for an empty spanning set")
        ambient = len(vectors[0])
    return Subspace.from_vectors(vectors, ambient)


def hermitian_projection(space: Subspace) -> MatrixC:
    """B (B* B)^-1 B* for the echelon basis B; the zero matrix for the zero space."""
    n = space.ambient
    if space.is_zero:
        return MatrixC.zeros(n, n)
    b = space.basis_matrix()
    gram = b.H @ b
    if not gram.det():
        raise SingularGram("hermitian Gram matrix is singular")
    return b @ gram.inverse() @ b.H


# =============================================================================
# Forms
# =============================================================================

class FormKind(Enum):
    HERMITIAN = "hermitian"
    SYMMETRIC_BILINEAR = "symmetricBilinear"
    SYMPLECTIC = "symplectic"


def symplectic_form(n: int) -> MatrixC:
    """J = (0 I; -I 0) on C^(2n)."""
    rows = []
    for i in range(2 * n):
        row = [ZERO] * (2 * n)
        if i < n:
            row[i + n] = ONE
        else:
            row[i - n] = -ONE
        rows.append(row)
    return MatrixC.from_rows(rows, 2 * n)


@dataclass(frozen=True)
class FormContext:
    kind: FormKind
    J: Optional[MatrixC] = None

    @classmethod
    def hermitian(cls) -> "FormContext":
        return cls(FormKind.HERMITIAN)

    @classmethod
    def bilinear(cls) -> "FormContext":
        return cls(FormKind.SYMMETRIC_BILINEAR)

    @classmethod
    def symplectic(cls, n: int) -> "FormContext":
        return cls(FormKind.SYMPLECTIC, symplectic_form(n))

    def pair(self, v: Sequence[Scalar], w: Sequence[Scalar]) -> Scalar:
        if self.kind is FormKind.HERMITIAN:
            return hermitian(v, w)
        if self.kind is FormKind.SYMMETRIC_BILINEAR:
            return bilinear(v, w)
        return bilinear(v, self.J.apply(w))

    def row_functional(self, v: Sequence[Scalar]) -> Vector:
        """The row r with pair(v, w) = r*w."""
        if self.kind is FormKind.HERMITIAN:
            return conj_vector(v)
        if self.kind is FormKind.SYMMETRIC_BILINEAR:
            return tuple(v)
        return self.J.T.apply(v)

    def vanishes_on(self, space: Subspace) -> bool:
        return all(not self.pair(v, w) for v in space.basis for w in space.basis)


@dataclass
class IsotropyReport:
    isotropic: bool
    lagrangian: bool
    real: bool


def _check_form_dimension(space: Subspace, form: FormContext) -> None:
    if form.kind is FormKind.SYMPLECTIC:
        if space.ambient % 2 or form.J.shape[0] != space.ambient:
            raise DimensionMismatch(
                f"symplectic form on C^{form.J.shape[0]} does not act on C^{space.ambient}"
            )


def isotropic_classify(space: Subspace, form: FormContext) -> IsotropyReport:
    _check_form_dimension(space, form)
    isotropic = form.vanishes_on(space)
    lagrangian = (
        form.kind is FormKind.SYMPLECTIC and isotropic and 2 * space.dim == space.ambient
    )
    return IsotropyReport(isotropic, lagrangian, space.conjugate() == space)


def extend_to_lagrangian(
    space: Subspace, form: FormContext, flavor: Literal["any", "real"] = "any"
) -> Subspace:
    """Greedy symplectic completion of an isotropic subspace to a Lagrangian one.

    Candidates are the standard basis vectors in index order, then the echelon
    basis of the symplectic complement. With flavor "real" the result is
    conjugation invariant and contains space + conj(space).
    """
    if form.kind is not FormKind.SYMPLECTIC:
        raise DimensionMismatch("Lagrangian completion needs the symplectic form")
    _check_form_dimension(space, form)
    if not form.vanishes_on(space):
        raise NotIsotropic("subspace is not isotropic for the symplectic form")
    current = space
    if flavor == "real":
        current = space + space.conjugate()
        if not form.vanishes_on(current):
            raise RealExtensionImpossible("V + conj(V) is not isotropic")
    n = space.ambient
    while 2 * current.dim < n:
        comp = current.complement(form)
        candidates = [unit_vector(n, k) for k in range(n)] + list(comp.basis)
        for candidate in candidates:
            if comp.contains(candidate) and not current.contains(candidate):
                current = current + Subspace.line(candidate)
                break
    return current


def antilinear_fixed_line(space: Subspace, s: MatrixC) -> Subspace:
    """A line L in space with s*conj(L) = L."""

    def twist(v: Vector) -> Vector:
        return s.apply(conj_vector(v))

    for b in space.basis:
        tb = twist(b)
        for candidate in (add_vectors(b, tb), scale_vector(I_UNIT, add_vectors(b, scale_vector(-ONE, tb)))):
            if is_zero_vector(candidate):
                continue
            line = Subspace.line(candidate)
            if space.contains_subspace(line) and Subspace.line(twist(candidate)) == line:
                return line
    raise NoFixedLine("v -> s*conj(v) fixes no line of the subspace")
