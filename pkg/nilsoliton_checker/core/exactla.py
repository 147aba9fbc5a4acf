"""Exact rational matrices, row reduction and affine solution sets"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from nilsoliton_checker.utils.validation import ValidationError

logger = logging.getLogger("nilsoliton_checker")

Scalar = Union[int, Fraction]
Vector = Tuple[Fraction, ...]


class DimensionMismatchError(ValidationError):
    """Raised when operand shapes are incompatible"""
    pass


def to_vector(values: Iterable[Scalar]) -> Vector:
    """Convert an iterable of ints/Fractions to an immutable Fraction vector"""
    return tuple(Fraction(value) for value in values)


def unit_vector(n: int, index: int) -> Vector:
    """The 0-based standard basis vector e_index of length n"""
    return tuple(Fraction(1) if i == index else Fraction(0) for i in range(n))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatchError(f"cannot take dot product of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def vector_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError(f"cannot add vectors of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vector_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError(f"cannot subtract vectors of lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vector_scale(c: Scalar, v: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def primitive_integer_vector(v: Sequence[Fraction]) -> Vector:
    """
    Rescale a nonzero rational vector to coprime integers with a positive first nonzero entry.

    Returns the zero vector unchanged.
    """
    nonzero = [a for a in v if a != 0]
    if not nonzero:
        return to_vector(v)
    denominator_lcm = 1
    for a in nonzero:
        denominator_lcm = denominator_lcm * a.denominator // math.gcd(denominator_lcm, a.denominator)
    integers = [int(a * denominator_lcm) for a in v]
    common = 0
    for value in integers:
        common = math.gcd(common, abs(value))
    sign = 1 if nonzero[0] > 0 else -1
    return tuple(Fraction(sign * value // common) for value in integers)


class RatMatrix:
    """Immutable dense matrix of Fractions"""

    __slots__ = ("_rows", "_nrows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[Scalar]], ncols: Optional[int] = None):
        converted = tuple(to_vector(row) for row in rows)
        if converted:
            width = len(converted[0])
            if any(len(row) != width for row in converted):
                raise DimensionMismatchError("all rows of a matrix must have the same length")
            if ncols is not None and ncols != width:
                raise DimensionMismatchError(f"rows have length {width}, expected {ncols}")
        else:
            width = ncols or 0
        self._rows = converted
        self._nrows = len(converted)
        self._ncols = width

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "RatMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], nrows: Optional[int] = None) -> "RatMatrix":
        if not columns:
            return cls.zeros(nrows or 0, 0)
        height = len(columns[0])
        if any(len(column) != height for column in columns):
            raise DimensionMismatchError("all columns of a matrix must have the same length")
        return cls([[column[i] for column in columns] for i in range(height)], ncols=len(columns))

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> Tuple[int, int]:
        return self._nrows, self._ncols

    @property
    def rows(self) -> Tuple[Vector, ...]:
        return self._rows

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self._ncols)]

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in row) for row in self._rows)
        return f"RatMatrix({self._nrows}x{self._ncols}: [{body}])"

    def _check_same_shape(self, other: "RatMatrix", op: str):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot {op} matrices of shapes {self.shape} and {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other, "add")
        return RatMatrix((vector_add(a, b) for a, b in zip(self._rows, other._rows)), ncols=self._ncols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other, "subtract")
        return RatMatrix((vector_sub(a, b) for a, b in zip(self._rows, other._rows)), ncols=self._ncols)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "RatMatrix":
        return RatMatrix((vector_scale(c, row) for row in self._rows), ncols=self._ncols)

    def __mul__(self, c: Scalar) -> "RatMatrix":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: Union["RatMatrix", Sequence[Scalar]]):
        if isinstance(other, RatMatrix):
            if self._ncols != other._nrows:
                raise DimensionMismatchError(f"cannot multiply shapes {self.shape} and {other.shape}")
            columns = other.columns()
            return RatMatrix(
                ([dot(row, column) for column in columns] for row in self._rows),
                ncols=other._ncols,
            )
        vector = to_vector(other)
        if len(vector) != self._ncols:
            raise DimensionMismatchError(f"cannot multiply shape {self.shape} by vector of length {len(vector)}")
        return tuple(dot(row, vector) for row in self._rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.columns(), ncols=self._nrows)

    @property
    def is_square(self) -> bool:
        return self._nrows == self._ncols

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatchError(f"trace of non-square matrix {self.shape}")
        return sum((self._rows[i][i] for i in range(self._nrows)), Fraction(0))

    def diagonal(self) -> Vector:
        return tuple(self._rows[i][i] for i in range(min(self._nrows, self._ncols)))

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def is_diagonal(self) -> bool:
        return self.is_square and all(
            self._rows[i][j] == 0 for i in range(self._nrows) for j in range(self._ncols) if i != j
        )

    def is_zero(self) -> bool:
        return all(is_zero_vector(row) for row in self._rows)

    def submatrix(self, row_indices: Sequence[int], column_indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix(
            ([self._rows[i][j] for j in column_indices] for i in row_indices),
            ncols=len(column_indices),
        )

    def flatten(self) -> Vector:
        """Row-major entries"""
        return tuple(a for row in self._rows for a in row)

    def augment(self, column: Sequence[Scalar]) -> "RatMatrix":
        if len(column) != self._nrows:
            raise DimensionMismatchError(f"cannot append column of length {len(column)} to {self.shape}")
        return RatMatrix((row + (Fraction(c),) for row, c in zip(self._rows, column)), ncols=self._ncols + 1)

    def to_strings(self) -> List[List[str]]:
        return [[str(a) for a in row] for row in self._rows]


def trace_of_product(a: RatMatrix, b: RatMatrix) -> Fraction:
    """trace(A @ B) without forming the product"""
    if a.ncols != b.nrows or a.nrows != b.ncols:
        raise DimensionMismatchError(f"trace of product undefined for shapes {a.shape} and {b.shape}")
    total = Fraction(0)
    for i in range(a.nrows):
        row = a.row(i)
        for j in range(a.ncols):
            if row[j]:
                total += row[j] * b[j, i]
    return total


def _rref_rows(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Gauss-Jordan elimination in place; returns the rows and pivot columns"""
    pivots: List[int] = []
    pivot_row = 0
    nrows = len(rows)
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        source = next((r for r in range(pivot_row, nrows) if rows[r][col] != 0), None)
        if source is None:
            continue
        rows[pivot_row], rows[source] = rows[source], rows[pivot_row]
        pivot_value = rows[pivot_row][col]
        if pivot_value != 1:
            rows[pivot_row] = [a / pivot_value for a in rows[pivot_row]]
        current = rows[pivot_row]
        for r in range(nrows):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], current)]
        pivots.append(col)
        pivot_row += 1
    return rows, pivots


def rref(m: RatMatrix) -> Tuple[RatMatrix, List[int]]:
    """
    Reduced row-echelon form.

    Returns:
        Tuple of (reduced matrix, pivot column indices)
    """
    rows, pivots = _rref_rows([list(row) for row in m.rows], m.ncols)
    return RatMatrix(rows, ncols=m.ncols), pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def _nullspace_from_rref(reduced: RatMatrix, pivots: Sequence[int], ncols: int) -> List[Vector]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row_index, free]
        basis.append(tuple(vector))
    return basis


def nullspace(m: RatMatrix) -> List[Vector]:
    """Basis of {x : m x = 0}, one vector per free column in ascending order"""
    reduced, pivots = rref(m)
    return _nullspace_from_rref(reduced, pivots, m.ncols)


def nullspace_sparse(rows: Iterable[Dict[int, Fraction]], ncols: int) -> List[Vector]:
    """
    Nullspace of a sparse system given as {column: coefficient} rows.

    Rows are folded one at a time into a fully reduced pivot table, so the
    result equals nullspace() of the equivalent dense matrix.
    """
    pivot_rows: Dict[int, Dict[int, Fraction]] = {}
    processed = 0
    for raw in rows:
        processed += 1
        row = {col: Fraction(value) for col, value in raw.items() if value != 0}
        for pivot in [col for col in row if col in pivot_rows]:
            factor = row.get(pivot)
            if not factor:
                continue
            for col, value in pivot_rows[pivot].items():
                updated = row.get(col, Fraction(0)) - factor * value
                if updated:
                    row[col] = updated
                else:
                    row.pop(col, None)
        if not row:
            continue
        pivot = min(row)
        scale = row[pivot]
        row = {col: value / scale for col, value in row.items()}
        for other in pivot_rows.values():
            factor = other.get(pivot)
            if not factor:
                continue
            for col, value in row.items():
                updated = other.get(col, Fraction(0)) - factor * value
                if updated:
                    other[col] = updated
                else:
                    other.pop(col, None)
        pivot_rows[pivot] = row

    logger.debug(f"Sparse elimination: {processed} rows, {ncols} columns, rank {len(pivot_rows)}")

    basis = []
    for free in range(ncols):
        if free in pivot_rows:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for pivot, row in pivot_rows.items():
            value = row.get(free)
            if value:
                vector[pivot] = -value
        basis.append(tuple(vector))
    return basis


def _in_span(basis: Sequence[Vector], v: Sequence[Fraction]) -> bool:
    if is_zero_vector(v):
        return True
    if not basis:
        return False
    return rank(RatMatrix(list(basis) + [to_vector(v)])) == rank(RatMatrix(basis))


@dataclass(frozen=True)
class AffineSolutionSet:
    """Solution set particular + span(nullspace_basis), or an inconsistent system"""

    ambient_dim: int
    consistent: bool
    particular: Optional[Vector]
    nullspace_basis: Tuple[Vector, ...]

    @property
    def dimension(self) -> Optional[int]:
        return len(self.nullspace_basis) if self.consistent else None

    def point(self, coefficients: Sequence[Scalar]) -> Vector:
        """particular + sum of coefficients[i] * nullspace_basis[i]"""
        if not self.consistent:
            raise ValidationError("an inconsistent system has no points")
        if len(coefficients) != len(self.nullspace_basis):
            raise DimensionMismatchError(
                f"expected {len(self.nullspace_basis)} coefficients, got {len(coefficients)}"
            )
        result = list(self.particular)
        for c, w in zip(coefficients, self.nullspace_basis):
            c = Fraction(c)
            if c:
                result = [a + c * b for a, b in zip(result, w)]
        return tuple(result)

    def contains(self, v: Sequence[Scalar]) -> bool:
        if not self.consistent:
            return False
        vector = to_vector(v)
        if len(vector) != self.ambient_dim:
            raise DimensionMismatchError(f"expected vector of length {self.ambient_dim}, got {len(vector)}")
        return _in_span(self.nullspace_basis, vector_sub(vector, self.particular))

    def zero_components(self) -> Tuple[int, ...]:
        """0-based indices that vanish on every point of the set"""
        if not self.consistent:
            return ()
        return tuple(
            i for i in range(self.ambient_dim)
            if self.particular[i] == 0 and all(w[i] == 0 for w in self.nullspace_basis)
        )

    def equals(self, other: "AffineSolutionSet") -> bool:
        """Set equality, independent of the chosen particular point and basis"""
        if self.ambient_dim != other.ambient_dim or self.consistent != other.consistent:
            return False
        if not self.consistent:
            return True
        if len(self.nullspace_basis) != len(other.nullspace_basis):
            return False
        return self.contains(other.particular) and all(
            _in_span(self.nullspace_basis, w) for w in other.nullspace_basis
        )

    @classmethod
    def from_generators(cls, particular: Sequence[Scalar], directions: Sequence[Sequence[Scalar]]) -> "AffineSolutionSet":
        """Build a set from a point and independent directions (e.g. published vectors)"""
        return cls(
            ambient_dim=len(particular),
            consistent=True,
            particular=to_vector(particular),
            nullspace_basis=tuple(to_vector(w) for w in directions),
        )


def solve_affine(a: RatMatrix, b: Sequence[Scalar]) -> AffineSolutionSet:
    """Exact solution set of a x = b"""
    rhs = to_vector(b)
    if a.nrows != len(rhs):
        raise DimensionMismatchError(f"matrix has {a.nrows} rows but right-hand side has length {len(rhs)}")

    reduced, pivots = rref(a.augment(rhs))
    coefficient_pivots = [p for p in pivots if p < a.ncols]
    basis = tuple(_nullspace_from_rref(reduced, coefficient_pivots, a.ncols))

    if a.ncols in pivots:
        logger.debug(f"Inconsistent system: {a.nrows}x{a.ncols}")
        return AffineSolutionSet(a.ncols, False, None, basis)

    particular = [Fraction(0)] * a.ncols
    for row_index, pivot in enumerate(coefficient_pivots):
        particular[pivot] = reduced[row_index, a.ncols]
    return AffineSolutionSet(a.ncols, True, tuple(particular), basis)


def sample_affine_points(
    solution_set: AffineSolutionSet,
    count: int,
    seed: int = 0,
    coefficient_bound: int = 50
) -> List[Vector]:
    """
    Random rational points of a consistent solution set.

    Coefficients are p/q with |p| <= coefficient_bound and 1 <= q <= coefficient_bound,
    drawn from a seeded numpy generator so runs are reproducible.
    """
    if not solution_set.consistent:
        return []
    if count <= 0 or coefficient_bound <= 0:
        raise ValidationError("count and coefficient_bound must be positive")

    rng = np.random.default_rng(seed)
    width = len(solution_set.nullspace_basis)
    numerators = rng.integers(-coefficient_bound, coefficient_bound + 1, size=(count, width))
    denominators = rng.integers(1, coefficient_bound + 1, size=(count, width))
    return [
        solution_set.point([Fraction(int(p), int(q)) for p, q in zip(numerators[i], denominators[i])])
        for i in range(count)
    ]
