"""Derivation algebras and Nikolayevsky (pre-Einstein) derivations"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from nilsoliton_checker.core.exactla import (
    DimensionMismatchError,
    RatMatrix,
    Vector,
    nullspace,
    nullspace_sparse,
    primitive_integer_vector,
    solve_affine,
    trace_of_product,
    unit_vector,
)
from nilsoliton_checker.core.liecore import Grading, LieAlgebra, bracket
from nilsoliton_checker.core.simplex import positive_solution
from nilsoliton_checker.utils.validation import ValidationError

logger = logging.getLogger("nilsoliton_checker")


class DerivationInputError(ValidationError):
    """Raised when a matrix cannot serve as the requested kind of derivation"""
    pass


@dataclass(frozen=True)
class DerivationBasis:
    """Basis of Der(g) as n x n matrices; column l of a matrix is D(x_l)"""

    algebra_dim: int
    basis: Tuple[RatMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def _leibniz_rows(g: LieAlgebra) -> List[Dict[int, Fraction]]:
    """
    Sparse rows of D[x_i,x_j] - [D x_i, x_j] - [x_i, D x_j] = 0 for i < j,
    one row per output coordinate p. Unknown D[r][s] has column r * n + s.
    """
    n = g.dim
    rows: List[Dict[int, Fraction]] = []
    for i in range(n):
        for j in range(i + 1, n):
            per_output: Dict[int, Dict[int, Fraction]] = {}

            def add(p: int, column: int, value: Fraction):
                row = per_output.setdefault(p, {})
                row[column] = row.get(column, Fraction(0)) + value

            for l, c in g.products(i, j):
                for p in range(n):
                    add(p, p * n + l, c)
            for l in range(n):
                for p, c in g.products(l, j):
                    add(p, l * n + i, -c)
                for p, c in g.products(i, l):
                    add(p, l * n + j, -c)

            for p in sorted(per_output):
                row = {col: value for col, value in per_output[p].items() if value != 0}
                if row:
                    rows.append(row)
    return rows


def derivation_algebra(g: LieAlgebra) -> DerivationBasis:
    """Exact basis of Der(g) from the Leibniz conditions on basis pairs"""
    n = g.dim
    rows = _leibniz_rows(g)
    solutions = nullspace_sparse(rows, n * n)
    basis = tuple(
        RatMatrix([solution[r * n:(r + 1) * n] for r in range(n)], ncols=n)
        for solution in solutions
    )
    logger.debug(f"Der(g): {len(rows)} equations in {n * n} unknowns, dimension {len(basis)}")
    return DerivationBasis(n, basis)


def _check_square(g: LieAlgebra, m: RatMatrix):
    if m.shape != (g.dim, g.dim):
        raise DimensionMismatchError(f"expected a {g.dim}x{g.dim} matrix, got {m.nrows}x{m.ncols}")


def is_derivation(g: LieAlgebra, m: RatMatrix) -> bool:
    """True iff M[x_i,x_j] = [M x_i, x_j] + [x_i, M x_j] for all basis pairs"""
    _check_square(g, m)
    n = g.dim
    images = m.columns()
    for i in range(n):
        xi = unit_vector(n, i)
        for j in range(i + 1, n):
            xj = unit_vector(n, j)
            left = m @ bracket(g, xi, xj)
            right_first = bracket(g, images[i], xj)
            right_second = bracket(g, xi, images[j])
            if any(a != b + c for a, b, c in zip(left, right_first, right_second)):
                return False
    return True


def commutator(f: RatMatrix, h: RatMatrix) -> RatMatrix:
    return (f @ h) - (h @ f)


def rank_one_scale(d: RatMatrix) -> Fraction:
    """trace(D) / trace(D^2)"""
    trace_square = trace_of_product(d, d)
    if trace_square == 0:
        raise DerivationInputError("trace(D^2) is zero")
    return d.trace() / trace_square


def nikolayevsky_rank_one(g: LieAlgebra, d: RatMatrix) -> RatMatrix:
    """
    (trace D / trace D^2) D for a nonzero diagonal derivation D.

    This is the Nikolayevsky derivation when the semisimple derivations
    commuting with it are the multiples of D; diagonality stands in for
    semisimplicity.
    """
    _check_square(g, d)
    if not d.is_diagonal():
        raise DerivationInputError("the candidate derivation must be diagonal in the stored basis")
    if not is_derivation(g, d):
        raise DerivationInputError("the candidate matrix is not a derivation")
    return d.scale(rank_one_scale(d))


def verify_pre_einstein(g: LieAlgebra, d: RatMatrix, der: Optional[DerivationBasis] = None) -> bool:
    """True iff trace(D F) = trace(F) for every F in a basis of Der(g)"""
    _check_square(g, d)
    if der is None:
        der = derivation_algebra(g)
    return all(trace_of_product(d, f) == f.trace() for f in der.basis)


def _root_rows(g: LieAlgebra) -> RatMatrix:
    n = g.dim
    rows = []
    for i, j, k in g.triples:
        row = [0] * n
        row[i - 1] += 1
        row[j - 1] += 1
        row[k - 1] -= 1
        rows.append(row)
    return RatMatrix(rows, ncols=n)


def diagonal_derivations(g: LieAlgebra) -> List[Vector]:
    """
    Basis of {w : w_i + w_j = w_k on every nonzero c_ij^k}; diag(w) is then a derivation.

    Vectors are returned as primitive integer vectors.
    """
    basis = [primitive_integer_vector(v) for v in nullspace(_root_rows(g))]
    logger.debug(f"Diagonal torus has dimension {len(basis)}")
    return basis


def torus_pre_einstein(g: LieAlgebra) -> Optional[RatMatrix]:
    """
    The unique diagonal derivation D in the diagonal torus with
    trace(D T) = trace(T) for every T in the torus, or None for a zero torus.
    """
    torus = diagonal_derivations(g)
    if not torus:
        return None
    gram = RatMatrix([[sum(a * b for a, b in zip(s, t)) for t in torus] for s in torus])
    traces = [sum(t, Fraction(0)) for t in torus]
    solution = solve_affine(gram, traces)
    coefficients = solution.particular
    values = [sum((c * t[index] for c, t in zip(coefficients, torus)), Fraction(0)) for index in range(g.dim)]
    return RatMatrix.diag(values)


def derive_grading(g: LieAlgebra) -> Optional[Grading]:
    """A positive integer grading compatible with all brackets, from a positive element of the torus"""
    roots = _root_rows(g)
    if roots.nrows == 0:
        return Grading(tuple([1] * g.dim))
    witness = positive_solution(roots, [0] * roots.nrows)
    if witness is None:
        logger.warning("No positive element in the diagonal torus; the algebra has no positive grading in this basis")
        return None
    torus = diagonal_derivations(g)
    if len(torus) == 1:
        witness = torus[0]
    return Grading(tuple(int(w) for w in primitive_integer_vector(witness)))


def restrict_to_coordinates(f: RatMatrix, indices: Sequence[int]) -> RatMatrix:
    """pi o F restricted to span{x_i : i in indices}, where pi drops the other coordinates (1-based)"""
    zero_based = [i - 1 for i in indices]
    return f.submatrix(zero_based, zero_based)
