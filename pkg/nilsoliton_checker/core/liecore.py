"""
Lie algebras given by structure constants over an ordered basis

Basis indices are 1-based in every public signature (x_1 .. x_n) and
vectors are 0-based tuples of Fractions, so x_i is unit_vector(n, i - 1).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from nilsoliton_checker.core.exactla import (
    DimensionMismatchError,
    RatMatrix,
    Scalar,
    Vector,
    is_zero_vector,
    nullspace,
    rank,
    rref,
    to_vector,
    unit_vector,
)
from nilsoliton_checker.utils.validation import ValidationError

logger = logging.getLogger("nilsoliton_checker")

Triple = Tuple[int, int, int]


class JacobiError(ValidationError):
    """Raised when structure constants violate the Jacobi identity"""

    def __init__(self, defects: List[Tuple[int, int, int, Vector]]):
        self.defects = defects
        listed = ", ".join(f"({i},{j},{k})" for i, j, k, _ in defects[:10])
        more = f" and {len(defects) - 10} more" if len(defects) > 10 else ""
        super().__init__(f"Jacobi identity fails on basis triples {listed}{more}")


class NotNilpotentError(ValidationError):
    """Raised when the lower central series stabilizes above zero"""
    pass


def triple_order_key(triple: Triple) -> Tuple[int, int, int]:
    """Ordering of nonzero structure constants: target k, then i, then j"""
    i, j, k = triple
    return k, i, j


class LieAlgebra:
    """
    Structure constants c_ij^k for i < j on the basis x_1 .. x_n.

    Instances are immutable. The constructor validates the Jacobi identity;
    use LieAlgebra.unchecked to build a bracket for diagnosis only.
    """

    def __init__(self, dim: int, brackets: Mapping[Triple, Scalar], validate: bool = True):
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ValidationError(f"dimension must be a positive integer, got {dim!r}")

        canonical: Dict[Triple, Fraction] = {}
        for triple, value in brackets.items():
            i, j, k = triple
            if not (1 <= i < j <= dim):
                raise ValidationError(f"bracket ({i},{j},{k}) must satisfy 1 <= i < j <= {dim}")
            if not (1 <= k <= dim):
                raise ValidationError(f"bracket ({i},{j},{k}) has target outside 1..{dim}")
            value = Fraction(value)
            if value == 0:
                raise ValidationError(f"bracket ({i},{j},{k}) has a zero coefficient")
            canonical[(i, j, k)] = value

        self._dim = dim
        self._brackets = {t: canonical[t] for t in sorted(canonical, key=triple_order_key)}
        # 0-based products for both argument orders: (a, b) -> [(target, coefficient)]
        self._products: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
        for (i, j, k), value in self._brackets.items():
            self._products.setdefault((i - 1, j - 1), []).append((k - 1, value))
            self._products.setdefault((j - 1, i - 1), []).append((k - 1, -value))

        if validate:
            defects = jacobi_check(self)
            if defects:
                raise JacobiError(defects)

    @classmethod
    def unchecked(cls, dim: int, brackets: Mapping[Triple, Scalar]) -> "LieAlgebra":
        """Build without the Jacobi check (for diagnosing bad input)"""
        return cls(dim, brackets, validate=False)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls(dim, {})

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def brackets(self) -> Dict[Triple, Fraction]:
        """Nonzero constants in (k, i, j) order"""
        return dict(self._brackets)

    @property
    def triples(self) -> List[Triple]:
        return list(self._brackets)

    @property
    def is_abelian(self) -> bool:
        return not self._brackets

    def products(self, a: int, b: int) -> List[Tuple[int, Fraction]]:
        """[x_a, x_b] as (target, coefficient) pairs, 0-based indices"""
        return self._products.get((a, b), [])

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        """c_ij^k with 1-based indices, any order of i and j"""
        if i < j:
            return self._brackets.get((i, j, k), Fraction(0))
        if i > j:
            return -self._brackets.get((j, i, k), Fraction(0))
        return Fraction(0)

    def basis_vector(self, index: int) -> Vector:
        """x_index, 1-based"""
        if not 1 <= index <= self._dim:
            raise ValidationError(f"basis index {index} outside 1..{self._dim}")
        return unit_vector(self._dim, index - 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self._dim == other._dim and self._brackets == other._brackets

    def __hash__(self) -> int:
        return hash((self._dim, tuple(self._brackets.items())))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self._dim}, brackets={len(self._brackets)})"


def _check_length(g: LieAlgebra, v: Sequence, name: str):
    if len(v) != g.dim:
        raise DimensionMismatchError(f"{name} has length {len(v)}, expected {g.dim}")


def bracket(g: LieAlgebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """Bilinear extension of the structure constants"""
    _check_length(g, x, "x")
    _check_length(g, y, "y")
    x = to_vector(x)
    y = to_vector(y)
    result = [Fraction(0)] * g.dim
    for a, xa in enumerate(x):
        if not xa:
            continue
        for b, yb in enumerate(y):
            if not yb:
                continue
            for target, value in g.products(a, b):
                result[target] += xa * yb * value
    return tuple(result)


def jacobi_check(g: LieAlgebra) -> List[Tuple[int, int, int, Vector]]:
    """
    Jacobi defects on basis triples.

    Returns:
        (i, j, k, defect) for every i < j < k with
        [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] != 0
    """
    n = g.dim
    basis = [unit_vector(n, a) for a in range(n)]
    defects = []
    for i in range(n):
        for j in range(i + 1, n):
            xij = bracket(g, basis[i], basis[j])
            for k in range(j + 1, n):
                xjk = bracket(g, basis[j], basis[k])
                xki = bracket(g, basis[k], basis[i])
                if is_zero_vector(xij) and is_zero_vector(xjk) and is_zero_vector(xki):
                    continue
                first = bracket(g, xij, basis[k])
                second = bracket(g, xjk, basis[i])
                third = bracket(g, xki, basis[j])
                defect = tuple(a + b + c for a, b, c in zip(first, second, third))
                if not is_zero_vector(defect):
                    defects.append((i + 1, j + 1, k + 1, defect))
    if defects:
        logger.debug(f"Jacobi check found {len(defects)} defect(s)")
    return defects


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n stored by its reduced row-echelon basis (canonical, so == is set equality)"""

    ambient_dim: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[Scalar]]) -> "Subspace":
        rows = [to_vector(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not rows:
            return cls(ambient_dim, ())
        reduced, pivots = rref(RatMatrix(rows, ncols=ambient_dim))
        return cls(ambient_dim, tuple(reduced.row(i) for i in range(len(pivots))))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(ambient_dim, [unit_vector(ambient_dim, a) for a in range(ambient_dim)])

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        """span{x_i : i in indices}, 1-based"""
        return cls.span(ambient_dim, [unit_vector(ambient_dim, i - 1) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Scalar]) -> bool:
        vector = to_vector(v)
        if len(vector) != self.ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(vector)} in ambient dimension {self.ambient_dim}")
        if is_zero_vector(vector):
            return True
        return Subspace.span(self.ambient_dim, list(self.basis) + [vector]).dim == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)


@dataclass(frozen=True)
class Grading:
    """Positive integer weights, weights[i - 1] for x_i"""

    weights: Tuple[int, ...]

    def __post_init__(self):
        if not all(isinstance(w, int) and not isinstance(w, bool) and w > 0 for w in self.weights):
            raise ValidationError(f"grading weights must be positive integers, got {self.weights}")

    def weight(self, index: int) -> int:
        return self.weights[index - 1]

    def components(self) -> Dict[int, List[int]]:
        """weight -> 1-based basis indices of that weight"""
        spaces: Dict[int, List[int]] = {}
        for index, w in enumerate(self.weights, start=1):
            spaces.setdefault(w, []).append(index)
        return spaces


def verify_grading(g: LieAlgebra, w: Grading) -> bool:
    """True iff w_i + w_j = w_k on every nonzero c_ij^k"""
    if len(w.weights) != g.dim:
        raise DimensionMismatchError(f"grading has {len(w.weights)} weights, algebra has dimension {g.dim}")
    return all(w.weight(i) + w.weight(j) == w.weight(k) for i, j, k in g.triples)


def lower_central_series(g: LieAlgebra) -> List[Subspace]:
    """g = g^(1) ⊇ g^(2) = [g, g] ⊇ ... ending with the first zero term"""
    n = g.dim
    basis = [unit_vector(n, a) for a in range(n)]
    series = [Subspace.full(n)]
    current = series[0]
    while current.dim > 0:
        following = Subspace.span(n, [bracket(g, x, w) for x in basis for w in current.basis])
        if following.dim == current.dim:
            raise NotNilpotentError(f"lower central series stabilizes at dimension {current.dim}")
        series.append(following)
        current = following
    logger.debug(f"Lower central series dimensions: {[term.dim for term in series]}")
    return series


def nilpotency_type(g: LieAlgebra) -> List[int]:
    dims = [term.dim for term in lower_central_series(g)]
    return [a - b for a, b in zip(dims, dims[1:])]


def nilpotency_step(g: LieAlgebra) -> int:
    return len(lower_central_series(g)) - 1


def commutator_ideal(g: LieAlgebra) -> Subspace:
    n = g.dim
    return Subspace.span(n, [bracket(g, unit_vector(n, a), unit_vector(n, b))
                             for a in range(n) for b in range(a + 1, n)])


def ad_matrix(g: LieAlgebra, x: Sequence[Scalar]) -> RatMatrix:
    """Column j is [x, x_j]"""
    _check_length(g, x, "x")
    return RatMatrix.from_columns([bracket(g, x, unit_vector(g.dim, j)) for j in range(g.dim)])


def ad_rank(g: LieAlgebra, x: Sequence[Scalar]) -> int:
    return rank(ad_matrix(g, x))


def centralizer(g: LieAlgebra, w: Subspace) -> Subspace:
    """{x : [x, v] = 0 for all v in W}"""
    n = g.dim
    if w.ambient_dim != n:
        raise DimensionMismatchError(f"subspace lives in dimension {w.ambient_dim}, algebra has dimension {n}")
    rows: List[Vector] = []
    for v in w.basis:
        # column a of this block is [x_a, v]
        block = RatMatrix.from_columns([bracket(g, unit_vector(n, a), v) for a in range(n)])
        rows.extend(block.rows)
    if not rows:
        return Subspace.full(n)
    return Subspace.span(n, nullspace(RatMatrix(rows, ncols=n)))


def center(g: LieAlgebra) -> Subspace:
    return centralizer(g, Subspace.full(g.dim))


def induced_subalgebra(g: LieAlgebra, indices: Sequence[int]) -> LieAlgebra:
    """
    Structure constants on a bracket-closed coordinate subspace span{x_i : i in indices},
    relabelled 1..len(indices) in increasing order of the original index.
    """
    chosen = sorted(set(indices))
    if not chosen or chosen[0] < 1 or chosen[-1] > g.dim:
        raise ValidationError(f"indices must lie in 1..{g.dim}, got {list(indices)}")
    relabel = {old: new for new, old in enumerate(chosen, start=1)}
    brackets = {}
    for (i, j, k), value in g.brackets.items():
        if i in relabel and j in relabel:
            if k not in relabel:
                raise ValidationError(f"span of {chosen} is not closed: [x_{i}, x_{j}] has an x_{k} component")
            brackets[(relabel[i], relabel[j], relabel[k])] = value
    return LieAlgebra(len(chosen), brackets)

