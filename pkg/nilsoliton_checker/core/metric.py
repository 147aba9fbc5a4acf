"""Ricci curvature of diagonal inner products and the direct nilsoliton test"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from nilsoliton_checker.core.derivations import DerivationBasis, derivation_algebra
from nilsoliton_checker.core.exactla import DimensionMismatchError, RatMatrix, Scalar, Vector, solve_affine, to_vector
from nilsoliton_checker.core.liecore import LieAlgebra
from nilsoliton_checker.utils.validation import ValidationError

logger = logging.getLogger("nilsoliton_checker")


@dataclass(frozen=True)
class DiagonalMetric:
    """Squared norms q_i of an orthogonal basis"""

    q: Vector

    def __post_init__(self):
        values = to_vector(self.q)
        if not values or any(value <= 0 for value in values):
            raise ValidationError(f"metric entries must be positive, got {[str(v) for v in values]}")
        object.__setattr__(self, "q", values)

    @classmethod
    def identity(cls, n: int) -> "DiagonalMetric":
        return cls(tuple([Fraction(1)] * n))

    @property
    def dim(self) -> int:
        return len(self.q)

    def scaled(self, c: Scalar) -> "DiagonalMetric":
        return DiagonalMetric(tuple(Fraction(c) * value for value in self.q))

    def matrix(self) -> RatMatrix:
        return RatMatrix.diag(self.q)


@dataclass(frozen=True)
class SolitonMetric:
    """Ric = beta Id + derivation"""

    beta: Fraction
    derivation: RatMatrix


def _check_metric(g: LieAlgebra, metric: DiagonalMetric):
    if metric.dim != g.dim:
        raise DimensionMismatchError(f"metric has {metric.dim} entries, algebra has dimension {g.dim}")


def ricci_form(g: LieAlgebra, metric: DiagonalMetric) -> RatMatrix:
    """
    ric(x_a, x_b) for an orthogonal basis with squared norms q:

        -1/2 sum_i (1/q_i) sum_k c_ai^k c_bi^k q_k
        +1/4 sum_{i,j} (1/(q_i q_j)) c_ij^a q_a c_ij^b q_b

    This is invariant under q -> c q.
    """
    _check_metric(g, metric)
    n = g.dim
    q = metric.q
    r = [[Fraction(0)] * n for _ in range(n)]

    # first sum: columns of ad_{x_i} weighted by q_k / q_i
    for i in range(n):
        images = [dict(g.products(a, i)) for a in range(n)]
        for a in range(n):
            if not images[a]:
                continue
            for b in range(a, n):
                common = images[a].keys() & images[b].keys()
                if not common:
                    continue
                total = sum((images[a][k] * images[b][k] * q[k] for k in common), Fraction(0))
                value = -total / (2 * q[i])
                r[a][b] += value
                if b != a:
                    r[b][a] += value

    # second sum over ordered pairs (i, j)
    for i in range(n):
        for j in range(n):
            targets = g.products(i, j)
            if not targets:
                continue
            weight = Fraction(1, 4) / (q[i] * q[j])
            for a, ca in targets:
                for b, cb in targets:
                    r[a][b] += weight * ca * q[a] * cb * q[b]

    return RatMatrix(r, ncols=n)


def ricci_endomorphism(g: LieAlgebra, metric: DiagonalMetric) -> RatMatrix:
    """Ric = Q^-1 R, so q_a Ric_ab = R_ab"""
    form = ricci_form(g, metric)
    return RatMatrix(
        ([value / metric.q[a] for value in form.row(a)] for a in range(g.dim)),
        ncols=g.dim,
    )


def soliton_metric_check(
    g: LieAlgebra,
    metric: DiagonalMetric,
    der: Optional[DerivationBasis] = None
) -> Optional[SolitonMetric]:
    """
    Decide whether Ric = beta Id + D with D a derivation.

    Returns:
        SolitonMetric(beta, D) when it holds, else None
    """
    ric = ricci_endomorphism(g, metric)
    if ric.is_zero():
        logger.debug("Metric is Ricci flat; beta = 0")
        return SolitonMetric(Fraction(0), ric)
    if der is None:
        der = derivation_algebra(g)
    target = ric.flatten()

    # beta = 0 whenever Ric is itself a derivation
    if _in_span([f.flatten() for f in der.basis], target):
        logger.debug("Ricci endomorphism is a derivation; beta = 0")
        return SolitonMetric(Fraction(0), ric)

    identity = RatMatrix.identity(g.dim)
    columns = [identity.flatten()] + [f.flatten() for f in der.basis]
    solution = solve_affine(RatMatrix.from_columns(columns), target)
    if not solution.consistent:
        logger.debug("Ricci endomorphism is not in span(Id, Der(g))")
        return None

    beta = solution.particular[0]
    derivation = ric - identity.scale(beta)
    logger.debug(f"Nilsoliton metric with beta = {beta}")
    return SolitonMetric(beta, derivation)


def _in_span(vectors: Sequence[Vector], target: Vector) -> bool:
    if not vectors:
        return all(value == 0 for value in target)
    return solve_affine(RatMatrix.from_columns(list(vectors)), target).consistent
