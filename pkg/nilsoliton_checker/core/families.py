"""Constructors for the parametric families of nonsoliton nilpotent Lie algebras"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, NamedTuple, Tuple, Union

from nilsoliton_checker.core.exactla import RatMatrix
from nilsoliton_checker.core.liecore import Grading, LieAlgebra, Triple
from nilsoliton_checker.utils.validation import (
    ValidationError,
    parse_positive_rational,
    validate_family_params,
)

logger = logging.getLogger("nilsoliton_checker")

RationalLike = Union[int, str, Fraction]

# Exponent of q in each structure constant; q stands for e^s
DIM8_EXPONENTS: Dict[Triple, int] = {
    (2, 3, 4): -1,
    (1, 3, 5): 1,
    (1, 2, 6): 0,
    (2, 6, 7): 1,
    (3, 4, 7): -1,
    (1, 6, 8): -1,
    (2, 4, 8): 0,
    (3, 5, 8): 1,
}

DIM9_EXPONENTS: Dict[Triple, int] = {
    (2, 3, 4): 4,
    (1, 3, 5): -3,
    (1, 2, 6): -1,
    (2, 6, 7): -4,
    (3, 4, 7): 4,
    (1, 6, 8): 4,
    (2, 4, 8): 0,
    (3, 5, 8): -4,
    (3, 6, 9): -1,
    (2, 5, 9): 1,
}

# Eigenvalues of the grading derivation on x_1..x_3, the Heisenberg generators, x_4..x_6, x_7..x_m
WEIGHT_LOW = 2
WEIGHT_GENERATOR = 3
WEIGHT_MIDDLE = 4
WEIGHT_TOP = 6


@dataclass(frozen=True)
class FamilySpec:
    m: int
    k: int
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", validate_family_params(self.m, self.k, self.q))

    @property
    def dim(self) -> int:
        return self.m + 2 * self.k

    @property
    def label(self) -> str:
        q_text = str(self.q).replace("/", "_")
        return f"n{self.m}_k{self.k}_q{q_text}"


class FamilyMember(NamedTuple):
    algebra: LieAlgebra
    grading: Grading
    d_candidate: RatMatrix
    nikolayevsky_scale: Fraction


def _power_family(exponents: Dict[Triple, int], q: Fraction) -> Dict[Triple, Fraction]:
    return {triple: q ** exponent for triple, exponent in exponents.items()}


def family_dim8(q: RationalLike) -> LieAlgebra:
    """Eight-dimensional three-step family of type (3,3,2)"""
    value = parse_positive_rational(q, "q")
    return LieAlgebra(8, _power_family(DIM8_EXPONENTS, value))


def family_dim9(q: RationalLike) -> LieAlgebra:
    """Nine-dimensional three-step family of type (3,3,3)"""
    value = parse_positive_rational(q, "q")
    return LieAlgebra(9, _power_family(DIM9_EXPONENTS, value))


def step_grading(m: int) -> Grading:
    """Weights 1 on x_1..x_3, 2 on x_4..x_6, 3 on x_7..x_m"""
    return Grading(tuple([1] * 3 + [2] * 3 + [3] * (m - 6)))


def extension_triples(m: int, k: int) -> Tuple[Triple, ...]:
    """[y_i, y_{2k+1-i}] = x_m for i = 1..k, with y_i = x_{m+i}"""
    return tuple((m + i, m + 2 * k + 1 - i, m) for i in range(1, k + 1))


def extended_grading(m: int, k: int) -> Grading:
    return Grading(tuple(
        [WEIGHT_LOW] * 3 + [WEIGHT_MIDDLE] * 3 + [WEIGHT_TOP] * (m - 6) + [WEIGHT_GENERATOR] * (2 * k)
    ))


def nikolayevsky_scale(m: int, k: int) -> Fraction:
    """(m + k - 3) / (6m + 3k - 26)"""
    return Fraction(m + k - 3, 6 * m + 3 * k - 26)


def family_extended(m: int, k: int, q: RationalLike) -> FamilyMember:
    """
    The (m + 2k)-dimensional family: the base algebra on x_1..x_m with 2k
    generators y_1..y_2k paired into x_m.

    Returns:
        FamilyMember with the grading by weights 2, 3, 4, 6, the diagonal
        derivation of those weights and its Nikolayevsky scale
    """
    spec = FamilySpec(m, k, q)
    exponents = DIM8_EXPONENTS if m == 8 else DIM9_EXPONENTS
    brackets = _power_family(exponents, spec.q)
    for triple in extension_triples(m, k):
        brackets[triple] = Fraction(1)

    algebra = LieAlgebra(spec.dim, brackets)
    grading = extended_grading(m, k)
    d_candidate = RatMatrix.diag(grading.weights)
    logger.debug(f"Built family member {spec.label} of dimension {spec.dim}")
    return FamilyMember(algebra, grading, d_candidate, nikolayevsky_scale(m, k))


def family(m: int, k: int, q: RationalLike) -> LieAlgebra:
    """Dispatch on (m, k); k = 0 gives the base families"""
    if k == 0:
        spec = FamilySpec(m, 0, q)
        return family_dim8(spec.q) if m == 8 else family_dim9(spec.q)
    return family_extended(m, k, q).algebra


def heisenberg(k: int) -> Tuple[LieAlgebra, RatMatrix]:
    """
    h_{2k+1} with [y_i, y_{2k+1-i}] = z, z = x_{2k+1}, and its Nikolayevsky
    derivation diag((k+1)/(k+2) on generators, 2(k+1)/(k+2) on z).
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k!r}")
    z = 2 * k + 1
    algebra = LieAlgebra(z, {(i, z - i, z): 1 for i in range(1, k + 1)})
    generator = Fraction(k + 1, k + 2)
    d_n = RatMatrix.diag([generator] * (2 * k) + [2 * generator])
    return algebra, d_n
