"""
Root vectors, Gram matrices and the positive-solution soliton criterion

For a nonabelian algebra with a nice basis (no Gram entry equal to 2),
a soliton inner product exists iff U v = [1] has a solution with every
component strictly positive.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from nilsoliton_checker.core.exactla import (
    AffineSolutionSet,
    RatMatrix,
    Vector,
    dot,
    solve_affine,
    to_vector,
)
from nilsoliton_checker.core.families import family_extended
from nilsoliton_checker.core.liecore import LieAlgebra, Triple, triple_order_key
from nilsoliton_checker.core.reference_data import PUBLISHED_GRAM_DIM9
from nilsoliton_checker.core.simplex import maximize_min_component
from nilsoliton_checker.utils.validation import ValidationError, parse_rational

logger = logging.getLogger("nilsoliton_checker")

BASE_TRIPLE_COUNT = {8: 8, 9: 10}


class EmptyIndexSetError(ValidationError):
    """Raised for abelian algebras, which have no nonzero structure constants"""
    pass


@dataclass(frozen=True)
class IndexSet:
    triples: Tuple[Triple, ...]

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)


@dataclass(frozen=True)
class GramMatrix:
    index_set: IndexSet
    u: RatMatrix

    def has_entry(self, value: int) -> bool:
        return any(a == value for row in self.u.rows for a in row)


def root_vector(triple: Triple, n: int) -> Vector:
    """e_i + e_j - e_k"""
    i, j, k = triple
    values = [Fraction(0)] * n
    values[i - 1] += 1
    values[j - 1] += 1
    values[k - 1] -= 1
    return tuple(values)


def index_set(g: LieAlgebra) -> IndexSet:
    """Nonzero constants ordered by target k, then i, then j"""
    if g.is_abelian:
        raise EmptyIndexSetError("an abelian algebra has an empty index set")
    return IndexSet(tuple(sorted(g.triples, key=triple_order_key)))


def gram_matrix(g: LieAlgebra, order: Optional[Sequence[Triple]] = None) -> GramMatrix:
    """
    Gram matrix of root vectors over the ordered index set.

    Args:
        g: Nonabelian Lie algebra
        order: Optional explicit ordering, which must be a permutation of the index set
    """
    triples = index_set(g)
    if order is not None:
        order = tuple(tuple(t) for t in order)
        if sorted(order) != sorted(triples.triples):
            raise ValidationError("explicit order must be a permutation of the index set")
        triples = IndexSet(order)
    roots = [root_vector(t, g.dim) for t in triples]
    u = RatMatrix([[dot(a, b) for b in roots] for a in roots])
    return GramMatrix(triples, u)


def is_nice(g: LieAlgebra) -> bool:
    """True iff no Gram matrix entry equals 2"""
    return not gram_matrix(g).has_entry(2)


class VerdictTag(Enum):
    SOLITON = "Soliton"
    NONSOLITON = "Nonsoliton"
    INAPPLICABLE = "Inapplicable"


@dataclass(frozen=True)
class NonsolitonEvidence:
    """
    Why U v = [1] has no positive solution.

    t_star is the largest attainable smallest component (capped at 1), or
    None when the system is inconsistent.
    """

    solution_set: AffineSolutionSet
    t_star: Optional[Fraction]
    zero_components: Tuple[int, ...]
    iterations: int


@dataclass(frozen=True)
class SolitonVerdict:
    tag: VerdictTag
    witness: Optional[Vector] = None
    evidence: Optional[NonsolitonEvidence] = None
    reason: Optional[str] = None
    gram: Optional[GramMatrix] = None


def soliton_test(g: LieAlgebra) -> SolitonVerdict:
    """Decide soliton existence for a nice basis with the exact strict-positivity LP"""
    if g.is_abelian:
        return SolitonVerdict(VerdictTag.INAPPLICABLE, reason="abelian")

    gram = gram_matrix(g)
    if gram.has_entry(2):
        return SolitonVerdict(
            VerdictTag.INAPPLICABLE,
            reason="Gram matrix has an entry equal to 2 (basis is not nice)",
            gram=gram,
        )

    ones = [1] * len(gram.index_set)
    result = maximize_min_component(gram.u, ones)
    if result.has_positive_solution:
        logger.info(f"Soliton: positive solution found after {result.iterations} simplex iterations")
        return SolitonVerdict(VerdictTag.SOLITON, witness=result.witness, gram=gram)

    solution_set = solve_affine(gram.u, ones)
    evidence = NonsolitonEvidence(
        solution_set=solution_set,
        t_star=result.t_star,
        zero_components=solution_set.zero_components(),
        iterations=result.iterations,
    )
    logger.info(f"Nonsoliton: t* = {result.t_star}, identically zero components {evidence.zero_components}")
    return SolitonVerdict(VerdictTag.NONSOLITON, evidence=evidence, gram=gram)


def extension_blocks(gram: GramMatrix, base_count: int) -> Dict[str, RatMatrix]:
    """Split a Gram matrix into the base block, the coupling block and the extension block"""
    total = len(gram.index_set)
    base = list(range(base_count))
    extension = list(range(base_count, total))
    return {
        "base": gram.u.submatrix(base, base),
        "coupling": gram.u.submatrix(base, extension),
        "extension": gram.u.submatrix(extension, extension),
    }


def expected_coupling_pattern(base_triples: Sequence[Triple], m: int, k: int) -> RatMatrix:
    """1 where a base triple produces x_m (its root vector shares -e_m with every extension root), else 0"""
    return RatMatrix([[1 if triple[2] == m else 0 for _ in range(k)] for triple in base_triples], ncols=k)


def expected_extension_block(k: int) -> RatMatrix:
    """2 I_k + J_k: extension roots have length 3 and pairwise share only -e_m"""
    return RatMatrix.identity(k).scale(2) + RatMatrix([[1] * k for _ in range(k)], ncols=k)


def nonsoliton_certificate_dim8_extension(k: int, a) -> Vector:
    """
    v0(a) = (1/33)(7a+2, 3-6a, 13-4a, 11-11a, 2a+10, 13a-1, 11a-11, 0).

    Solves U_8 v = (1,1,1,1,1,a,a,a) for the base block of the extended
    eight-dimensional family; its seventh component (a-1)/3 is negative on 0 < a < 1.
    """
    a = parse_rational(a, "a")
    if not 0 < a < 1:
        raise ValidationError(f"a must lie strictly between 0 and 1, got {a}")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k!r}")

    u8 = extension_blocks(gram_matrix(family_extended(8, k, 1).algebra), BASE_TRIPLE_COUNT[8])["base"]
    v0 = to_vector(
        value / 33 for value in (
            7 * a + 2, 3 - 6 * a, 13 - 4 * a, 11 - 11 * a, 2 * a + 10, 13 * a - 1, 11 * a - 11, Fraction(0)
        )
    )
    expected = to_vector([1] * 5 + [a] * 3)
    if u8 @ v0 != expected:
        raise ArithmeticError(f"certificate does not solve the reduced system at a = {a}")
    return v0


def reduced_system_dim9() -> Tuple[RatMatrix, Vector]:
    """First eight equations of the published ten-equation system: U_11 v_1 + U_12 v_2 = [1]"""
    # drop the two rows of triples producing x_9
    rows = PUBLISHED_GRAM_DIM9[:-2]
    return RatMatrix(rows), to_vector([1] * len(rows))


def zero_component_labels(components: Sequence[int]) -> List[str]:
    """1-based labels v_i for report output"""
    return [f"v{i + 1}" for i in components]
