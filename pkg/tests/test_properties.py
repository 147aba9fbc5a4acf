"""Property-based tests over random rationals"""

import unittest
from fractions import Fraction
from itertools import combinations
from math import comb

from hypothesis import given, settings
from hypothesis import strategies as st

from nilsoliton_checker.core.algebra_file import parse_algebra, serialize_algebra
from nilsoliton_checker.core.derivations import commutator, derivation_algebra, derive_grading, is_derivation
from nilsoliton_checker.core.exactla import (
    RatMatrix,
    nullspace,
    rank,
    rref,
    sample_affine_points,
    solve_affine,
)
from nilsoliton_checker.core.families import family_dim8, family_dim9, family_extended, heisenberg
from nilsoliton_checker.core.liecore import (
    LieAlgebra,
    Subspace,
    ad_rank,
    bracket,
    centralizer,
    jacobi_check,
    nilpotency_type,
    verify_grading,
)
from nilsoliton_checker.core.metric import DiagonalMetric, ricci_endomorphism, ricci_form, soliton_metric_check
from nilsoliton_checker.core.reference_data import PUBLISHED_GRAM_DIM8
from nilsoliton_checker.core.simplex import maximize_min_component
from nilsoliton_checker.core.soliton import VerdictTag, gram_matrix, soliton_test

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
nonzero_rationals = rationals.filter(lambda value: value != 0)
positive_rationals = st.fractions(min_value=Fraction(1, 12), max_value=20, max_denominator=12)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    nrows = draw(st.integers(min_value=1, max_value=max_rows))
    ncols = draw(st.integers(min_value=1, max_value=max_cols))
    rows = draw(st.lists(st.lists(rationals, min_size=ncols, max_size=ncols), min_size=nrows, max_size=nrows))
    return RatMatrix(rows, ncols=ncols)


@st.composite
def two_step_algebras(draw):
    """[V1, V1] lands in V2 and V2 is central, so Jacobi holds for any coefficients"""
    generators = draw(st.integers(min_value=2, max_value=4))
    central = draw(st.integers(min_value=1, max_value=3))
    dim = generators + central
    triples = [(i, j, k) for i, j in combinations(range(1, generators + 1), 2)
               for k in range(generators + 1, dim + 1)]
    brackets = draw(st.dictionaries(st.sampled_from(triples), nonzero_rationals, max_size=6))
    return LieAlgebra(dim, brackets)


@st.composite
def family_members(draw, max_k=2):
    m = draw(st.sampled_from([8, 9]))
    k = draw(st.integers(min_value=0, max_value=max_k))
    return family_extended(m, k, draw(positive_rationals))


def vectors(dim):
    return st.lists(rationals, min_size=dim, max_size=dim)


class TestLinearAlgebraProperties(unittest.TestCase):
    """Properties of exact elimination"""

    @given(matrices())
    @settings(max_examples=100, deadline=None)
    def test_rank_nullity(self, m):
        """rank + nullity = number of columns, and nullspace vectors are annihilated"""
        basis = nullspace(m)
        self.assertEqual(rank(m) + len(basis), m.ncols)
        for v in basis:
            self.assertTrue(all(value == 0 for value in m @ v))

    @given(matrices())
    @settings(max_examples=100, deadline=None)
    def test_rref_is_idempotent(self, m):
        """Reducing a reduced matrix changes nothing, and rank counts pivots"""
        reduced, pivots = rref(m)
        again, again_pivots = rref(reduced)
        self.assertEqual(again, reduced)
        self.assertEqual(again_pivots, pivots)
        self.assertEqual(rank(m), len(pivots))
        self.assertEqual(pivots, sorted(pivots))

    @given(matrices(), st.data())
    @settings(max_examples=100, deadline=None)
    def test_solutions_contain_generating_point(self, m, data):
        """For b = A x, the solution set of A v = b contains x"""
        x = data.draw(st.lists(rationals, min_size=m.ncols, max_size=m.ncols))
        solutions = solve_affine(m, m @ x)
        self.assertTrue(solutions.consistent)
        self.assertTrue(solutions.contains(x))
        self.assertEqual(m @ solutions.particular, m @ x)

    @given(matrices(max_rows=3, max_cols=4), st.data())
    @settings(max_examples=100, deadline=None)
    def test_min_component_witness(self, m, data):
        """The witness solves A v = b and its smallest component is t* unless capped"""
        x = data.draw(st.lists(rationals, min_size=m.ncols, max_size=m.ncols))
        b = m @ x
        result = maximize_min_component(m, b)
        self.assertTrue(result.consistent)
        self.assertEqual(m @ result.witness, b)
        self.assertGreaterEqual(result.t_star, min(x) if min(x) < 1 else 1)
        if result.t_star < 1:
            self.assertEqual(min(result.witness), result.t_star)
        else:
            self.assertGreaterEqual(min(result.witness), 1)

    @given(matrices(max_rows=3, max_cols=4), st.data())
    @settings(max_examples=100, deadline=None)
    def test_simplex_iterations_bounded_by_bases(self, m, data):
        """Bland's rule never revisits a basis, so each phase stays below the number of bases"""
        x = data.draw(st.lists(rationals, min_size=m.ncols, max_size=m.ncols))
        result = maximize_min_component(m, m @ x)
        lp_rows = rank(m) + 1
        lp_columns = m.ncols + 3 + lp_rows
        self.assertLessEqual(result.iterations, 2 * comb(lp_columns, lp_rows))

    @given(matrices(max_rows=3, max_cols=4), st.data())
    @settings(max_examples=50, deadline=None)
    def test_min_component_agrees_with_sampling(self, m, data):
        """The witness lies in the solution set and no sampled solution beats an uncapped t*"""
        x = data.draw(st.lists(rationals, min_size=m.ncols, max_size=m.ncols))
        b = m @ x
        result = maximize_min_component(m, b)
        solutions = solve_affine(m, b)
        self.assertTrue(solutions.contains(result.witness))
        if result.t_star < 1:
            for point in sample_affine_points(solutions, 20, seed=data.draw(st.integers(0, 1000))):
                self.assertLessEqual(min(point), result.t_star)


class TestLieAlgebraProperties(unittest.TestCase):
    """Bracket, centralizer and grading facts on random algebras"""

    @given(two_step_algebras(), st.data())
    @settings(max_examples=100, deadline=None)
    def test_bracket_is_antisymmetric(self, g, data):
        """[x, y] = -[y, x] and [x, x] = 0"""
        x = data.draw(vectors(g.dim))
        y = data.draw(vectors(g.dim))
        self.assertEqual(bracket(g, x, y), tuple(-value for value in bracket(g, y, x)))
        self.assertTrue(all(value == 0 for value in bracket(g, x, x)))

    @given(two_step_algebras())
    @settings(max_examples=100, deadline=None)
    def test_two_step_algebras_satisfy_jacobi(self, g):
        """Any coefficients on [V1, V1] -> V2 give a Lie algebra of the right type"""
        self.assertEqual(jacobi_check(g), [])
        self.assertEqual(sum(nilpotency_type(g)), g.dim)

    @given(family_members(), st.data())
    @settings(max_examples=30, deadline=None)
    def test_jacobi_on_random_vectors(self, member, data):
        """The Jacobi sum vanishes on random elements of every family member"""
        g = member.algebra
        x, y, z = (data.draw(vectors(g.dim)) for _ in range(3))
        first = bracket(g, bracket(g, x, y), z)
        second = bracket(g, bracket(g, y, z), x)
        third = bracket(g, bracket(g, z, x), y)
        self.assertTrue(all(a + b + c == 0 for a, b, c in zip(first, second, third)))

    @given(two_step_algebras(), st.data())
    @settings(max_examples=100, deadline=None)
    def test_ad_rank_is_scale_invariant(self, g, data):
        """rank ad(c x) = rank ad(x) for c != 0"""
        x = data.draw(vectors(g.dim))
        c = data.draw(nonzero_rationals)
        self.assertEqual(ad_rank(g, [c * value for value in x]), ad_rank(g, x))

    @given(two_step_algebras(), st.data())
    @settings(max_examples=100, deadline=None)
    def test_double_centralizer_contains_subspace(self, g, data):
        """W is contained in C(C(W))"""
        spanning = data.draw(st.lists(vectors(g.dim), min_size=1, max_size=2))
        w = Subspace.span(g.dim, spanning)
        self.assertTrue(centralizer(g, centralizer(g, w)).contains_subspace(w))

    @given(family_members(max_k=3))
    @settings(max_examples=30, deadline=None)
    def test_family_nilpotency_type_sums_to_dimension(self, member):
        """The lower central series quotients add up to the dimension"""
        g = member.algebra
        self.assertEqual(sum(nilpotency_type(g)), g.dim)

    @given(family_members(max_k=3))
    @settings(max_examples=30, deadline=None)
    def test_family_gradings_are_compatible(self, member):
        """Both the stated and the derived grading respect every bracket"""
        g = member.algebra
        self.assertTrue(verify_grading(g, member.grading))
        derived = derive_grading(g)
        self.assertIsNotNone(derived)
        self.assertTrue(verify_grading(g, derived))

    @given(two_step_algebras())
    @settings(max_examples=50, deadline=None)
    def test_derived_grading_of_two_step(self, g):
        """A two-step algebra always has a positive grading"""
        derived = derive_grading(g)
        self.assertIsNotNone(derived)
        self.assertTrue(verify_grading(g, derived))


class TestDerivationClosure(unittest.TestCase):
    """The commutator of two derivations is a derivation"""

    @classmethod
    def setUpClass(cls):
        cls.cases = []
        for g in (family_dim8(2), family_dim8(1), family_dim9(Fraction(1, 3))):
            cls.cases.append((g, list(derivation_algebra(g))))

    @given(st.integers(min_value=0, max_value=2), st.data())
    @settings(max_examples=60, deadline=None)
    def test_commutator_closure(self, case, data):
        """[F, H] is a derivation for sampled basis pairs"""
        g, basis = self.cases[case]
        f = basis[data.draw(st.integers(min_value=0, max_value=len(basis) - 1))]
        h = basis[data.draw(st.integers(min_value=0, max_value=len(basis) - 1))]
        self.assertTrue(is_derivation(g, commutator(f, h)))


class TestFamilyProperties(unittest.TestCase):
    """Facts that hold for every q > 0"""

    @given(positive_rationals)
    @settings(max_examples=100, deadline=None)
    def test_gram_independent_of_q(self, q):
        """The Gram matrix does not depend on q"""
        self.assertEqual(gram_matrix(family_dim8(q)).u, RatMatrix(PUBLISHED_GRAM_DIM8))
        self.assertEqual(gram_matrix(family_dim9(q)).u, gram_matrix(family_dim9(1)).u)

    @given(positive_rationals)
    @settings(max_examples=25, deadline=None)
    def test_nonsoliton_for_every_q(self, q):
        """Both base families are nonsoliton"""
        self.assertIs(soliton_test(family_dim8(q)).tag, VerdictTag.NONSOLITON)
        self.assertIs(soliton_test(family_dim9(q)).tag, VerdictTag.NONSOLITON)

    @given(positive_rationals)
    @settings(max_examples=20, deadline=None)
    def test_derivation_dimension(self, q):
        """Der of the dimension-8 family has dimension 16, or 17 at q = 1"""
        self.assertEqual(derivation_algebra(family_dim8(q)).dim, 17 if q == 1 else 16)

    @given(positive_rationals, st.integers(min_value=0, max_value=3))
    @settings(max_examples=100, deadline=None)
    def test_file_round_trip(self, q, k):
        """parse(serialize(g)) = g for every family member"""
        g = family_extended(8, k, q).algebra
        self.assertEqual(parse_algebra(serialize_algebra(g)), g)


class TestRicciProperties(unittest.TestCase):
    """Curvature identities for diagonal metrics"""

    @classmethod
    def setUpClass(cls):
        cls.h5_derivations = derivation_algebra(heisenberg(2)[0])

    @given(st.lists(positive_rationals, min_size=8, max_size=8), positive_rationals)
    @settings(max_examples=50, deadline=None)
    def test_ricci_scaling(self, q_values, c):
        """The Ricci form is scale invariant and the endomorphism scales by 1/c"""
        g = family_dim8(1)
        metric = DiagonalMetric(tuple(q_values))
        self.assertEqual(ricci_form(g, metric.scaled(c)), ricci_form(g, metric))
        self.assertEqual(ricci_endomorphism(g, metric.scaled(c)), ricci_endomorphism(g, metric).scale(1 / c))

    @given(family_members(max_k=1), st.data())
    @settings(max_examples=30, deadline=None)
    def test_scalar_curvature(self, member, data):
        """trace Ric = -1/4 sum over ordered pairs of (c_ij^k)^2 q_k / (q_i q_j)"""
        g = member.algebra
        q = data.draw(st.lists(positive_rationals, min_size=g.dim, max_size=g.dim))
        expected = Fraction(0)
        for i in range(1, g.dim + 1):
            for j in range(1, g.dim + 1):
                for k in range(1, g.dim + 1):
                    c = g.structure_constant(i, j, k)
                    if c:
                        expected += c * c * q[k - 1] / (q[i - 1] * q[j - 1])
        self.assertEqual(ricci_endomorphism(g, DiagonalMetric(tuple(q))).trace(), -expected / 4)

    @given(st.lists(positive_rationals, min_size=3, max_size=3))
    @settings(max_examples=50, deadline=None)
    def test_every_diagonal_metric_on_h3_is_soliton(self, q):
        """Ric - beta Id is a derivation with beta = -3/2 q3 / (q1 q2)"""
        g, _ = heisenberg(1)
        result = soliton_metric_check(g, DiagonalMetric(tuple(q)))
        self.assertIsNotNone(result)
        self.assertEqual(result.beta, Fraction(-3, 2) * q[2] / (q[0] * q[1]))
        ric = ricci_endomorphism(g, DiagonalMetric(tuple(q)))
        self.assertEqual(ric - RatMatrix.identity(3).scale(result.beta), result.derivation)
        self.assertTrue(is_derivation(g, result.derivation))

    @given(st.lists(positive_rationals, min_size=5, max_size=5))
    @settings(max_examples=30, deadline=None)
    def test_soliton_result_is_a_derivation(self, q):
        """Whenever a metric on h5 is found to be a soliton, Ric - beta Id is a derivation"""
        g, _ = heisenberg(2)
        metric = DiagonalMetric(tuple(q))
        result = soliton_metric_check(g, metric, der=self.h5_derivations)
        if result is not None:
            ric = ricci_endomorphism(g, metric)
            self.assertTrue(is_derivation(g, ric - RatMatrix.identity(5).scale(result.beta)))


if __name__ == '__main__':
    unittest.main()
