"""Unit tests for the family constructors"""

import unittest
from fractions import Fraction

from nilsoliton_checker.core.derivations import is_derivation, verify_pre_einstein
from nilsoliton_checker.core.exactla import RatMatrix
from nilsoliton_checker.core.families import (
    FamilySpec,
    extended_grading,
    extension_triples,
    family,
    family_dim8,
    family_dim9,
    family_extended,
    heisenberg,
    nikolayevsky_scale,
)
from nilsoliton_checker.core.liecore import nilpotency_type, verify_grading
from nilsoliton_checker.utils.validation import ValidationError


class TestBaseFamilies(unittest.TestCase):
    """Test the eight- and nine-dimensional families"""

    def test_structure_constants_depend_on_q(self):
        """Test c_23^4 = 1/q in dimension 8 and q^4 in dimension 9"""
        self.assertEqual(family_dim8(2).structure_constant(2, 3, 4), Fraction(1, 2))
        self.assertEqual(family_dim9(2).structure_constant(2, 3, 4), 16)

    def test_invalid_q(self):
        """Test zero, negative and malformed q raise ValidationError"""
        for q in (0, -1, "1/0", "abc"):
            with self.assertRaises(ValidationError):
                family_dim8(q)

    def test_dispatch(self):
        """Test family(m, 0, q) gives the base families"""
        self.assertEqual(family(8, 0, 3), family_dim8(3))
        self.assertEqual(family(9, 0, "1/3"), family_dim9(Fraction(1, 3)))
        self.assertEqual(family(8, 1, 1), family_extended(8, 1, 1).algebra)


class TestExtendedFamilies(unittest.TestCase):
    """Test the (m + 2k)-dimensional families"""

    def test_extension_triples(self):
        """Test the generators pair as y_i, y_{2k+1-i}"""
        self.assertEqual(extension_triples(8, 2), ((9, 12, 8), (10, 11, 8)))

    def test_member(self):
        """Test m = 8, k = 1, q = 2 has dimension 10, lambda 6/25 and a grading derivation"""
        member = family_extended(8, 1, 2)
        self.assertEqual(member.algebra.dim, 10)
        self.assertEqual(member.nikolayevsky_scale, Fraction(6, 25))
        self.assertTrue(verify_grading(member.algebra, member.grading))
        self.assertTrue(is_derivation(member.algebra, member.d_candidate))
        self.assertEqual(member.grading.weights, (2, 2, 2, 4, 4, 4, 6, 6, 3, 3))

    def test_types(self):
        """Test the extended families have type (2k+3, 3, m-6)"""
        for k in (1, 2):
            self.assertEqual(nilpotency_type(family_extended(8, k, 1).algebra), [2 * k + 3, 3, 2])
            self.assertEqual(nilpotency_type(family_extended(9, k, 3).algebra), [2 * k + 3, 3, 3])

    def test_zero_extension_is_base(self):
        """Test k = 0 reproduces the base algebra"""
        self.assertEqual(family_extended(9, 0, 1).algebra, family_dim9(1))
        self.assertEqual(extended_grading(8, 0).weights, (2, 2, 2, 4, 4, 4, 6, 6))

    def test_lambda_formula(self):
        """Test lambda = (m + k - 3)/(6m + 3k - 26)"""
        self.assertEqual(nikolayevsky_scale(9, 1), Fraction(7, 31))
        self.assertEqual(nikolayevsky_scale(8, 3), Fraction(8, 31))

    def test_spec_validation(self):
        """Test unsupported m, negative k and bad q raise"""
        with self.assertRaises(ValidationError):
            FamilySpec(7, 0, 1)
        with self.assertRaises(ValidationError):
            FamilySpec(8, -1, 1)
        with self.assertRaises(ValidationError):
            FamilySpec(8, 1, "0")

    def test_label(self):
        """Test labels encode m, k and q"""
        spec = FamilySpec(8, 1, "7/5")
        self.assertEqual(spec.q, Fraction(7, 5))
        self.assertEqual(spec.label, "n8_k1_q7_5")
        self.assertEqual(spec.dim, 10)


class TestHeisenberg(unittest.TestCase):
    """Test Heisenberg algebras"""

    def test_nikolayevsky(self):
        """Test D_N = diag(3/4 on generators, 3/2 on the center) for h5"""
        g, d_n = heisenberg(2)
        self.assertEqual(g.dim, 5)
        self.assertEqual(g.brackets, {(1, 4, 5): 1, (2, 3, 5): 1})
        self.assertEqual(d_n, RatMatrix.diag([Fraction(3, 4)] * 4 + [Fraction(3, 2)]))
        self.assertTrue(verify_pre_einstein(g, d_n))

    def test_invalid_k(self):
        """Test k < 1 raises"""
        with self.assertRaises(ValidationError):
            heisenberg(0)


if __name__ == '__main__':
    unittest.main()
