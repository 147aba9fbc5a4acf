"""Unit tests for structure-constant files and algebra identifiers"""

import os
import tempfile
import unittest
from fractions import Fraction

from nilsoliton_checker.core.algebra_file import (
    AlgebraFileError,
    parse_algebra,
    read_algebra_file,
    serialize_algebra,
)
from nilsoliton_checker.core.families import family_dim8, family_dim9, family_extended, heisenberg
from nilsoliton_checker.core.liecore import JacobiError
from nilsoliton_checker.utils.fingerprint import generate_algebra_id, normalize_algebra_text
from nilsoliton_checker.utils.file_utils import read_text_file
from nilsoliton_checker.utils.validation import ValidationError

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def fixture(name: str) -> str:
    return read_text_file(os.path.join(FIXTURES, name))


class TestParseAlgebra(unittest.TestCase):
    """Test parsing of shipped fixtures"""

    def test_heisenberg_fixture(self):
        """Test h3.alg is the three-dimensional Heisenberg algebra"""
        self.assertEqual(parse_algebra(fixture("h3.alg")), heisenberg(1)[0])

    def test_family_fixtures(self):
        """Test the family fixtures match the constructors at q = 1"""
        self.assertEqual(parse_algebra(fixture("n8_q1.alg")), family_dim8(1))
        self.assertEqual(parse_algebra(fixture("n9_q1.alg")), family_dim9(1))

    def test_malformed_fixture(self):
        """Test '1 1 2 1' is rejected at line 3"""
        with self.assertRaises(AlgebraFileError) as context:
            parse_algebra(fixture("malformed.alg"))
        self.assertEqual(context.exception.line, 3)
        self.assertIn("i < j", str(context.exception))

    def test_jacobi_fixture(self):
        """Test the Jacobi fixture reports the defect on (1,2,3)"""
        with self.assertRaises(JacobiError) as context:
            parse_algebra(fixture("jacobi_defect.alg"))
        self.assertEqual(context.exception.defects[0][:3], (1, 2, 3))
        self.assertIn("(1,2,3)", str(context.exception))

    def test_rational_values_and_comments(self):
        """Test p/q values, negative values and trailing comments"""
        g = parse_algebra("# header comment\ndim 3\n\n1 2 3 -2/3  # trailing\n")
        self.assertEqual(g.brackets, {(1, 2, 3): Fraction(-2, 3)})


class TestFileErrors(unittest.TestCase):
    """Test syntax diagnostics with line and column"""

    def assertFileError(self, text: str, line: int, column: int = None):
        with self.assertRaises(AlgebraFileError) as context:
            read_algebra_file(text)
        self.assertEqual(context.exception.line, line)
        if column is not None:
            self.assertEqual(context.exception.column, column)
        return context.exception

    def test_undecodable_bytes(self):
        """Test non-UTF-8 input raises a ValidationError naming the file"""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "latin.alg")
            with open(path, "wb") as f:
                f.write(b"dim 3\n1 2 3 \xe9\n")
            with self.assertRaises(ValidationError) as context:
                read_text_file(path)
        self.assertIn("latin.alg", str(context.exception))
        self.assertIn("byte 12", str(context.exception))

    def test_missing_header(self):
        """Test a file without 'dim' is rejected"""
        self.assertFileError("1 2 3 1\n", 1, 1)
        with self.assertRaises(AlgebraFileError):
            read_algebra_file("# only a comment\n")

    def test_index_out_of_range(self):
        """Test an index above dim is rejected at its column"""
        error = self.assertFileError("dim 3\n1 2 4 1\n", 2, 5)
        self.assertIn("outside 1..3", str(error))

    def test_wrong_field_count(self):
        """Test lines with three or five fields are rejected"""
        self.assertFileError("dim 3\n1 2 3\n", 2)
        self.assertFileError("dim 3\n1 2 3 1 1\n", 2, 9)

    def test_bad_values(self):
        """Test non-rational, zero and zero-denominator values"""
        self.assertFileError("dim 3\n1 2 3 0.5\n", 2, 7)
        self.assertFileError("dim 3\n1 2 3 1/0\n", 2, 7)
        self.assertFileError("dim 3\n1 2 3 0\n", 2, 7)

    def test_duplicate_triple(self):
        """Test repeated triples name the first occurrence"""
        error = self.assertFileError("dim 3\n1 2 3 1\n1 2 3 2\n", 3)
        self.assertIn("line 2", str(error))


class TestSerialization(unittest.TestCase):
    """Test canonical text output"""

    def test_dimension_nine_fixture_is_canonical(self):
        """Test serializing the dimension-9 family reproduces the fixture byte for byte"""
        self.assertEqual(serialize_algebra(family_dim9(1)), fixture("n9_q1.alg"))

    def test_round_trip(self):
        """Test parse(serialize(g)) = g for generated families"""
        for g in (family_dim8(Fraction(7, 5)), family_dim9(2), family_extended(9, 2, Fraction(1, 3)).algebra):
            self.assertEqual(parse_algebra(serialize_algebra(g)), g)

    def test_lf_line_endings(self):
        """Test output uses LF and ends with a newline"""
        text = serialize_algebra(heisenberg(1)[0])
        self.assertEqual(text, "dim 3\n1 2 3 1\n")


class TestFingerprint(unittest.TestCase):
    """Test deterministic algebra identifiers"""

    def test_identifier_shape(self):
        """Test identifiers are 16 hex characters and stable"""
        text = serialize_algebra(family_dim8(1))
        algebra_id = generate_algebra_id(text)
        self.assertEqual(len(algebra_id), 16)
        self.assertEqual(algebra_id, generate_algebra_id(text))
        int(algebra_id, 16)

    def test_comments_do_not_change_identifier(self):
        """Test the commented fixture hashes like its canonical text"""
        self.assertEqual(
            generate_algebra_id(fixture("n8_q1.alg")),
            generate_algebra_id(serialize_algebra(family_dim8(1))),
        )

    def test_normalization(self):
        """Test whitespace and comments are dropped"""
        self.assertEqual(normalize_algebra_text("dim  3 # x\n\n1 2  3 1\n"), "dim 3\n1 2 3 1\n")

    def test_different_algebras_differ(self):
        """Test q changes the identifier"""
        self.assertNotEqual(
            generate_algebra_id(serialize_algebra(family_dim8(1))),
            generate_algebra_id(serialize_algebra(family_dim8(2))),
        )


if __name__ == '__main__':
    unittest.main()
