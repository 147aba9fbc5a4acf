"""Unit tests for the published-claims suite"""

import unittest
from fractions import Fraction

from nilsoliton_checker.core import reference_data as ref
from nilsoliton_checker.core.families import family_dim8, family_dim9
from nilsoliton_checker.core.reproduce import (
    Claim,
    ClaimStatus,
    ReproduceOptions,
    build_claims,
    check_certificate,
    check_derivation_dim,
    check_extended,
    check_gram_dim8,
    check_gram_dim9,
    check_heisenberg,
    check_nonsoliton,
    check_reduced_dim9,
    check_ricci_oracle,
    check_scale_dim8,
    check_scale_dim9,
    reproduce_report,
    run_claim,
    run_claims,
)


class TestChecks(unittest.TestCase):
    """Test individual claim checks"""

    def test_gram_checks(self):
        """Test dimension 8 passes and dimension 9 reports the row-order discrepancy"""
        self.assertIs(check_gram_dim8(Fraction(1, 3))[0], ClaimStatus.PASS)
        status, detail = check_gram_dim9(2)
        self.assertIs(status, ClaimStatus.DISCREPANCY)
        self.assertIn("(3,6,9)", detail)

    def test_scale_checks(self):
        """Test 5/11 passes and 9/14 is overruled by 3/7"""
        self.assertIs(check_scale_dim8()[0], ClaimStatus.PASS)
        status, detail = check_scale_dim9()
        self.assertIs(status, ClaimStatus.DISCREPANCY)
        self.assertIn("3/7", detail)

    def test_extension_block_discrepancy(self):
        """Test k = 1 passes and k = 2 reports the 2I + J block"""
        self.assertIs(check_extended(8, 1, 1)[0], ClaimStatus.PASS)
        status, detail = check_extended(8, 2, 1)
        self.assertIs(status, ClaimStatus.DISCREPANCY)
        self.assertIn("2I + J", detail)

    def test_certificate_and_reduced_system(self):
        """Test the closed-form certificate and the reduced dimension-9 system"""
        self.assertIs(check_certificate(Fraction(2, 3))[0], ClaimStatus.PASS)
        self.assertIs(check_reduced_dim9()[0], ClaimStatus.PASS)

    def test_derivation_dimension_checks(self):
        """Test q = 1 reports the jump to 17 while q = 2 and dimension 9 pass"""
        status, detail = check_derivation_dim(family_dim8, Fraction(1), ref.DIM8_DERIVATION_DIM,
                                              ref.DIM8_EXCEPTIONAL_DERIVATION_DIMS)
        self.assertIs(status, ClaimStatus.DISCREPANCY)
        self.assertIn("dim Der = 17", detail)
        self.assertIs(check_derivation_dim(family_dim8, Fraction(2), ref.DIM8_DERIVATION_DIM,
                                           ref.DIM8_EXCEPTIONAL_DERIVATION_DIMS)[0], ClaimStatus.PASS)
        self.assertIs(check_derivation_dim(family_dim9, Fraction(1), ref.DIM9_DERIVATION_DIM)[0], ClaimStatus.PASS)

    def test_unexplained_dimension_is_failure(self):
        """Test a mismatch outside the special parameters stays FAIL"""
        self.assertIs(check_derivation_dim(family_dim8, Fraction(1), ref.DIM8_DERIVATION_DIM)[0], ClaimStatus.FAIL)

    def test_other_checks(self):
        """Test Ricci, Heisenberg and nonsoliton checks pass"""
        self.assertIs(check_ricci_oracle()[0], ClaimStatus.PASS)
        self.assertIs(check_heisenberg(2)[0], ClaimStatus.PASS)
        self.assertIs(check_nonsoliton(family_dim8, 2)[0], ClaimStatus.PASS)


class TestRunner(unittest.TestCase):
    """Test claim collection and execution"""

    def test_claim_ids_are_unique(self):
        """Test every claim id appears once"""
        claims = build_claims(ReproduceOptions())
        ids = [claim.claim_id for claim in claims]
        self.assertEqual(len(ids), len(set(ids)))
        self.assertIn("extended[m=9,k=3,q=7/5]", ids)
        self.assertIn("heisenberg[k=3]", ids)

    def test_max_k_zero_still_checks_heisenberg(self):
        """Test max_k = 0 drops extended claims but keeps h3"""
        ids = [claim.claim_id for claim in build_claims(ReproduceOptions(q_values=(Fraction(1),), max_k=0))]
        self.assertFalse(any(claim_id.startswith("extended") for claim_id in ids))
        self.assertIn("heisenberg[k=1]", ids)

    def test_exceptions_become_failures(self):
        """Test a raising check is reported as FAIL"""
        def broken():
            raise ArithmeticError("boom")

        result = run_claim(Claim("broken", "raises", broken))
        self.assertIs(result.status, ClaimStatus.FAIL)
        self.assertIn("boom", result.detail)

    def test_order_is_preserved(self):
        """Test results come back in declaration order"""
        options = ReproduceOptions(q_values=(Fraction(2),), max_k=0, sample_count=10, workers=3)
        results = run_claims(options)
        self.assertEqual([r.claim_id for r in results], [c.claim_id for c in build_claims(options)])

    def test_report(self):
        """Test a reduced run has no failures and exit code 0"""
        options = ReproduceOptions(q_values=(Fraction(1),), max_k=1, sample_count=50, workers=2)
        report = reproduce_report(options)
        self.assertEqual(report["summary"]["FAIL"], 0)
        self.assertEqual(report["exit_code"], 0)
        self.assertGreater(report["summary"]["DISCREPANCY"], 0)
        statuses = {r["id"]: r["status"] for r in report["claims"]}
        self.assertIs(statuses["der-8[q=1]"], ClaimStatus.DISCREPANCY)


if __name__ == '__main__':
    unittest.main()
