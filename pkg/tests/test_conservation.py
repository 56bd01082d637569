#!/usr/bin/env python3
"""
Unit Tests for Conservation Module

Tests conservation.py:
- Conserved vectors of accepted symmetries
- The conservation identity and its verification
- Concrete W_beta vectors
- Monomial-level comparison with transcribed vectors
"""

import unittest
import json
from pathlib import Path
import sys

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

import sympy

import expr_core
from conservation import (ConservedVector, Provenance, compare, conservation_residual, derive,
                          derive_with_beta, format_report, format_vector, ledger_covered, paper_vector,
                          paper_vectors, report_model, verify_conservation)
from noether_engine import Lagrangian
from nonlinearity import ARBITRARY, CUBIC, LINEAR, ZERO, CaseError

x, y, t, u = expr_core.x, expr_core.y, expr_core.t, expr_core.u


def j(name):
    return expr_core.coord(name)


class TestDerive(unittest.TestCase):
    """Test conserved vectors of accepted symmetries"""

    def test_time_translation(self):
        """C = xi L + Q P for T, with phi = 0"""
        vector = derive(ARBITRARY, 'T')
        L = Lagrangian.for_case(ARBITRARY).L
        self.assertEqual(vector.provenance, Provenance.DERIVED)
        self.assertEqual(vector.characteristic, -j('u_t'))
        self.assertEqual(vector.components[0], sympy.expand(-j('u_t') * (j('u_x') + 2 * y * j('u_t'))))
        self.assertEqual(vector.components[2],
                         sympy.expand(L - j('u_t') * (4 * (x ** 2 + y ** 2) * j('u_t')
                                                      + 2 * y * j('u_x') - 2 * x * j('u_y'))))

    def test_identity_holds(self):
        """Derived vectors are conserved on solutions"""
        for case, name in ((ARBITRARY, 'R'), (ARBITRARY, 'Xtilde'), (CUBIC, 'D3'), (LINEAR, 'Ytilde')):
            with self.subTest(case=case.selector, symmetry=name):
                vector = derive(case, name)
                self.assertTrue(verify_conservation(vector).ok)
                self.assertEqual(conservation_residual(vector.components, vector.characteristic, case), 0)

    def test_rotation_coefficient(self):
        """x u_y^2 enters C2 of R with coefficient 1/2"""
        terms = expr_core.terms(derive(ARBITRARY, 'R').components[1])
        self.assertEqual(terms[x * j('u_y') ** 2], sympy.Rational(1, 2))

    def test_rejected_symmetry(self):
        """Rejected generators have no conserved vector"""
        with self.assertRaises(CaseError):
            derive(LINEAR, 'U')


class TestConcreteBeta(unittest.TestCase):
    """Test W_beta vectors for concrete beta"""

    def test_harmonic_beta(self):
        """beta = x y solves the zero-case constraint"""
        vector = derive_with_beta(ZERO, x * y)
        self.assertEqual(vector.symmetry, 'W[x*y]')
        self.assertEqual(vector.characteristic, x * y)
        self.assertTrue(verify_conservation(vector).ok)

    def test_constraint_violation(self):
        """x^2 is not harmonic"""
        with self.assertRaises(CaseError):
            derive_with_beta(ZERO, x ** 2)

    def test_case_without_w(self):
        """The arbitrary case has no W_beta"""
        with self.assertRaises(CaseError):
            derive_with_beta(ARBITRARY, x)


class TestVerification(unittest.TestCase):
    """Test verify_conservation on hand-made vectors"""

    def test_non_conserved_vector(self):
        """(u, 0, 0) with Q = 0 leaves u_x"""
        check = verify_conservation(ConservedVector('-', ZERO, (u, 0, 0), Provenance.PAPER, sympy.Integer(0)))
        self.assertFalse(check.ok)
        self.assertEqual(check.residual, j('u_x'))

    def test_trivial_vector(self):
        """A divergence-free vector with Q = 0 is conserved"""
        vector = ConservedVector('-', ZERO, (j('u_y'), -j('u_x'), 0), Provenance.PAPER, sympy.Integer(0))
        self.assertTrue(verify_conservation(vector).ok)


class TestComparison(unittest.TestCase):
    """Test monomial-level comparison"""

    def _vector(self, components, provenance):
        return ConservedVector('T', ZERO, tuple(expr_core.parse(c) for c in components), provenance, -j('u_t'))

    def test_difference_kinds(self):
        """Monomials only in one vector and differing coefficients"""
        paper = self._vector(("u_x + 2*u_y", "u_t", "0"), Provenance.PAPER)
        derived = self._vector(("u_x - 2*u_y", "0", "x*u"), Provenance.DERIVED)
        report = compare(paper, derived)
        self.assertFalse(report.is_empty())
        first, second, third = report.components
        self.assertEqual(first.mismatches, {j('u_y'): (2, -2)})
        self.assertEqual(second.only_paper, {j('u_t'): 1})
        self.assertEqual(third.only_derived, {x * u: 1})
        self.assertEqual(len(report.items()), 3)

    def test_identical_vectors(self):
        """Equal vectors give an empty report"""
        vector = self._vector(("u_x", "u_y", "u_t"), Provenance.DERIVED)
        report = compare(vector, vector)
        self.assertTrue(report.is_empty())
        self.assertEqual(format_report(report), "T [zero]: paper and derived vectors agree")

    def test_report_rendering(self):
        """Text and JSON reports list each differing monomial"""
        paper = self._vector(("u_x", "0", "0"), Provenance.PAPER)
        derived = self._vector(("-u_x", "0", "0"), Provenance.DERIVED)
        report = compare(paper, derived)
        self.assertIn("C1  u_x: paper 1, derived -1", format_report(report))
        document = json.loads(format_report(report, 'json'))
        self.assertFalse(document['empty'])
        self.assertEqual(document['items'][0]['monomial'], 'u_x')


class TestTranscribedVectors(unittest.TestCase):
    """Test comparison with the transcribed vectors"""

    def test_available_cases(self):
        """Transcriptions exist for the arbitrary, zero and linear cases only"""
        self.assertEqual({v.symmetry for v in paper_vectors(ARBITRARY)}, {'T', 'R', 'Xtilde', 'Ytilde'})
        self.assertIn('W', {v.symmetry for v in paper_vectors(LINEAR)})
        with self.assertRaises(CaseError):
            paper_vectors(CUBIC)

    def test_time_translation_agrees(self):
        """T matches its transcription exactly"""
        report = compare(paper_vector(ARBITRARY, 'T'), derive(ARBITRARY, 'T'))
        self.assertTrue(report.is_empty())

    def test_rotation_sign_slip_is_documented(self):
        """The x u_y^2 sign slip in R is covered by the ledger"""
        report = compare(paper_vector(ARBITRARY, 'R'), derive(ARBITRARY, 'R'))
        rows = [(i.component, i.monomial, i.paper, i.derived) for i in report_model(report).items]
        self.assertIn((2, 'x*u_y^2', '-1/2', '1/2'), rows)
        self.assertTrue(ledger_covered(report))

    def test_format_vector(self):
        """Text rendering names the symmetry, case and provenance"""
        text = format_vector(derive(ARBITRARY, 'T'))
        self.assertTrue(text.startswith("T [arbitrary] (derived)"))
        self.assertIn("Q = -u_t", text)


if __name__ == '__main__':
    unittest.main()
