#!/usr/bin/env python3
"""
Unit Tests for Nonlinearity Module

Tests nonlinearity.py:
- Case selectors and aliases
- Exponent routing and validation
- F, f and the per-case constants
- Specialization of opaque f-atoms
"""

import unittest
from pathlib import Path
import sys

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

import sympy

import expr_core
from nonlinearity import (ARBITRARY, CUBIC, EXPONENTIAL, LINEAR, ZERO, CaseError, CaseTag,
                          NonlinearityCase, parse_case)

u = expr_core.u


class TestSelectors(unittest.TestCase):
    """Test case selection"""

    def test_named_cases(self):
        """Plain selectors, aliases and case-insensitivity"""
        cases = {'arbitrary': ARBITRARY, 'zero': ZERO, 'linear': LINEAR, 'exp': EXPONENTIAL,
                 'exponential': EXPONENTIAL, 'cubic': CUBIC, 'critical': CUBIC, ' Zero ': ZERO}
        for selector, expected in cases.items():
            with self.subTest(selector=selector):
                self.assertEqual(NonlinearityCase.from_selector(selector), expected)

    def test_power_selector(self):
        """power:<p> takes exact rationals"""
        case = parse_case("power:1/2")
        self.assertEqual(case.tag, CaseTag.POWER)
        self.assertEqual(case.p, sympy.Rational(1, 2))
        self.assertEqual(case.selector, "power:1/2")
        self.assertEqual(NonlinearityCase.power(-1).selector, "power:-1")

    def test_routed_exponents(self):
        """p = 0, 1, 3 belong to their own cases"""
        for p, routed in (('0', 'zero'), ('1', 'linear'), ('3', 'cubic')):
            with self.subTest(p=p):
                with self.assertRaises(CaseError) as cm:
                    parse_case(f"power:{p}")
                self.assertIn(routed, str(cm.exception))

    def test_invalid_selectors(self):
        """Unknown names, bare power and decimal exponents are rejected"""
        for selector in ('quadratic', 'power', 'power:0.5', 'power:', '', None):
            with self.subTest(selector=selector):
                with self.assertRaises(CaseError):
                    NonlinearityCase.from_selector(selector)

    def test_direct_construction_validated(self):
        """The model validators guard direct construction"""
        with self.assertRaises(ValueError):
            NonlinearityCase(tag=CaseTag.POWER)
        with self.assertRaises(ValueError):
            NonlinearityCase(tag=CaseTag.POWER, p=1)
        with self.assertRaises(ValueError):
            NonlinearityCase(tag=CaseTag.ZERO, p=2)
        with self.assertRaises(ValueError):
            NonlinearityCase(tag=CaseTag.POWER, p=0.5)

    def test_hashable(self):
        """Cases key dictionaries and caches"""
        registry = {ZERO: 'zero', parse_case("power:2"): 'p2'}
        self.assertEqual(registry[parse_case("zero")], 'zero')
        self.assertEqual(registry[NonlinearityCase.power(2)], 'p2')


class TestCaseData(unittest.TestCase):
    """Test F, f and the constants"""

    def test_potentials(self):
        """F' = f in the concrete cases"""
        for case in (ZERO, LINEAR, CUBIC, EXPONENTIAL, NonlinearityCase.power(2), NonlinearityCase.power('1/2')):
            with self.subTest(case=case.selector):
                derivative = sympy.diff(case.F, u) if case != EXPONENTIAL else expr_core.E
                self.assertEqual(sympy.expand(derivative - case.f), 0)

    def test_concrete_values(self):
        """Spot values of F and f"""
        self.assertEqual(LINEAR.F, u ** 2 / 2)
        self.assertEqual(CUBIC.f, u ** 3)
        self.assertEqual(NonlinearityCase.power('1/2').F, sympy.Rational(2, 3) * u ** sympy.Rational(3, 2))
        self.assertEqual(ARBITRARY.F, expr_core.F)
        self.assertEqual(ARBITRARY.f, expr_core.f)

    def test_reciprocal_power_keeps_opaque_potential(self):
        """For p = -1, F stays opaque while f = 1/u"""
        case = NonlinearityCase.power(-1)
        self.assertEqual(case.F, expr_core.F)
        self.assertEqual(case.f, 1 / u)

    def test_beta_constant(self):
        """k = 0 for the zero case, 1 for the linear case, None elsewhere"""
        self.assertEqual(ZERO.beta_k, 0)
        self.assertEqual(LINEAR.beta_k, 1)
        for case in (ARBITRARY, CUBIC, EXPONENTIAL, NonlinearityCase.power(2)):
            with self.subTest(case=case.selector):
                self.assertIsNone(case.beta_k)

    def test_dilation_exponent(self):
        """Power and cubic cases carry a dilation exponent"""
        self.assertEqual(CUBIC.dilation_exponent, 3)
        self.assertEqual(NonlinearityCase.power(5).dilation_exponent, 5)
        self.assertIsNone(ZERO.dilation_exponent)

    def test_describe(self):
        """Human-readable descriptions"""
        self.assertEqual(ARBITRARY.describe(), "f(u) arbitrary")
        self.assertEqual(EXPONENTIAL.describe(), "f(u) = e^u")
        self.assertEqual(ZERO.describe(), "f(u) = 0")
        self.assertEqual(str(LINEAR), "linear")


class TestSpecialize(unittest.TestCase):
    """Test replacement of opaque f-atoms"""

    def test_reciprocal_power(self):
        """f and f1 become 1/u and -1/u^2"""
        case = NonlinearityCase.power(-1)
        e = expr_core.parse("f(u)*u_x + f1(u)")
        self.assertEqual(case.specialize(e), expr_core.parse("u_x/u - u^-2"))

    def test_unchanged_when_f_is_opaque(self):
        """The arbitrary case keeps its atoms"""
        e = expr_core.parse("f(u)*u_x")
        self.assertEqual(ARBITRARY.specialize(e), e)


if __name__ == '__main__':
    unittest.main()
