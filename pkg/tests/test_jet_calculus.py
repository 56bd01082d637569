#!/usr/bin/env python3
"""
Unit Tests for Jet Calculus Module

Tests jet_calculus.py:
- Total derivatives and their chain rules
- Divergence and the Euler operator
- The Kohn-Laplace operator and the equation of each case
- Reduction modulo the equation and the beta constraint
- Concrete beta instantiation
"""

import unittest
import random
from itertools import combinations
from pathlib import Path
import sys

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

import sympy

import expr_core
from acceptance import FIRST_ORDER, SECOND_ORDER, random_jet_polynomial
from expr_core import ExprError, JetOrderError, parse
from jet_calculus import (DIRECTIONS, PdeIdeal, base_partial, check_beta_constraint, divergence,
                          euler_operator, instantiate_beta, is_total_divergence, kohn_laplacian,
                          kohn_laplacian_of_function, pde_expression, reduce_mod_pde, total_derivative,
                          u_derivative)
from noether_engine import Lagrangian
from nonlinearity import ARBITRARY, CUBIC, EXPONENTIAL, LINEAR, ZERO, CaseError, NonlinearityCase

x, y, t, u = expr_core.x, expr_core.y, expr_core.t, expr_core.u


def j(name):
    return expr_core.coord(name)


class TestTotalDerivative(unittest.TestCase):
    """Test D_x, D_y, D_t"""

    def test_jets_and_base_variables(self):
        """Jets are raised, base variables differentiated"""
        self.assertEqual(total_derivative(u, 'x'), j('u_x'))
        self.assertEqual(total_derivative(parse("x*u_y"), 'x'), j('u_y') + x * j('u_xy'))
        self.assertEqual(total_derivative(parse("t^2"), 't'), 2 * t)
        self.assertEqual(total_derivative(parse("b"), 'y'), j('b_y'))

    def test_chain_rules(self):
        """F' = f, f^(k)' = f^(k+1), (e^u)' = e^u"""
        self.assertEqual(total_derivative(parse("F(u)"), 'y'), expr_core.f * j('u_y'))
        self.assertEqual(total_derivative(parse("f(u)"), 't'), j('f1') * j('u_t'))
        self.assertEqual(total_derivative(parse("f1(u)"), 'x'), j('f2') * j('u_x'))
        self.assertEqual(total_derivative(parse("E(u)"), 'x'), expr_core.E * j('u_x'))

    def test_commutativity(self):
        """D_i D_j = D_j D_i on random expressions"""
        rng = random.Random(7)
        for _ in range(15):
            e = random_jet_polynomial(rng, FIRST_ORDER + ('u_xy', 'u_tt'))
            for first, second in combinations(DIRECTIONS, 2):
                with self.subTest(e=expr_core.to_text(e), pair=(first, second)):
                    lhs = total_derivative(total_derivative(e, first), second)
                    rhs = total_derivative(total_derivative(e, second), first)
                    self.assertEqual(sympy.expand(lhs - rhs), 0)

    def test_order_overflow(self):
        """Raising a maxOrder coordinate fails"""
        with self.assertRaises(JetOrderError):
            total_derivative(j('u_xxxx'), 'x')

    def test_unknown_direction(self):
        """Only x, y, t are directions"""
        with self.assertRaises(ValueError):
            total_derivative(u, 'z')

    def test_u_derivative_and_base_partial(self):
        """d/du follows chain rules; base partials raise beta-jets only"""
        self.assertEqual(u_derivative(parse("u^2*F(u) + E(u)")), 2 * u * expr_core.F + u ** 2 * expr_core.f + expr_core.E)
        self.assertEqual(base_partial(parse("x*b + u_x"), 'x'), j('b') + x * j('b_x'))


class TestDivergenceAndEuler(unittest.TestCase):
    """Test divergence and the Euler operator"""

    def test_divergence(self):
        """D_x v1 + D_y v2 + D_t v3"""
        self.assertEqual(divergence((u, x * u, 0)), j('u_x') + x * j('u_y'))
        with self.assertRaises(ValueError):
            divergence((u, u))

    def test_euler_of_dirichlet_energy(self):
        """E(u_x^2 + u_y^2) = -2 u_xx - 2 u_yy"""
        self.assertEqual(euler_operator(parse("u_x^2 + u_y^2")), -2 * j('u_xx') - 2 * j('u_yy'))

    def test_euler_reproduces_the_equation(self):
        """E(L) = -(Delta u + f(u)) in every case"""
        cases = [ARBITRARY, ZERO, LINEAR, EXPONENTIAL, CUBIC] + \
            [NonlinearityCase.power(p) for p in ('-1', '1/2', '2', '5')]
        for case in cases:
            with self.subTest(case=case.selector):
                image = case.specialize(euler_operator(Lagrangian.for_case(case).L))
                self.assertEqual(sympy.expand(image + pde_expression(case)), 0)

    def test_kernel_contains_divergences(self):
        """Random first-order divergences are annihilated"""
        rng = random.Random(11)
        for _ in range(25):
            phi = [random_jet_polynomial(rng, n_terms=2) for _ in DIRECTIONS]
            with self.subTest(phi=[expr_core.to_text(p) for p in phi]):
                self.assertTrue(is_total_divergence(divergence(phi)).ok)

    def test_non_divergence_has_witness(self):
        """u^2 is not a divergence; its witness is 2u"""
        verdict = is_total_divergence(u ** 2)
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.witness, 2 * u)

    def test_beta_euler(self):
        """The b-variational derivative"""
        self.assertEqual(euler_operator(parse("b_x^2"), 'b'), -2 * j('b_xx'))

    def test_order_limit(self):
        """Third-order expressions are rejected"""
        with self.assertRaises(ExprError):
            euler_operator(j('u_xxy'))
        with self.assertRaises(ValueError):
            euler_operator(u, 'v')


class TestEquation(unittest.TestCase):
    """Test the operator and the per-case equation"""

    def test_kohn_laplacian(self):
        """Delta u = u_xx + u_yy + 4(x^2+y^2) u_tt + 4y u_xt - 4x u_yt"""
        expected = parse("u_xx + u_yy + 4*(x^2+y^2)*u_tt + 4*y*u_xt - 4*x*u_yt")
        self.assertEqual(kohn_laplacian('u'), expected)

    def test_operator_on_functions(self):
        """Delta applied to concrete functions"""
        self.assertEqual(kohn_laplacian_of_function(x * y), 0)
        self.assertEqual(kohn_laplacian_of_function(x ** 2), 2)
        self.assertEqual(kohn_laplacian_of_function(y * t), -4 * x)
        self.assertEqual(kohn_laplacian_of_function(t ** 2), 8 * (x ** 2 + y ** 2))

    def test_pde_expression(self):
        """Delta u + f(u)"""
        self.assertEqual(pde_expression(LINEAR), sympy.expand(kohn_laplacian('u') + u))
        self.assertEqual(pde_expression(ZERO), kohn_laplacian('u'))
        self.assertEqual(pde_expression(ARBITRARY), sympy.expand(kohn_laplacian('u') + expr_core.f))


class TestReduction(unittest.TestCase):
    """Test rewriting modulo the equation"""

    def test_equation_reduces_to_zero(self):
        """The equation and its derivatives lie in the ideal"""
        for case in (ARBITRARY, ZERO, LINEAR, CUBIC):
            ideal = PdeIdeal.for_case(case)
            for e in (pde_expression(case), total_derivative(pde_expression(case), 't'),
                      total_derivative(total_derivative(pde_expression(case), 'x'), 'y')):
                with self.subTest(case=case.selector):
                    self.assertEqual(reduce_mod_pde(e, ideal), 0)

    def test_leading_rule(self):
        """u_xx is replaced by the rest of the equation"""
        reduced = reduce_mod_pde(j('u_xx'), PdeIdeal.for_case(LINEAR))
        self.assertEqual(reduced, parse("-u_yy - 4*(x^2+y^2)*u_tt - 4*y*u_xt + 4*x*u_yt - u"))

    def test_idempotent(self):
        """Reducing twice changes nothing"""
        rng = random.Random(3)
        ideal = PdeIdeal.for_case(ARBITRARY)
        for _ in range(10):
            once = reduce_mod_pde(random_jet_polynomial(rng, SECOND_ORDER, n_terms=4), ideal)
            self.assertEqual(reduce_mod_pde(once, ideal), once)

    def test_beta_rule(self):
        """The beta constraint rewrites b_xx in the zero and linear cases only"""
        self.assertEqual(reduce_mod_pde(j('b_xx'), PdeIdeal.for_case(ARBITRARY)), j('b_xx'))
        self.assertEqual(reduce_mod_pde(j('b_xx') + j('b_yy'), PdeIdeal.beta_only(ZERO)),
                         parse("-4*(x^2+y^2)*b_tt - 4*y*b_xt + 4*x*b_yt"))
        self.assertEqual(reduce_mod_pde(j('u_xx'), PdeIdeal.beta_only(ZERO)), j('u_xx'))


class TestConcreteBeta(unittest.TestCase):
    """Test beta instantiation and its constraint"""

    def test_instantiate(self):
        """b_J becomes the partial derivative of beta0"""
        e = parse("b*u_x + b_x*u + b_xt")
        self.assertEqual(instantiate_beta(e, x ** 2 * t), x ** 2 * t * j('u_x') + 2 * x * t * u + 2 * x)

    def test_instantiate_rejects_jets(self):
        """beta0 must be a function of x, y, t"""
        with self.assertRaises(ExprError):
            instantiate_beta(parse("b"), u)

    def test_constraint(self):
        """Delta beta0 + k beta0"""
        self.assertEqual(check_beta_constraint(x * y + t, ZERO), 0)
        self.assertEqual(check_beta_constraint(x, LINEAR), x)
        with self.assertRaises(CaseError):
            check_beta_constraint(x, ARBITRARY)


if __name__ == '__main__':
    unittest.main()
