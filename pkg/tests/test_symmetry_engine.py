#!/usr/bin/env python3
"""
Unit Tests for Symmetry Engine Module

Tests symmetry_engine.py:
- Point vector field records and validation
- Prolongation
- Lie brackets and their decomposition over the catalog
- Catalog contents and generator lookup
- Bracket tables and their rendering
- Lie symmetry check
- Heisenberg group law and its left-invariant fields
"""

import unittest
import json
from pathlib import Path
import sys

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

import sympy

import expr_core
from nonlinearity import ARBITRARY, CUBIC, EXPONENTIAL, LINEAR, ZERO, CaseError, NonlinearityCase
from symmetry_engine import (SCALING, UNIT, PointVectorField, bracket_table, catalog, check_independence,
                             check_lie_symmetry, classify_bracket, decompose, dilation, find_generator,
                             heisenberg_compose, heisenberg_report, left_invariant_fields, lie_bracket,
                             prolong, render_table, span_rank, w_field)

x, y, t, u = expr_core.x, expr_core.y, expr_core.t, expr_core.u


def j(name):
    return expr_core.coord(name)


class TestPointVectorField(unittest.TestCase):
    """Test the field record"""

    def test_coefficients_normalized(self):
        """Coefficients are expanded on construction"""
        field = PointVectorField(name='A', xi=((x + y) ** 2, 0, 0), eta=0)
        self.assertEqual(field.xi[0], x ** 2 + 2 * x * y + y ** 2)
        self.assertEqual(field.latex, 'A')

    def test_rejects_derivative_dependence(self):
        """Point fields cannot depend on u_x"""
        with self.assertRaises(ValueError):
            PointVectorField(name='bad', xi=(0, 0, 0), eta=j('u_x'))
        with self.assertRaises(ValueError):
            PointVectorField(name='bad', xi=(0, 0), eta=0)

    def test_characteristic(self):
        """Q = eta - xi^j u_j"""
        self.assertEqual(find_generator(ARBITRARY, 'T').characteristic(), -j('u_t'))
        self.assertEqual(SCALING.characteristic(), -x * j('u_x') - y * j('u_y') - 2 * t * j('u_t'))

    def test_combine_and_scale(self):
        """Linear combinations of fields"""
        combined = SCALING.combine(UNIT, -1)
        self.assertEqual(combined.eta, -u)
        self.assertEqual(UNIT.scaled(3).eta, 3 * u)

    def test_text(self):
        """Only nonzero components are printed"""
        self.assertEqual(find_generator(ARBITRARY, 'R').to_text(), "(y)*d/dx + (-x)*d/dy")
        self.assertEqual(PointVectorField(name='O', xi=(0, 0, 0), eta=0).to_text(), '0')


class TestProlongation(unittest.TestCase):
    """Test first and second prolongations"""

    def test_rotation_first_order(self):
        """R lifts u_x to u_y and u_y to -u_x"""
        lifted = prolong(find_generator(ARBITRARY, 'R'), 1)
        self.assertEqual(lifted.coefficient('u_x'), j('u_y'))
        self.assertEqual(lifted.coefficient('u_y'), -j('u_x'))
        self.assertEqual(lifted.coefficient('u_t'), 0)

    def test_scaling_second_order(self):
        """Z scales u_x by -1 and u_tt by -4"""
        lifted = prolong(SCALING, 2)
        self.assertEqual(lifted.coefficient('u_x'), -j('u_x'))
        self.assertEqual(lifted.coefficient('u_tt'), -4 * j('u_tt'))
        self.assertEqual(lifted.coefficient('u_xt'), -3 * j('u_xt'))

    def test_invalid_order(self):
        """Only orders 1 and 2"""
        with self.assertRaises(ValueError):
            prolong(SCALING, 3)


class TestBrackets(unittest.TestCase):
    """Test Lie brackets and span decomposition"""

    def test_translations(self):
        """[Xtilde, Ytilde] = 4T"""
        bracket = lie_bracket(find_generator(ARBITRARY, 'Xtilde'), find_generator(ARBITRARY, 'Ytilde'))
        self.assertEqual(bracket.xi, (0, 0, 4))
        self.assertEqual(decompose(bracket, catalog(ARBITRARY)), {'T': 4})

    def test_antisymmetry(self):
        """[A, B] = -[B, A]"""
        generators = catalog(CUBIC)
        for a in generators[:4]:
            for c in generators[4:]:
                with self.subTest(pair=(a.name, c.name)):
                    forward, backward = lie_bracket(a, c), lie_bracket(c, a)
                    for p, q in zip(forward.coefficients, backward.coefficients):
                        self.assertEqual(sympy.expand(p + q), 0)

    def test_conformal_bracket(self):
        """[T, V1] = Z - U in the zero case"""
        basis = [g for g in catalog(ZERO) if g.name != 'W']
        entry = classify_bracket(find_generator(ZERO, 'T'), find_generator(ZERO, 'V1'), basis)
        self.assertEqual(entry.kind, 'combination')
        self.assertEqual(entry.combination, {'Z': 1, 'U': -1})
        self.assertEqual(entry.label(), 'Z - U')
        self.assertEqual(entry.label(fmt='latex'), 'Z-U')

    def test_w_brackets(self):
        """Brackets with W are classified as a new W argument"""
        basis = [g for g in catalog(ZERO) if g.name != 'W']
        entry = classify_bracket(find_generator(ZERO, 'T'), w_field(), basis)
        self.assertEqual(entry.kind, 'w')
        self.assertEqual(entry.beta, j('b_t'))
        self.assertEqual(entry.label(), 'W[b_t]')

    def test_outside_span(self):
        """decompose returns None outside the span"""
        self.assertIsNone(decompose(SCALING, catalog(ARBITRARY)))
        self.assertEqual(decompose(PointVectorField(name='O', xi=(0, 0, 0), eta=0), catalog(ARBITRARY)), {})

    def test_rank(self):
        """Catalog generators are independent"""
        self.assertEqual(span_rank(catalog(CUBIC)), len(catalog(CUBIC)))
        with self.assertRaises(RuntimeError):
            check_independence([SCALING, SCALING.scaled(2)])


class TestCatalog(unittest.TestCase):
    """Test catalog contents and lookup"""

    def test_sizes(self):
        """Generator counts per case"""
        sizes = {ARBITRARY: 4, LINEAR: 6, ZERO: 10, CUBIC: 8, EXPONENTIAL: 5, NonlinearityCase.power(2): 5}
        for case, size in sizes.items():
            with self.subTest(case=case.selector):
                self.assertEqual(len(catalog(case)), size)

    def test_names(self):
        """Display order of the zero case"""
        self.assertEqual([g.name for g in catalog(ZERO)],
                         ['T', 'R', 'Xtilde', 'Ytilde', 'V1', 'V2', 'V3', 'Z', 'U', 'W'])

    def test_dilation(self):
        """D_p = x d/dx + y d/dy + 2t d/dt + 2/(1-p) u d/du"""
        self.assertEqual(dilation(2).eta, -2 * u)
        self.assertEqual(dilation(sympy.Rational(1, 2)).name, 'D1/2')
        self.assertEqual(dilation(sympy.Rational(1, 2)).eta, 4 * u)
        self.assertEqual(dilation(3).eta, -u)

    def test_find_generator(self):
        """Case-insensitive lookup with aliases"""
        self.assertEqual(find_generator(ARBITRARY, 'X~').name, 'Xtilde')
        self.assertEqual(find_generator(ARBITRARY, 'ytilde').name, 'Ytilde')
        self.assertEqual(find_generator(ZERO, 'W_beta').name, 'W')
        self.assertEqual(find_generator(NonlinearityCase.power(2), 'D').name, 'D2')
        with self.assertRaises(CaseError):
            find_generator(ARBITRARY, 'V1')

    def test_concrete_w(self):
        """W with a concrete beta carries it in eta"""
        field = w_field(x * y)
        self.assertEqual(field.name, 'W[x*y]')
        self.assertEqual(field.eta, x * y)


class TestBracketTable(unittest.TestCase):
    """Test bracket tables"""

    def test_arbitrary_table(self):
        """The general table holds 4T and its negative"""
        table = bracket_table(ARBITRARY)
        self.assertEqual(table.names, ('T', 'R', 'Xtilde', 'Ytilde'))
        self.assertEqual(table.entry('Xtilde', 'Ytilde').label(), '4T')
        self.assertEqual(table.entry('Ytilde', 'Xtilde').label(), '-4T')
        self.assertEqual(table.entry('T', 'R').label(), '0')
        self.assertEqual(table.unclassified(), [])

    def test_render_text(self):
        """Text grid with a header row"""
        text = render_table(bracket_table(ARBITRARY))
        self.assertIn('4T', text)
        self.assertTrue(text.splitlines()[0].strip().startswith('| T'))

    def test_render_json(self):
        """JSON document with one entry per ordered pair"""
        document = json.loads(render_table(bracket_table(ARBITRARY), 'json'))
        self.assertEqual(document['case'], 'arbitrary')
        self.assertEqual(len(document['entries']), 16)

    def test_render_latex(self):
        """LaTeX tabular uses the generator symbols"""
        text = render_table(bracket_table(ARBITRARY), 'latex')
        self.assertTrue(text.startswith('\\begin{tabular}'))
        self.assertIn('\\tilde{X}', text)


class TestLieSymmetry(unittest.TestCase):
    """Test the symmetry condition"""

    def test_catalog_generators_are_symmetries(self):
        """Every catalog generator passes for its case"""
        for case in (ARBITRARY, LINEAR, CUBIC, NonlinearityCase.power(2)):
            for generator in catalog(case):
                with self.subTest(case=case.selector, generator=generator.name):
                    self.assertTrue(check_lie_symmetry(generator, case).ok)

    def test_non_symmetries_have_residual(self):
        """Z is no symmetry for arbitrary f; D2 none for the linear case"""
        verdict = check_lie_symmetry(SCALING, ARBITRARY)
        self.assertFalse(verdict.ok)
        self.assertNotEqual(verdict.residual, 0)
        self.assertFalse(check_lie_symmetry(dilation(2), LINEAR).ok)


class TestHeisenberg(unittest.TestCase):
    """Test the group law and the operator comparison"""

    def test_group_law(self):
        """Composition and its mirrored variant"""
        self.assertEqual(heisenberg_compose((1, 0, 0), (0, 1, 0)), (1, 1, 2))
        self.assertEqual(heisenberg_compose((1, 0, 0), (0, 1, 0), -1), (1, 1, -2))

    def test_left_invariant_fields(self):
        """X = d/dx - 2y d/dt, Y = d/dy + 2x d/dt from the stated law"""
        X, Y, Z = left_invariant_fields(1)
        self.assertEqual(X.xi, (1, 0, -2 * y))
        self.assertEqual(Y.xi, (0, 1, 2 * x))
        self.assertEqual(Z.xi, (0, 0, 1))

    def test_report(self):
        """Only the mirrored law reproduces the displayed operator"""
        report = heisenberg_report()
        self.assertTrue(report.identity_ok)
        self.assertTrue(report.associative)
        self.assertEqual([s.matches_displayed_operator for s in report.field_sets], [False, True, False])
        self.assertEqual([s.bracket_xy for s in report.field_sets], ['4Z', '-4Z', '0'])


if __name__ == '__main__':
    unittest.main()
