#!/usr/bin/env python3
"""
Integration Tests for the Symmetry-to-Conservation Pipeline

Tests the modules working together:
- Catalog -> Lie symmetry check -> Noether certificate -> conserved vector
- Transcribed vectors against derived ones, modulo the discrepancy ledger
- Characteristic linearity of W_beta vectors
- Command line reports written to disk and read back
"""

import unittest
import json
import shutil
import tempfile
from pathlib import Path
from unittest.mock import patch
import io
import sys

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import sympy

import cli
import config
import expr_core
from conservation import compare, derive, derive_with_beta, ledger_covered, paper_vector, verify_conservation
from jet_calculus import check_beta_constraint
from noether_engine import is_noether
from nonlinearity import CUBIC, LINEAR, ZERO
from symmetry_engine import catalog, check_lie_symmetry

x, y, t = expr_core.x, expr_core.y, expr_core.t


class TestCriticalPipeline(unittest.TestCase):
    """Every accepted generator of f = u^3 yields a conserved vector"""

    def test_conformal_generators(self):
        """V1, V2, V3 and D3 pass every stage"""
        for field in catalog(CUBIC)[4:]:
            with self.subTest(symmetry=field.name):
                self.assertTrue(check_lie_symmetry(field, CUBIC).ok)
                certificate = is_noether(field, CUBIC)
                self.assertTrue(certificate.accepted)
                vector = derive(CUBIC, field.name)
                self.assertTrue(verify_conservation(vector).ok)


class TestLinearPipeline(unittest.TestCase):
    """The linear case against its transcriptions"""

    def test_transcribed_vectors_match_or_are_documented(self):
        """Each difference from a transcription is in the ledger"""
        for name in ('T', 'R', 'Xtilde', 'Ytilde', 'W'):
            with self.subTest(symmetry=name):
                report = compare(paper_vector(LINEAR, name), derive(LINEAR, name))
                self.assertTrue(report.is_empty() or ledger_covered(report))

    def test_symbolic_w_vector(self):
        """W_beta with symbolic beta is conserved modulo the beta constraint"""
        self.assertTrue(verify_conservation(derive(LINEAR, 'W')).ok)


class TestBetaLinearity(unittest.TestCase):
    """W_beta vectors are linear in beta"""

    def test_sum_of_harmonic_betas(self):
        """C[x y + t] = C[x y] + C[t] in the zero case"""
        for beta in (x * y, t, x * y + t):
            self.assertEqual(check_beta_constraint(beta, ZERO), 0)
        first, second = derive_with_beta(ZERO, x * y), derive_with_beta(ZERO, t)
        both = derive_with_beta(ZERO, x * y + t)
        for p, q, r in zip(first.components, second.components, both.components):
            self.assertEqual(sympy.expand(p + q - r), 0)


class TestCliReports(unittest.TestCase):
    """Reports written by the command line"""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()
        self.saved = (config.MAX_JET_ORDER, config.BASIS_DEGREE)

    def tearDown(self):
        config.MAX_JET_ORDER, config.BASIS_DEGREE = self.saved
        shutil.rmtree(self.test_dir, ignore_errors=True)

    def _run(self, *argv):
        with patch('cli.setup_logging'), patch('sys.stdout', new_callable=io.StringIO), \
                patch('sys.stderr', new_callable=io.StringIO):
            return cli.main(list(argv))

    def test_derived_vector_json_round_trip(self):
        """JSON components parse back to the derived vector"""
        target = Path(self.test_dir) / 'claw' / 't.json'
        code = self._run('claw', 'derive', '--case', 'linear', '--symmetry', 'T', '--format', 'json',
                         '--out', str(target))
        self.assertEqual(code, cli.EXIT_OK)
        document = json.loads(target.read_text(encoding='utf-8'))
        components = [expr_core.from_json(c) for c in document['components']]
        self.assertEqual(tuple(components), derive(LINEAR, 'T').components)

    def test_bracket_table_json(self):
        """Nonzero brackets with W are structural W entries"""
        target = Path(self.test_dir) / 'linear.json'
        code = self._run('brackets', '--case', 'linear', '--format', 'json', '--out', str(target))
        self.assertEqual(code, cli.EXIT_OK)
        entries = json.loads(target.read_text(encoding='utf-8'))['entries']
        self.assertEqual(len(entries), 36)
        self.assertFalse([e for e in entries if e['kind'] == 'unclassified'])
        w_entries = {(e['row'], e['col']) for e in entries if e['kind'] == 'w'}
        self.assertIn(('T', 'W'), w_entries)
        self.assertIn(('U', 'W'), w_entries)


if __name__ == '__main__':
    unittest.main()
