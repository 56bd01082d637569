"""
Fixture Manager - Transcribed Reference Data

Serves the transcribed conserved vectors, bracket tables, Noether sets and the
discrepancy ledger to the engine, the command line and the acceptance suite.
"""

import logging
from typing import Dict, List, Optional, Tuple

import sympy

import expr_core
from expr_core import Expr
from nonlinearity import CaseError, CaseTag, NonlinearityCase

from .ledger import LEDGER, covers, table_entry
from .paper_tables import Cell, dilation_name, noether_set, parse_cell, table_for
from .paper_vectors import TRANSCRIPTION_NOTES, PaperVectors
from .schemas import LedgerEntry

_VECTOR_CASES = (CaseTag.ARBITRARY, CaseTag.ZERO, CaseTag.LINEAR)


class FixtureManager:
    """Centralized access to the transcribed reference data"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def paper_vector_texts(self, case: NonlinearityCase) -> Dict[str, Tuple[str, str, str]]:
        """
        Transcription texts available for a case.

        Args:
            case (NonlinearityCase): arbitrary, zero or linear

        Returns:
            Dict[str, Tuple[str, str, str]]: Generator name -> (C1, C2, C3) text

        Raises:
            CaseError: No conserved vectors are printed for the case
        """
        if case.tag not in _VECTOR_CASES:
            raise CaseError(f"no transcribed conserved vectors for case {case.selector} "
                            f"(available: arbitrary, zero, linear)")
        texts = dict(PaperVectors.GENERAL)
        if case.tag == CaseTag.ZERO:
            texts.update(PaperVectors.HOMOGENEOUS)
        if case.tag in (CaseTag.ZERO, CaseTag.LINEAR):
            texts['W'] = PaperVectors.W_BETA
        return texts

    def paper_vectors(self, case: NonlinearityCase) -> Dict[str, Tuple[Expr, Expr, Expr]]:
        """
        Parsed transcriptions with F(u) replaced by the case's potential.

        Raises:
            CaseError: No conserved vectors are printed for the case
            ParseError: A transcription does not parse (a fixture bug)
        """
        vectors = {}
        for name, texts in self.paper_vector_texts(case).items():
            components = []
            for text in texts:
                parsed = expr_core.parse(text)
                components.append(expr_core.normalize(parsed.xreplace({expr_core.F: case.F})))
            vectors[name] = tuple(components)
        self.logger.debug(f"Loaded {len(vectors)} transcribed vectors for {case.selector}")
        return vectors

    def transcription_notes(self, name: str) -> List[str]:
        return list(TRANSCRIPTION_NOTES.get(name, []))

    def expected_table(self, case: NonlinearityCase) -> Dict[Tuple[str, str], Cell]:
        """
        Printed bracket table of a case, one parsed cell per (row, col).

        Raises:
            CaseError: No table is printed for the case
        """
        try:
            columns, rows = table_for(case)
        except KeyError as e:
            raise CaseError(str(e.args[0])) from e
        table = {}
        for row_name, cells in rows.items():
            for col_name, cell in zip(columns, cells):
                table[(self._name(row_name, case), self._name(col_name, case))] = parse_cell(cell, case)
        self.logger.debug(f"Printed table for {case.selector}: {len(table)} cells")
        return table

    @staticmethod
    def _name(name: str, case: NonlinearityCase) -> str:
        return dilation_name(case) if name == 'Dp' else name

    def expected_noether_set(self, case: NonlinearityCase) -> Tuple[str, ...]:
        """Noether symmetries stated for a case."""
        return noether_set(case)

    def ledger(self) -> List[LedgerEntry]:
        return list(LEDGER)

    def table_slip(self, case: NonlinearityCase, row: str, col: str) -> Optional[LedgerEntry]:
        return table_entry(case.selector, row, col)

    def covers(self, case: NonlinearityCase, symmetry: str, items) -> bool:
        """True iff a comparison's differing monomials are exactly the documented ones."""
        return covers(case.selector, symmetry, items)


def cell_matches(expected: Cell, kind: str, combination: Dict[str, sympy.Rational]) -> bool:
    """Compare a printed cell with a classified bracket (kind and combination)."""
    if isinstance(expected, str):
        return kind == 'w'
    return kind == 'combination' and dict(combination) == dict(expected)
