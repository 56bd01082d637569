"""
Transcribed Bracket Tables and Noether Sets

The five published bracket tables, cell by cell as printed, and the Noether
symmetry sets stated for each case. Cells use generator names; 'V' stands
for Z - U, 'Dp' for the case's dilation and 'W' for any W_{S beta} entry.
Printed slips are kept verbatim; the discrepancy ledger explains them.
"""

import re
from typing import Dict, List, Tuple, Union

import sympy

from nonlinearity import CaseTag, NonlinearityCase

W_ENTRY = 'W'
"""Marker for cells printed as W_{S beta} (checked structurally)."""

Cell = Union[str, Dict[str, sympy.Rational]]

_CELL = re.compile(r'^([+-]?)(\d*)([A-Za-z][A-Za-z0-9]*)$')


class PaperTables:
    """Printed tables: (column names, {row name: cells})."""

    ARBITRARY = (
        ['T', 'R', 'Xtilde', 'Ytilde'],
        {
            'T': '0 0 0 0',
            'R': '0 0 Ytilde -Xtilde',
            'Xtilde': '0 -Ytilde 0 4T',
            'Ytilde': '0 Xtilde -4T 0',
        },
    )

    ZERO = (
        ['T', 'R', 'Xtilde', 'Ytilde', 'U', 'W', 'V1', 'V2', 'V3', 'Z'],
        {
            'T': '0 0 0 0 0 W V Xtilde Ytilde 2T',
            'R': '0 0 Ytilde -Xtilde 0 W 0 V3 -V2 0',
            'Xtilde': '0 -Ytilde 0 4T 0 W V2 -6R 2V Xtilde',
            'Ytilde': '0 Xtilde -4T 0 0 W V3 -2V -6R Ytilde',
            'U': '0 0 0 0 0 0 0 0 0 0',
            'W': '-W -W -W -W 0 0 W W W W',
            'V1': '-V 0 -V2 -V3 0 -W 0 0 0 -2V1',
            'V2': '-Xtilde -V3 6R 2V 0 -W 0 0 4V1 -V2',
            'V3': '-Ytilde V2 -2V 6R 0 -W 0 -4V1 0 -V3',
            'Z': '-2T 0 -Xtilde -Ytilde 0 -W 2V1 V2 V3 0',
        },
    )

    LINEAR = (
        ['T', 'R', 'Xtilde', 'Ytilde', 'U', 'W'],
        {
            'T': '0 0 0 0 0 W',
            'R': '0 0 Ytilde -Xtilde 0 W',
            'Xtilde': '0 -Ytilde 0 4T 0 W',
            'Ytilde': '0 Xtilde 4T 0 0 W',
            'U': '0 0 0 0 0 0',
            'W': '-W -W -W -W 0 0',
        },
    )

    POWER = (
        ['T', 'R', 'Xtilde', 'Ytilde', 'Dp'],
        {
            'T': '0 0 0 0 2T',
            'R': '0 0 Ytilde -Xtilde 0',
            'Xtilde': '0 -Ytilde 0 4T Xtilde',
            'Ytilde': '0 Xtilde -4T 0 Ytilde',
            'Dp': '-2T 0 -Xtilde -Ytilde 0',
        },
    )

    EXPONENTIAL = (
        ['T', 'R', 'Xtilde', 'Ytilde', 'E'],
        {
            'T': '0 0 0 0 2T',
            'R': '0 0 Ytilde -Xtilde 0',
            'Xtilde': '0 -Ytilde 0 4T Xtilde',
            'Ytilde': '0 Xtilde -4T 0 Ytilde',
            'E': '-2T 0 -Xtilde -Ytilde 0',
        },
    )


_G_F = ('T', 'R', 'Xtilde', 'Ytilde')

NOETHER_SETS: Dict[CaseTag, Tuple[str, ...]] = {
    CaseTag.ARBITRARY: _G_F,
    CaseTag.EXPONENTIAL: _G_F,
    CaseTag.POWER: _G_F,
    CaseTag.LINEAR: _G_F + ('W',),
    CaseTag.ZERO: _G_F + ('W', 'V1', 'V2', 'V3'),
    CaseTag.CUBIC: _G_F + ('V1', 'V2', 'V3', 'D3'),
}
"""Noether symmetry sets as stated for each case."""


def dilation_name(case: NonlinearityCase) -> str:
    p = case.dilation_exponent
    return f"D{p.p}" if p.q == 1 else f"D{p.p}/{p.q}"


def noether_set(case: NonlinearityCase) -> Tuple[str, ...]:
    return NOETHER_SETS[case.tag]


def parse_cell(text: str, case: NonlinearityCase) -> Cell:
    """
    Parse a printed cell into a combination of generator names (or the W marker).

    Raises:
        ValueError: Malformed cell text
    """
    if text == '0':
        return {}
    match = _CELL.match(text)
    if not match:
        raise ValueError(f"malformed table cell '{text}'")
    sign, factor, name = match.groups()
    if name == W_ENTRY:
        return W_ENTRY
    value = sympy.Rational(int(factor or 1)) * (-1 if sign == '-' else 1)
    if name == 'V':
        return {'Z': value, 'U': -value}
    if name == 'Dp':
        name = dilation_name(case)
    return {name: value}


def table_for(case: NonlinearityCase) -> Tuple[List[str], Dict[str, List[str]]]:
    """Printed table of a case (the cubic case has none)."""
    tables = {
        CaseTag.ARBITRARY: PaperTables.ARBITRARY,
        CaseTag.ZERO: PaperTables.ZERO,
        CaseTag.LINEAR: PaperTables.LINEAR,
        CaseTag.POWER: PaperTables.POWER,
        CaseTag.EXPONENTIAL: PaperTables.EXPONENTIAL,
    }
    if case.tag not in tables:
        raise KeyError(f"no printed bracket table for case {case.selector}")
    columns, rows = tables[case.tag]
    return columns, {name: cells.split() for name, cells in rows.items()}
