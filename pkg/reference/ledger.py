"""
Discrepancy Ledger

Every known mismatch between a printed display and the value the engine
computes, with its probable cause. The acceptance suite requires each vector
comparison and each printed table cell to be either exact or covered here.
"""

from typing import Iterable, List, Optional

from .schemas import LedgerEntry, LedgerKind

_SIGMA_NOTE = ("Sign slip: x u_y^2 enters through xi^2 L = -1/2 x u_y^2 and Q P_2 = x u_y^2, "
               "which add up to +1/2.")
_V3_NOTE = "Sign or transcription slip in the printed C for V3; the derived vector satisfies the identity exactly."
_W_NOTE = ("[U, W_beta] = -W_beta and [W_beta, U] = W_beta; the printed table reads 0, "
           "which holds only up to the W_beta family.")


def _sigma(case: str) -> LedgerEntry:
    return LedgerEntry(kind=LedgerKind.VECTOR, case=case, symmetry='R', component=2,
                       monomial='x*u_y^2', paper='-1/2', derived='1/2', note=_SIGMA_NOTE)


def _v3(component: int, monomial: str, paper: str, derived: str) -> LedgerEntry:
    return LedgerEntry(kind=LedgerKind.VECTOR, case='zero', symmetry='V3', component=component,
                       monomial=monomial, paper=paper, derived=derived, note=_V3_NOTE)


def _cell(case: str, row: str, col: str, paper: str, derived: str, note: str) -> LedgerEntry:
    return LedgerEntry(kind=LedgerKind.TABLE, case=case, row=row, col=col, paper=paper, derived=derived, note=note)


LEDGER: List[LedgerEntry] = [
    _sigma('arbitrary'),
    _sigma('zero'),
    _sigma('linear'),
    _v3(1, 'x*t*u_x*u_t', '2', '-2'),
    _v3(1, 'x^2*y*u_x*u_t', '-2', '2'),
    _v3(2, 'x*u*u_y', '2', '-2'),
    _v3(3, 'y^5*u_t^2', '1', '4'),
    _v3(3, 'x^2*u*u_y', '-4', '4'),
    _v3(3, 'x*y*u*u_x', '-8', '-4'),
    _cell('linear', 'Ytilde', 'Xtilde', '4T', '-4T',
          "Antisymmetry: [Xtilde, Ytilde] = 4T is printed correctly in the same table."),
    _cell('zero', 'U', 'W', '0', 'W[-b]', _W_NOTE),
    _cell('zero', 'W', 'U', '0', 'W[b]', _W_NOTE),
    _cell('linear', 'U', 'W', '0', 'W[-b]', _W_NOTE),
    _cell('linear', 'W', 'U', '0', 'W[b]', _W_NOTE),
]
"""Known mismatches, vectors first."""


def vector_entries(case: str, symmetry: str) -> List[LedgerEntry]:
    return [e for e in LEDGER if e.kind == LedgerKind.VECTOR and e.case == case and e.symmetry == symmetry]


def table_entry(case: str, row: str, col: str) -> Optional[LedgerEntry]:
    for entry in LEDGER:
        if entry.kind == LedgerKind.TABLE and (entry.case, entry.row, entry.col) == (case, row, col):
            return entry
    return None


def covers(case: str, symmetry: str, items: Iterable[tuple]) -> bool:
    """
    True iff every differing monomial is a ledger row of (case, symmetry).

    Args:
        items: (component, monomial text, paper text, derived text) rows
    """
    documented = {(e.component, e.monomial, e.paper, e.derived) for e in vector_entries(case, symmetry)}
    return set(items) <= documented


def render_ledger_markdown() -> str:
    """The ledger as the DISCREPANCY_LEDGER.md document."""
    lines = [
        "# Discrepancy Ledger",
        "",
        "Mismatches between the printed conserved vectors and bracket tables and the values "
        "the engine computes. Computed values satisfy the conservation identity "
        "(vectors) or follow from the bracket convention [A, B] = A(B) - B(A) (tables).",
        "",
        "## Conserved vectors",
        "",
        "| case | symmetry | component | monomial | printed | computed | probable cause |",
        "|---|---|---|---|---|---|---|",
    ]
    for e in LEDGER:
        if e.kind == LedgerKind.VECTOR:
            lines.append(f"| {e.case} | {e.symmetry} | C{e.component} | `{e.monomial}` | {e.paper} | "
                         f"{e.derived} | {e.note} |")
    lines += [
        "",
        "## Bracket tables",
        "",
        "| case | row | column | printed | computed | probable cause |",
        "|---|---|---|---|---|---|",
    ]
    for e in LEDGER:
        if e.kind == LedgerKind.TABLE:
            lines.append(f"| {e.case} | {e.row} | {e.col} | {e.paper} | {e.derived} | {e.note} |")
    return '\n'.join(lines) + '\n'
