"""
Reference Data

Transcribed conserved vectors and bracket tables, the Noether sets stated for
each case, the discrepancy ledger, and the pydantic report schemas.
"""

from .fixture_manager import FixtureManager, cell_matches
from .ledger import LEDGER, render_ledger_markdown
from .schemas import *

__all__ = ['FixtureManager', 'cell_matches', 'LEDGER', 'render_ledger_markdown']
