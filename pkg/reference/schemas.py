"""
Report Schema Definitions using Pydantic

Structured records for everything the engine emits as JSON: expressions,
generators, bracket tables, Noether certificates, conserved vectors,
discrepancy reports, the Heisenberg consistency report and the selftest
summary. Also the validated command-line configuration.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class OutputFormat(str, Enum):
    """Output formats"""
    TEXT = "text"
    JSON = "json"
    LATEX = "latex"


class EntryKind(str, Enum):
    """Bracket table entry classifications"""
    COMBINATION = "combination"
    W = "w"
    UNCLASSIFIED = "unclassified"


class LedgerKind(str, Enum):
    """Discrepancy ledger entry kinds"""
    VECTOR = "vector"
    TABLE = "table"


# =============================================================================
# EXPRESSIONS
# =============================================================================

class FactorModel(BaseModel):
    """One atom power inside a term"""
    atom: str = Field(..., description="Atom in grammar spelling, e.g. 'u_xt' or 'F(u)'")
    pow: str = Field("1", description="Exponent as an exact rational 'p/q'")


class TermModel(BaseModel):
    """Rational coefficient times a product of atom powers"""
    coeff: str = Field(..., description="Coefficient as an exact rational 'p/q'")
    factors: List[FactorModel] = Field(default_factory=list, description="Atom powers in canonical order")


class ExprModel(BaseModel):
    """Canonical expression; the empty term list is 0"""
    terms: List[TermModel] = Field(default_factory=list, description="Terms in canonical order")


# =============================================================================
# SYMMETRIES
# =============================================================================

class FieldModel(BaseModel):
    """Point vector field"""
    name: str = Field(..., description="Generator name")
    xi: List[str] = Field(..., description="Coefficients of d/dx, d/dy, d/dt (text grammar)")
    eta: str = Field(..., description="Coefficient of d/du (text grammar)")


class CatalogModel(BaseModel):
    """Symmetry catalog of one case"""
    case: str = Field(..., description="Case selector")
    description: str = Field(..., description="The nonlinearity, e.g. 'f(u) = u'")
    generators: List[FieldModel] = Field(default_factory=list, description="Generators in display order")


class BracketEntryModel(BaseModel):
    """One bracket table cell"""
    row: str
    col: str
    kind: EntryKind = Field(..., description="How the bracket was classified")
    label: str = Field(..., description="Printed entry, e.g. '4T', 'Z - U' or 'W[b_t]'")
    combination: Dict[str, str] = Field(default_factory=dict, description="Generator -> rational coefficient")
    beta: Optional[ExprModel] = Field(None, description="New W argument for structural W entries")
    residual: Optional[str] = Field(None, description="The bracket itself when it is unclassified")


class BracketTableModel(BaseModel):
    """Classified bracket table"""
    case: str
    rows: List[str]
    cols: List[str]
    entries: List[BracketEntryModel] = Field(default_factory=list, description="Row-major cells")


class FieldSetModel(BaseModel):
    """One set of left-invariant fields and its operator"""
    label: str = Field(..., description="Where the fields come from")
    fields: Dict[str, str] = Field(..., description="Field name -> operator text")
    bracket_xy: str = Field(..., description="[X, Y] over {X, Y, Z}")
    sublaplacian: str = Field(..., description="X^2 u + Y^2 u")
    matches_displayed_operator: bool
    difference: str = Field(..., description="(X^2 + Y^2) u minus the Kohn-Laplace operator")


class HeisenbergReportModel(BaseModel):
    """Group law and sub-Laplacian consistency report"""
    identity_ok: bool = Field(..., description="(0,0,0) is a two-sided identity")
    associative: bool = Field(..., description="Associativity on symbolic points")
    displayed_operator: str = Field(..., description="The Kohn-Laplace operator used by the engine")
    field_sets: List[FieldSetModel] = Field(default_factory=list)


# =============================================================================
# NOETHER AND CONSERVATION
# =============================================================================

class CertificateModel(BaseModel):
    """Noether certificate"""
    symmetry: str
    case: str
    verdict: str = Field(..., description="accepted | rejected | accepted_potential_pending")
    defect: ExprModel = Field(..., description="S^(1)L + L Div(xi)")
    phi: Optional[List[ExprModel]] = Field(None, description="Potential (accepted only)")
    witness: Optional[ExprModel] = Field(None, description="Euler-operator witness (rejected only)")
    gauge_note: Optional[str] = None
    diagnostics: Optional[str] = None


class ClassificationModel(BaseModel):
    """Noether classification of one case"""
    case: str
    certificates: List[CertificateModel] = Field(default_factory=list)
    accepted: List[str] = Field(default_factory=list)
    expected: List[str] = Field(default_factory=list, description="The known Noether set of the case")
    matches: bool


class ConservedVectorModel(BaseModel):
    """Conserved vector"""
    symmetry: str
    case: str
    provenance: str = Field(..., description="derived | paper")
    components: List[ExprModel]
    characteristic: ExprModel = Field(..., description="Q = eta - xi^j u_j")
    notes: List[str] = Field(default_factory=list, description="Transcription notes")


class VerificationModel(BaseModel):
    """Result of a conservation check"""
    symmetry: str
    case: str
    provenance: str
    ok: bool
    residual: ExprModel


class DiscrepancyModel(BaseModel):
    """One differing monomial; '-' marks an absent term"""
    component: int
    monomial: str
    paper: str
    derived: str


class DiscrepancyReportModel(BaseModel):
    """Paper versus derived vector"""
    symmetry: str
    case: str
    empty: bool
    ledger_covered: Optional[bool] = None
    items: List[DiscrepancyModel] = Field(default_factory=list)


class LedgerEntry(BaseModel):
    """
    One documented mismatch between a printed display and the computed value.

    Vector entries fill symmetry/component/monomial; table entries fill row/col.
    Coefficients and labels are strings so both kinds share one record.
    """
    kind: LedgerKind
    case: str
    symmetry: Optional[str] = None
    component: Optional[int] = None
    monomial: Optional[str] = None
    row: Optional[str] = None
    col: Optional[str] = None
    paper: str = Field(..., description="Printed value ('-' if the term is not printed)")
    derived: str = Field(..., description="Computed value ('-' if the term is absent)")
    note: str = Field(..., description="Probable cause")


# =============================================================================
# SELFTEST AND CLI
# =============================================================================

class CriterionResult(BaseModel):
    """One acceptance criterion"""
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


class SelftestReport(BaseModel):
    """Acceptance suite summary"""
    case_filter: Optional[str] = None
    criteria: List[CriterionResult] = Field(default_factory=list)
    passed: bool
    wall_seconds: float


class CliConfig(BaseModel):
    """Validated command-line configuration"""
    case: str = Field("arbitrary", description="Case selector")
    format: OutputFormat = Field(OutputFormat.TEXT, description="Output format")
    max_order: Optional[int] = Field(None, description="maxOrder override")
    basis_degree: Optional[int] = Field(None, description="Reconstruction degree override")

    @field_validator('case')
    @classmethod
    def _check_case(cls, value: str) -> str:
        from nonlinearity import NonlinearityCase

        NonlinearityCase.from_selector(value)
        return value.strip().lower()
