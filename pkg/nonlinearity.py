"""
Nonlinearity Cases Module

The six choices of f(u) for which the symmetry catalog of the Kohn-Laplace
equation is known, with their potentials F(u) (f = F') as expressions.

Selectors (command line and API):
    arbitrary   F(u), f(u) opaque
    zero        F = 0
    linear      F = u^2/2,           f = u
    power:<p>   F = u^(p+1)/(p+1),   f = u^p   (p rational, p not in {0, 1, 3})
    exp         F = f = e^u
    cubic       F = u^4/4,           f = u^3   (critical case)

At p = -1 the potential is log(u); it stays the opaque atom F(u) and only f
and its derivatives are concrete (see NonlinearityCase.specialize).
"""

import logging
from enum import Enum
from typing import Any, Optional

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

import expr_core
from expr_core import Expr
from utils import parse_rational

logger = logging.getLogger(__name__)

_ROUTED_EXPONENTS = {0: 'zero', 1: 'linear', 3: 'cubic'}


class CaseError(ValueError):
    """Unknown case selector, or a power exponent that belongs to another case."""


class CaseTag(str, Enum):
    """Nonlinearity families"""
    ARBITRARY = "arbitrary"
    ZERO = "zero"
    LINEAR = "linear"
    POWER = "power"
    EXPONENTIAL = "exp"
    CUBIC = "cubic"


class NonlinearityCase(BaseModel):
    """One f(u) case. Immutable and hashable, so it can key per-case caches."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tag: CaseTag = Field(..., description="Nonlinearity family")
    p: Optional[sympy.Rational] = Field(None, description="Exponent of f(u) = u^p (power family only)")

    @field_validator('p', mode='before')
    @classmethod
    def _coerce_exponent(cls, value: Any) -> Optional[sympy.Rational]:
        if value is None or isinstance(value, sympy.Rational):
            return value
        if isinstance(value, str):
            return parse_rational(value)
        if isinstance(value, float):
            raise ValueError(f"exponent {value} must be an exact rational")
        return sympy.Rational(value)

    @model_validator(mode='after')
    def _check_exponent(self) -> 'NonlinearityCase':
        if self.tag == CaseTag.POWER:
            if self.p is None:
                raise ValueError("the power case needs an exponent p")
            if self.p in _ROUTED_EXPONENTS:
                raise ValueError(
                    f"f(u)=u^{self.p} is not a power case; use --case {_ROUTED_EXPONENTS[int(self.p)]}"
                )
        elif self.p is not None:
            raise ValueError(f"case '{self.tag.value}' takes no exponent")
        return self

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_selector(cls, selector: str) -> 'NonlinearityCase':
        """
        Build a case from its selector string.

        Args:
            selector (str): 'arbitrary', 'zero', 'linear', 'power:<p>', 'exp' or 'cubic'

        Returns:
            NonlinearityCase: The validated case

        Raises:
            CaseError: Unknown selector, malformed exponent, or p in {0, 1, 3}

        Example:
            >>> NonlinearityCase.from_selector("power:1/2").f
            sqrt(u)
        """
        text = (selector or '').strip().lower()
        if text.startswith('power:'):
            try:
                exponent = parse_rational(text.split(':', 1)[1])
            except ValueError as e:
                raise CaseError(f"invalid power exponent in '{selector}': {e}") from e
            if exponent in _ROUTED_EXPONENTS:
                routed = _ROUTED_EXPONENTS[int(exponent)]
                raise CaseError(
                    f"f(u)=u^{exponent} is handled by its own case; use --case {routed}"
                )
            return cls(tag=CaseTag.POWER, p=exponent)

        aliases = {'exponential': 'exp', 'critical': 'cubic'}
        text = aliases.get(text, text)
        try:
            tag = CaseTag(text)
        except ValueError:
            raise CaseError(
                f"unknown case '{selector}' (expected arbitrary, zero, linear, power:<p>, exp or cubic)"
            )
        if tag == CaseTag.POWER:
            raise CaseError("the power case needs an exponent, e.g. power:2")
        return cls(tag=tag)

    @classmethod
    def power(cls, p: Any) -> 'NonlinearityCase':
        return cls.from_selector(f"power:{sympy.Rational(p)}")

    # ------------------------------------------------------------------
    # Data
    # ------------------------------------------------------------------

    @property
    def selector(self) -> str:
        if self.tag == CaseTag.POWER:
            return f"power:{self.p}"
        return self.tag.value

    @property
    def F(self) -> Expr:
        """Potential F(u) with f = F'."""
        if self.tag == CaseTag.ARBITRARY:
            return expr_core.F
        if self.tag == CaseTag.ZERO:
            return sympy.Integer(0)
        if self.tag == CaseTag.LINEAR:
            return expr_core.u ** 2 / 2
        if self.tag == CaseTag.CUBIC:
            return expr_core.u ** 4 / 4
        if self.tag == CaseTag.EXPONENTIAL:
            return expr_core.E
        if self.p == -1:
            return expr_core.F
        return expr_core.u ** (self.p + 1) / (self.p + 1)

    @property
    def f(self) -> Expr:
        if self.tag == CaseTag.ARBITRARY:
            return expr_core.f
        if self.tag == CaseTag.ZERO:
            return sympy.Integer(0)
        if self.tag == CaseTag.LINEAR:
            return expr_core.u
        if self.tag == CaseTag.CUBIC:
            return expr_core.u ** 3
        if self.tag == CaseTag.EXPONENTIAL:
            return expr_core.E
        return expr_core.u ** self.p

    @property
    def beta_k(self) -> Optional[int]:
        """k of the beta constraint  Delta beta + k beta = 0, or None when W_beta is absent."""
        return {CaseTag.ZERO: 0, CaseTag.LINEAR: 1}.get(self.tag)

    @property
    def dilation_exponent(self) -> Optional[sympy.Rational]:
        """Exponent p of the dilation generator D_p, when the case has one."""
        if self.tag == CaseTag.POWER:
            return self.p
        if self.tag == CaseTag.CUBIC:
            return sympy.Integer(3)
        return None

    def specialize(self, e: Expr) -> Expr:
        """
        Replace opaque f-family atoms by the case's concrete f and its u-derivatives.

        Only matters when F stays opaque while f is concrete (p = -1); for every
        other case the expression is returned unchanged.
        """
        if self.f == expr_core.f:
            return e
        replacements = {}
        for atom in expr_core.atoms_in(e):
            if atom.kind == expr_core.AtomKind.OPAQUE and atom.name == 'f':
                replacements[expr_core.symbol(atom)] = sympy.diff(self.f, expr_core.u, atom.order)
        if not replacements:
            return e
        return sympy.expand(e.xreplace(replacements))

    def describe(self) -> str:
        if self.tag == CaseTag.ARBITRARY:
            return "f(u) arbitrary"
        if self.tag == CaseTag.EXPONENTIAL:
            return "f(u) = e^u"
        return f"f(u) = {expr_core.to_text(self.f)}"

    def __str__(self) -> str:
        return self.selector


def parse_case(selector: str) -> NonlinearityCase:
    """Shorthand for NonlinearityCase.from_selector."""
    return NonlinearityCase.from_selector(selector)


ARBITRARY = NonlinearityCase(tag=CaseTag.ARBITRARY)
ZERO = NonlinearityCase(tag=CaseTag.ZERO)
LINEAR = NonlinearityCase(tag=CaseTag.LINEAR)
EXPONENTIAL = NonlinearityCase(tag=CaseTag.EXPONENTIAL)
CUBIC = NonlinearityCase(tag=CaseTag.CUBIC)

POWER_SWEEP = tuple(sympy.Rational(p) for p in ('-1', '1/2', '2', '4', '5'))
"""Exponents on which the power-case Noether classification is checked."""
