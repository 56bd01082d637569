"""
Expression Core Module

Exact, canonical symbolic expressions over the jet space of the Kohn-Laplace
equation. Every other module computes in this algebra.

An expression is a sympy expression built from registered atoms only:

- base variables ``x``, ``y``, ``t``
- jet coordinates of the dependent variable ``u`` and of the auxiliary
  function ``b`` (the beta of W_beta), written ``u``, ``u_x``, ``u_xt``, ``b_y``...
  with the derivative index stored sorted (x before y before t)
- opaque functions of ``u``: ``F(u)``, ``f(u)`` = F'(u), ``fk(u)`` for the k-th
  derivative of f, and ``E(u)`` for e^u

The canonical form is the fully expanded sum with exact rational
coefficients. Two expressions are equal as elements of the term algebra
exactly when their canonical forms are structurally identical.

Features:
- Validation of atoms, exponents and coefficients (no floats anywhere)
- Formal partial derivatives and substitution
- Text grammar parser with position-carrying errors
- Text, LaTeX and JSON printers with a fixed deterministic term order

Author: Heisenberg-Noether Team
Version: 1.0.0
"""

import json
import logging
import re
from enum import IntEnum
from functools import lru_cache
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

import sympy

import config
from utils import parse_rational

logger = logging.getLogger(__name__)

Expr = sympy.Expr

DIRECTIONS = ('x', 'y', 't')
DEPENDENTS = ('u', 'b')

_DIR_RANK = {'x': 0, 'y': 1, 't': 2}
_DEPENDENT_RANK = {'u': 0, 'b': 1}
_FAMILY_RANK = {'F': 0, 'f': 1, 'E': 2}

_JET_NAME = re.compile(r'^(u|b)(?:_([xyt]+))?$')
_F_NAME = re.compile(r'^f(\d*)$')

_TOKEN = re.compile(r'\s*(?:(?P<number>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))')


class ExprError(ValueError):
    """Invalid expression: unknown atom, bad exponent or inexact coefficient."""


class JetOrderError(ExprError):
    """A jet coordinate would exceed the configured maximal order."""


class ParseError(ExprError):
    """Syntax error in the text grammar, with the offending position."""

    def __init__(self, message: str, position: int, expected: Optional[str] = None):
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.position = position
        self.expected = expected


class AtomKind(IntEnum):
    BASE = 0
    JET = 1
    OPAQUE = 2


class Atom(NamedTuple):
    """
    One generator of the term algebra.

    Attributes:
        kind: base variable, jet coordinate or opaque function of u
        name: 'x'|'y'|'t' for base variables, 'u'|'b' for jets, 'F'|'f'|'E' for opaque atoms
        index: sorted derivative multi-index of a jet coordinate
        order: derivative order of an f-family atom
    """
    kind: AtomKind
    name: str
    index: Tuple[str, ...] = ()
    order: int = 0

    @property
    def symbol_name(self) -> str:
        if self.kind == AtomKind.JET:
            return self.name + ('_' + ''.join(self.index) if self.index else '')
        if self.kind == AtomKind.OPAQUE and self.name == 'f' and self.order:
            return f"f{self.order}"
        return self.name

    @property
    def jet_order(self) -> int:
        return len(self.index)

    def sort_key(self) -> Tuple:
        if self.kind == AtomKind.BASE:
            rank = _DIR_RANK[self.name]
        elif self.kind == AtomKind.JET:
            rank = _DEPENDENT_RANK[self.name]
        else:
            rank = _FAMILY_RANK[self.name]
        return (int(self.kind), rank, len(self.index), tuple(_DIR_RANK[c] for c in self.index), self.order)


def base_atom(name: str) -> Atom:
    if name not in _DIR_RANK:
        raise ExprError(f"unknown base variable '{name}'")
    return Atom(AtomKind.BASE, name)


def jet_atom(dependent: str, index: Union[str, Tuple[str, ...]] = ()) -> Atom:
    """
    Build a jet coordinate atom with its multi-index sorted.

    Raises:
        ExprError: Unknown dependent symbol or direction
        JetOrderError: Index longer than config.MAX_JET_ORDER
    """
    if dependent not in _DEPENDENT_RANK:
        raise ExprError(f"unknown dependent symbol '{dependent}'")
    index = tuple(index)
    for direction in index:
        if direction not in _DIR_RANK:
            raise ExprError(f"unknown direction '{direction}' in jet index")
    if len(index) > config.MAX_JET_ORDER:
        raise JetOrderError(
            f"jet coordinate {dependent}_{''.join(index)} has order {len(index)}, "
            f"above maxOrder {config.MAX_JET_ORDER}"
        )
    return Atom(AtomKind.JET, dependent, tuple(sorted(index, key=_DIR_RANK.__getitem__)))


def opaque_atom(family: str, order: int = 0) -> Atom:
    if family not in _FAMILY_RANK or order < 0 or (order and family != 'f'):
        raise ExprError(f"unknown opaque function '{family}' of order {order}")
    return Atom(AtomKind.OPAQUE, family, (), order)


@lru_cache(maxsize=None)
def symbol(atom: Atom) -> sympy.Symbol:
    """The sympy symbol standing for an atom (one symbol per atom)."""
    return sympy.Symbol(atom.symbol_name)


@lru_cache(maxsize=None)
def _atom_from_name(name: str) -> Atom:
    if name in _DIR_RANK:
        return base_atom(name)
    match = _JET_NAME.match(name)
    if match:
        index = tuple(sorted(match.group(2) or '', key=_DIR_RANK.__getitem__))
        return Atom(AtomKind.JET, match.group(1), index)
    if name in ('F', 'E'):
        return opaque_atom(name)
    match = _F_NAME.match(name)
    if match:
        return opaque_atom('f', int(match.group(1) or 0))
    raise ExprError(f"unknown identifier '{name}'")


def atom_of(sym: sympy.Symbol) -> Atom:
    """Recover the atom behind a symbol; raises ExprError for foreign symbols."""
    return _atom_from_name(sym.name)


def coord(name: str) -> sympy.Symbol:
    """
    Symbol for an atom given by its grammar name, e.g. ``coord('u_tx')``.

    The index is sorted, so ``coord('u_tx') is coord('u_xt')``.
    """
    return symbol(_atom_from_name(name))


def _as_symbol(a: Union[Atom, sympy.Symbol, str]) -> sympy.Symbol:
    if isinstance(a, Atom):
        return symbol(a)
    if isinstance(a, str):
        return coord(a)
    atom_of(a)
    return a


x, y, t = (coord(name) for name in DIRECTIONS)
u = coord('u')
b = coord('b')
F = coord('F')
f = coord('f')
E = coord('E')


# =============================================================================
# NORMAL FORM
# =============================================================================

def _check_tree(node: sympy.Basic) -> None:
    if node.is_Rational:
        return
    if node.is_Number:
        raise ExprError(f"coefficient {node} is not an exact rational")
    if node.is_Symbol:
        atom_of(node)
        return
    if node.is_Add or node.is_Mul:
        for arg in node.args:
            _check_tree(arg)
        return
    if node.is_Pow:
        base, exponent = node.args
        if not exponent.is_Rational:
            raise ExprError(f"exponent {exponent} is not a rational number")
        if base.is_Symbol:
            atom_of(base)
            if base != u and not (exponent.is_Integer and exponent >= 0):
                raise ExprError(
                    f"exponent {exponent} is not allowed on {base}: only u carries rational or negative exponents"
                )
            return
        if base.is_Rational:
            if not exponent.is_Integer:
                raise ExprError(f"{node} is not rational")
            return
        if not (exponent.is_Integer and exponent >= 0):
            raise ExprError(f"exponent {exponent} on a compound base must be a nonnegative integer")
        _check_tree(base)
        return
    raise ExprError(f"unsupported expression node {type(node).__name__}")


def normalize(raw: Any, check: bool = True) -> Expr:
    """
    Bring an expression tree into canonical form.

    Args:
        raw: sympy expression, integer or Fraction built from registered atoms
        check: validate atoms, exponents and coefficients before and after expansion

    Returns:
        Expr: the expanded canonical form (idempotent)

    Raises:
        ExprError: float coefficient, non-rational exponent, rational exponent on
            an atom other than u, or a foreign symbol

    Example:
        >>> normalize((x + y) * (x - y))
        x**2 - y**2
    """
    if isinstance(raw, float):
        raise ExprError(f"coefficient {raw} is not an exact rational")
    expr = sympy.sympify(raw)
    if check:
        _check_tree(expr)
    expr = sympy.expand(expr)
    if check:
        _check_tree(expr)
    return expr


def terms(e: Expr) -> Dict[Expr, sympy.Rational]:
    """Map each monomial of the canonical form to its rational coefficient."""
    result: Dict[Expr, sympy.Rational] = {}
    for term in sympy.Add.make_args(sympy.expand(e)):
        if term == 0:
            continue
        coeff, monomial = term.as_coeff_Mul()
        result[monomial] = result.get(monomial, 0) + coeff
    return {m: c for m, c in result.items() if c != 0}


def factors(monomial: Expr) -> List[Tuple[Atom, sympy.Rational]]:
    """Atoms of a monomial with their exponents, in the fixed atom order."""
    if monomial == 1:
        return []
    pairs = [(atom_of(base), sympy.Rational(exp)) for base, exp in monomial.as_powers_dict().items()]
    pairs.sort(key=lambda pair: pair[0].sort_key())
    return pairs


def monomial_key(monomial: Expr) -> Tuple:
    """Sort key of a monomial; non-base atoms first so terms group by jet content."""
    pairs = factors(monomial)
    jets = tuple((a.sort_key(), e) for a, e in pairs if a.kind != AtomKind.BASE)
    bases = tuple((a.sort_key(), e) for a, e in pairs if a.kind == AtomKind.BASE)
    return (len(jets), jets, bases)


def atoms_in(e: Expr) -> List[Atom]:
    return sorted({atom_of(s) for s in sympy.sympify(e).free_symbols}, key=Atom.sort_key)


def jet_order(e: Expr, dependent: Optional[str] = None) -> int:
    """Highest jet order occurring in ``e`` (optionally for one dependent symbol)."""
    orders = [a.jet_order for a in atoms_in(e)
              if a.kind == AtomKind.JET and (dependent is None or a.name == dependent)]
    return max(orders, default=0)


def has_dependent(e: Expr, dependent: str) -> bool:
    return any(a.kind == AtomKind.JET and a.name == dependent for a in atoms_in(e))


def split_monomial(monomial: Expr) -> Tuple[Expr, Expr]:
    """Split a monomial into its (x, y, t) part and its jet/opaque part."""
    base_part, rest = sympy.Integer(1), sympy.Integer(1)
    for atom, exponent in factors(monomial):
        power = symbol(atom) ** exponent
        if atom.kind == AtomKind.BASE:
            base_part *= power
        else:
            rest *= power
    return base_part, rest


def partial(e: Expr, a: Union[Atom, sympy.Symbol, str]) -> Expr:
    """
    Formal partial derivative: distinct atoms are independent variables.

    Chain rules through opaque functions of u are not applied here; see
    jet_calculus.u_derivative and jet_calculus.total_derivative.
    """
    return sympy.expand(sympy.diff(e, _as_symbol(a)))


def substitute(e: Expr, a: Union[Atom, sympy.Symbol, str], value: Any) -> Expr:
    """
    Replace every occurrence of an atom and renormalize.

    Raises:
        ExprError: if ``a`` is u, ``e`` contains a non-integer power of u, and
            ``value`` is not itself a single atom
    """
    target = _as_symbol(a)
    value = normalize(value)
    if target == u and not value.is_Symbol:
        for power in sympy.sympify(e).atoms(sympy.Pow):
            if power.base == u and not power.exp.is_Integer:
                raise ExprError(
                    f"cannot substitute {value} for u inside the rational power {power}"
                )
    return normalize(sympy.sympify(e).xreplace({target: value}))


# =============================================================================
# PARSER
# =============================================================================

class _Parser:
    """Recursive-descent parser for the text grammar."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        position = 0
        while position < len(text):
            match = _TOKEN.match(text, position)
            if not match or match.end() == position:
                if text[position:].strip() == '':
                    break
                offset = len(text[position:]) - len(text[position:].lstrip())
                raise ParseError(f"unexpected character '{text[position + offset]}'", position + offset)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        self.index = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def position(self) -> int:
        token = self.peek()
        return token[2] if token else len(self.text)

    def take(self) -> Tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of input", len(self.text), "an operand")
        self.index += 1
        return token

    def expect_op(self, op: str) -> None:
        token = self.peek()
        if token is None or token[1] != op:
            raise ParseError("unexpected token" if token else "unexpected end of input",
                             self.position(), f"'{op}'")
        self.index += 1

    def at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token is not None and token[0] == 'op' and token[1] in ops

    def parse(self) -> Expr:
        if not self.tokens:
            raise ParseError("empty expression", 0, "an operand")
        result = self.expression()
        if self.peek() is not None:
            raise ParseError(f"unexpected token '{self.peek()[1]}'", self.position(), "operator or end of input")
        return result

    def expression(self) -> Expr:
        result = self.term()
        while self.at_op('+', '-'):
            op = self.take()[1]
            right = self.term()
            result = result + right if op == '+' else result - right
        return result

    def term(self) -> Expr:
        result = self.unary()
        while self.at_op('*', '/'):
            _, op, position = self.take()
            right = self.unary()
            if op == '*':
                result = result * right
            else:
                result = result * self._reciprocal(right, position)
        return result

    def _reciprocal(self, divisor: Expr, position: int) -> Expr:
        divisor = sympy.expand(divisor)
        if divisor == 0:
            raise ParseError("division by zero", position)
        coeff, rest = divisor.as_coeff_Mul()
        if rest == 1 or (rest.is_Pow and rest.base == u) or rest == u:
            return 1 / divisor
        raise ParseError("division is only allowed by rational constants or powers of u", position)

    def unary(self) -> Expr:
        if self.at_op('-'):
            self.take()
            return -self.unary()
        if self.at_op('+'):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.at_op('^'):
            _, _, position = self.take()
            exponent = sympy.expand(self.unary())
            if not exponent.is_Rational:
                raise ParseError("exponent must be a rational constant", position)
            if not exponent.is_Integer and base != u:
                raise ParseError("rational exponents are only allowed on u", position)
            if exponent.is_Integer and exponent < 0 and not (base == u or sympy.sympify(base).is_Rational):
                raise ParseError("negative exponents are only allowed on u", position)
            if sympy.sympify(base).is_Rational and base == 0 and exponent < 0:
                raise ParseError("division by zero", position)
            return base ** exponent
        return base

    def primary(self) -> Expr:
        kind, value, position = self.take()
        if kind == 'number':
            return sympy.Integer(int(value))
        if kind == 'op':
            if value == '(':
                inner = self.expression()
                self.expect_op(')')
                return inner
            raise ParseError(f"unexpected operator '{value}'", position, "an operand")
        return self._identifier(value, position)

    def _identifier(self, name: str, position: int) -> Expr:
        is_function = name in ('F', 'E') or _F_NAME.match(name) is not None
        if is_function:
            self.expect_op('(')
            token = self.peek()
            if token is None or token[1] != 'u':
                raise ParseError("opaque functions take the argument u", self.position(), "'u'")
            self.take()
            self.expect_op(')')
        try:
            atom = _atom_from_name(name)
        except ExprError:
            raise ParseError(f"unknown identifier '{name}'", position,
                             "x, y, t, u, b, u_<index>, b_<index>, F(u), f(u), fk(u) or E(u)")
        if atom.jet_order > config.MAX_JET_ORDER:
            raise ParseError(
                f"jet coordinate {name} has order {atom.jet_order}, above maxOrder {config.MAX_JET_ORDER}",
                position, f"a jet coordinate of order <= {config.MAX_JET_ORDER}"
            )
        return symbol(atom)


def parse(text: str) -> Expr:
    """
    Parse the text grammar into a canonical expression.

    Grammar: identifiers x, y, t, u, b (beta); jet coordinates such as u_xt or
    b_y; opaque functions F(u), f(u), fk(u) (k-th derivative of f) and E(u)
    (e^u); integer literals (p/q via division); operators + - * / ^ and
    parentheses. Exponents must be rational constants; non-integer exponents
    only on u.

    Args:
        text (str): Expression text

    Returns:
        Expr: Canonical form

    Raises:
        ParseError: Syntax error, unknown identifier or jet order above maxOrder;
            carries ``position`` and ``expected``

    Example:
        >>> parse("1/2*u_x^2 + 2*y*u_x*u_t")
        2*y*u_t*u_x + u_x**2/2
        >>> parse("u_tx") == parse("u_xt")
        True
    """
    if not isinstance(text, str):
        raise ParseError("expression text must be a string", 0)
    try:
        return normalize(_Parser(text).parse())
    except ParseError:
        raise
    except ExprError as e:
        raise ParseError(str(e), 0) from e


# =============================================================================
# PRINTERS
# =============================================================================

def _rational_text(value: sympy.Rational) -> str:
    value = sympy.Rational(value)
    return str(value.p) if value.q == 1 else f"{value.p}/{value.q}"


def atom_text(atom: Atom) -> str:
    """Grammar spelling of an atom ('u_xt', 'F(u)', 'f2(u)', 'E(u)')."""
    if atom.kind == AtomKind.OPAQUE:
        return atom.symbol_name + '(u)'
    return atom.symbol_name


def _factor_text(atom: Atom, exponent: sympy.Rational) -> str:
    name = atom_text(atom)
    if exponent == 1:
        return name
    if exponent.is_Integer and exponent > 0:
        return f"{name}^{exponent}"
    return f"{name}^({_rational_text(exponent)})"


def monomial_text(monomial: Expr) -> str:
    """Text of a coefficient-free monomial, e.g. 'x*t*u_x*u_t'; '1' for the empty product."""
    pairs = factors(monomial)
    if not pairs:
        return '1'
    return '*'.join(_factor_text(a, e) for a, e in pairs)


def ordered_terms(e: Expr) -> List[Tuple[Expr, sympy.Rational]]:
    return sorted(terms(e).items(), key=lambda item: monomial_key(item[0]))


def to_text(e: Expr) -> str:
    """Plain-text printer; ``parse(to_text(e)) == e`` for every canonical expression."""
    pieces = []
    for monomial, coeff in ordered_terms(e):
        if monomial == 1:
            body = _rational_text(coeff)
        elif coeff == 1:
            body = monomial_text(monomial)
        elif coeff == -1:
            body = '-' + monomial_text(monomial)
        else:
            body = f"{_rational_text(coeff)}*{monomial_text(monomial)}"
        if not pieces:
            pieces.append(body)
        elif body.startswith('-'):
            pieces.append(' - ' + body[1:])
        else:
            pieces.append(' + ' + body)
    return ''.join(pieces) if pieces else '0'


def _latex_atom(atom: Atom) -> str:
    if atom.kind == AtomKind.BASE:
        return atom.name
    if atom.kind == AtomKind.JET:
        head = 'u' if atom.name == 'u' else '\\beta'
        return f"{head}_{{{''.join(atom.index)}}}" if atom.index else head
    if atom.name == 'f':
        return f"f^{{({atom.order})}}(u)" if atom.order else 'f(u)'
    return 'e^{u}' if atom.name == 'E' else 'F(u)'


def _latex_factor(atom: Atom, exponent: sympy.Rational) -> str:
    if exponent == 1:
        return _latex_atom(atom)
    if atom.kind == AtomKind.OPAQUE and atom.name == 'E':
        return f"e^{{{_rational_text(exponent)}u}}"
    return f"{_latex_atom(atom)}^{{{_rational_text(exponent)}}}"


def _latex_monomial(monomial: Expr) -> str:
    return ''.join(_latex_factor(a, e) for a, e in factors(monomial))


def _latex_coefficient(value: sympy.Rational) -> str:
    value = abs(sympy.Rational(value))
    return str(value.p) if value.q == 1 else f"\\frac{{{value.p}}}{{{value.q}}}"


def _poly_key(monomial: Expr) -> Tuple:
    degrees = dict((a.name, int(e)) for a, e in factors(monomial))
    exps = tuple(degrees.get(d, 0) for d in DIRECTIONS)
    return (-sum(exps), tuple(-k for k in exps))


def _latex_signed_terms(poly: Expr) -> List[Tuple[int, str]]:
    items = sorted(terms(poly).items(), key=lambda item: _poly_key(item[0]))
    out = []
    for monomial, coeff in items:
        body = _latex_monomial(monomial)
        if monomial == 1 or abs(coeff) != 1:
            body = _latex_coefficient(coeff) + body
        out.append((-1 if coeff < 0 else 1, body))
    return out


def _join_signed(pieces: List[Tuple[int, str]]) -> str:
    text = ''
    for i, (sign, body) in enumerate(pieces):
        if sign < 0:
            text += '-' + body
        else:
            text += ('+' if i else '') + body
    return text


def to_latex(e: Expr) -> str:
    """
    LaTeX printer that groups terms by their jet content.

    Each group prints its (x, y, t) coefficient in front of the jet monomial;
    a multi-term coefficient is written as rational content times a
    parenthesized primitive polynomial.

    Example:
        >>> to_latex(parse("4*(x^2+y^2)*u_tt"))
        '4(x^{2}+y^{2})u_{tt}'
    """
    groups: Dict[Expr, Expr] = {}
    for monomial, coeff in terms(e).items():
        base_part, jet_part = split_monomial(monomial)
        groups[jet_part] = groups.get(jet_part, sympy.Integer(0)) + coeff * base_part

    pieces: List[Tuple[int, str]] = []
    for jet_part in sorted(groups, key=monomial_key):
        coeff = sympy.expand(groups[jet_part])
        if coeff == 0:
            continue
        jet_latex = _latex_monomial(jet_part)
        if jet_part == 1:
            pieces.extend(_latex_signed_terms(coeff))
            continue
        signed = _latex_signed_terms(coeff)
        if len(signed) == 1:
            sign, body = signed[0]
            if body == '1':
                body = ''
            pieces.append((sign, body + jet_latex))
            continue
        content, primitive = coeff.as_content_primitive()
        sign = 1
        if _latex_signed_terms(primitive)[0][0] < 0:
            sign, primitive = -1, -primitive
        prefix = '' if content == 1 else _latex_coefficient(content)
        pieces.append((sign, f"{prefix}({_join_signed(_latex_signed_terms(primitive))}){jet_latex}"))

    return _join_signed(pieces) if pieces else '0'


def to_json_model(e: Expr):
    """Pydantic model of the JSON form {"terms":[{"coeff","factors":[{"atom","pow"}]}]}."""
    from reference.schemas import ExprModel, FactorModel, TermModel

    return ExprModel(terms=[
        TermModel(
            coeff=_rational_text(coeff),
            factors=[FactorModel(atom=atom_text(a), pow=_rational_text(p)) for a, p in factors(monomial)]
        )
        for monomial, coeff in ordered_terms(e)
    ])


def to_json(e: Expr) -> str:
    return to_json_model(e).model_dump_json()


def from_json(data: Union[str, Dict[str, Any]]) -> Expr:
    """
    Rebuild an expression from its JSON form.

    Raises:
        ExprError: malformed document, unknown atom or invalid exponent
    """
    from pydantic import ValidationError
    from reference.schemas import ExprModel

    try:
        model = ExprModel.model_validate_json(data) if isinstance(data, str) else ExprModel.model_validate(data)
    except (ValidationError, json.JSONDecodeError) as e:
        raise ExprError(f"malformed expression JSON: {e}") from e

    total = sympy.Integer(0)
    try:
        for term in model.terms:
            product = parse_rational(term.coeff)
            for factor in term.factors:
                name = factor.atom[:-3] if factor.atom.endswith('(u)') else factor.atom
                product *= coord(name) ** parse_rational(factor.pow)
            total += product
    except ExprError:
        raise
    except ValueError as e:
        raise ExprError(str(e)) from e
    return normalize(total)


def print_expr(e: Expr, fmt: str = 'text') -> str:
    """
    Print an expression in one of the supported formats.

    Args:
        e: Expression
        fmt: 'text', 'latex' or 'json'

    Raises:
        ValueError: Unknown format
    """
    if fmt == 'text':
        return to_text(e)
    if fmt == 'latex':
        return to_latex(e)
    if fmt == 'json':
        return to_json(e)
    raise ValueError(f"unknown output format '{fmt}'")
