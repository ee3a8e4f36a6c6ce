"""Formula syntax for Riesz modal logic.

Formulas are immutable trees over seven core constructors::

    0 | 1 | r*phi | phi + psi | phi \\/ psi | phi /\\ psi | <l>phi

with exact rational scalars.  ``Var`` leaves only appear in equations handled
by the proof checker, and the extended connectives ``Oplus``, ``Odot`` and
``Ominus`` only appear in input to :func:`rieszmodal.translate.expand`.

Concrete syntax (lowest to highest binding)::

    formula  := meetjoin
    meetjoin := sum { ("/\\" | "\\/") sum }      -- no mixing without parens
    sum      := term { ("+" | "-") term }
    term     := rational "*" term | "-" term | "<>" term | "<" label ">" term
              | "|" formula "|" | atom
    atom     := "0" | "1" | rational | "(" formula ")"
    rational := integer [ "/" positive-integer ] | decimal

A coefficient may also be written in parentheses, ``(-1/2)*phi``.  With
``extended=True`` the operators ``(+)``, ``(.)`` and ``phi (-) q`` are accepted
at the lattice level, again without mixing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

DEFAULT_LABEL = "tau"
LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Number = Union[int, Fraction]


class Formula:
    """Base class of all formula nodes.

    Python operators build core formulas: ``a + b``, ``a - b``, ``-a``,
    ``q * a``, ``a | b`` (join) and ``a & b`` (meet).
    """

    __slots__ = ()

    def __add__(self, other: Formula) -> Formula:
        return Add(self, other)

    def __sub__(self, other: Formula) -> Formula:
        return Add(self, Scale(Fraction(-1), other))

    def __neg__(self) -> Formula:
        return Scale(Fraction(-1), self)

    def __rmul__(self, r: Number) -> Formula:
        return Scale(Fraction(r), self)

    def __or__(self, other: Formula) -> Formula:
        return Join(self, other)

    def __and__(self, other: Formula) -> Formula:
        return Meet(self, other)

    def children(self) -> tuple[Formula, ...]:
        return ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False, slots=True)
class Zero(Formula):
    def __repr__(self) -> str:
        return "Zero()"


@dataclass(frozen=True, repr=False, slots=True)
class One(Formula):
    def __repr__(self) -> str:
        return "One()"


@dataclass(frozen=True, slots=True)
class Scale(Formula):
    r: Fraction
    arg: Formula

    def __post_init__(self) -> None:
        if not isinstance(self.r, Fraction):
            object.__setattr__(self, "r", Fraction(self.r))

    def children(self) -> tuple[Formula, ...]:
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class Add(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Join(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Meet(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Dia(Formula):
    arg: Formula
    label: str = DEFAULT_LABEL

    def __post_init__(self) -> None:
        if not LABEL_RE.match(self.label):
            raise ValueError(f"invalid label {self.label!r}")

    def children(self) -> tuple[Formula, ...]:
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    """Equation variable; never evaluated directly."""

    name: str


# Extended connectives.  Front-end only: expand() rewrites them away.


@dataclass(frozen=True, slots=True)
class Oplus(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Odot(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Ominus(Formula):
    arg: Formula
    r: Fraction

    def children(self) -> tuple[Formula, ...]:
        return (self.arg,)


ZERO = Zero()
ONE = One()
CORE_TYPES = (Zero, One, Scale, Add, Join, Meet, Dia)
BINARY_TYPES = (Add, Join, Meet)


def dia(phi: Formula, label: str = DEFAULT_LABEL) -> Dia:
    return Dia(phi, label)


def const(q: Number) -> Formula:
    """The constant formula ``q*1``."""
    return Scale(Fraction(q), ONE)


def abs_(phi: Formula) -> Formula:
    """``|phi|`` as the abbreviation ``phi+ + phi-``."""
    return Add(Join(phi, ZERO), Join(Scale(Fraction(-1), phi), ZERO))


def pos(phi: Formula) -> Formula:
    return Join(phi, ZERO)


def neg(phi: Formula) -> Formula:
    return Join(Scale(Fraction(-1), phi), ZERO)


# ---------------------------------------------------------------------------
# Traversal and metrics


def subformulas(phi: Formula) -> Iterator[Formula]:
    """Pre-order iteration over all subterm occurrences."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def size(phi: Formula) -> int:
    return sum(1 for _ in subformulas(phi))


def labels_of(phi: Formula) -> set[str]:
    return {n.label for n in subformulas(phi) if isinstance(n, Dia)}


def variables_of(phi: Formula) -> set[str]:
    return {n.name for n in subformulas(phi) if isinstance(n, Var)}


def is_core(phi: Formula) -> bool:
    return all(isinstance(n, CORE_TYPES) for n in subformulas(phi))


def modal_depth(phi: Formula) -> int:
    if isinstance(phi, Dia):
        return 1 + modal_depth(phi.arg)
    kids = phi.children()
    return max((modal_depth(k) for k in kids), default=0)


def unit_bound(phi: Formula) -> Fraction:
    """A syntactic n with ``|[[phi]](x)| <= n`` on every model and state."""
    if isinstance(phi, Zero):
        return Fraction(0)
    if isinstance(phi, One):
        return Fraction(1)
    if isinstance(phi, Scale):
        return abs(phi.r) * unit_bound(phi.arg)
    if isinstance(phi, Add):
        return unit_bound(phi.left) + unit_bound(phi.right)
    if isinstance(phi, (Join, Meet)):
        return max(unit_bound(phi.left), unit_bound(phi.right))
    if isinstance(phi, Dia):
        return unit_bound(phi.arg)
    raise TypeError(f"unit_bound is defined on core formulas only, got {type(phi).__name__}")


def substitute(phi: Formula, mapping: dict[str, Formula]) -> Formula:
    """Replace ``Var`` leaves by formulas; unmapped variables are kept."""
    if isinstance(phi, Var):
        return mapping.get(phi.name, phi)
    if isinstance(phi, (Zero, One)):
        return phi
    if isinstance(phi, Scale):
        return Scale(phi.r, substitute(phi.arg, mapping))
    if isinstance(phi, Dia):
        return Dia(substitute(phi.arg, mapping), phi.label)
    if isinstance(phi, Ominus):
        return Ominus(substitute(phi.arg, mapping), phi.r)
    cls = type(phi)
    return cls(substitute(phi.left, mapping), substitute(phi.right, mapping))


# ---------------------------------------------------------------------------
# Printing

_LEVEL_LATTICE = 0
_LEVEL_SUM = 1
_LEVEL_TERM = 2

_LATTICE_OPS = {Join: "\\/", Meet: "/\\", Oplus: "(+)", Odot: "(.)"}


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coefficient(q: Fraction) -> str:
    if q >= 0 and q.denominator == 1:
        return str(q.numerator)
    return f"({format_rational(q)})"


def _level(phi: Formula) -> int:
    if isinstance(phi, (Join, Meet, Oplus, Odot, Ominus)):
        return _LEVEL_LATTICE
    if isinstance(phi, Add):
        return _LEVEL_SUM
    return _LEVEL_TERM


def _wrap(phi: Formula, min_level: int) -> str:
    text = to_text(phi)
    return text if _level(phi) >= min_level else f"({text})"


def to_text(phi: Formula) -> str:
    """Render ``phi`` in the concrete syntax; ``parse(to_text(phi)) == phi``.

    Sums under a lattice operator are parenthesized even though ``+`` binds
    tighter, so that ``1 /\\ (<>1 + <>1)`` reads unambiguously.
    """
    if isinstance(phi, Zero):
        return "0"
    if isinstance(phi, One):
        return "1"
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Scale):
        return f"{_coefficient(phi.r)}*{_wrap(phi.arg, _LEVEL_TERM)}"
    if isinstance(phi, Dia):
        head = "<>" if phi.label == DEFAULT_LABEL else f"<{phi.label}>"
        return head + _wrap(phi.arg, _LEVEL_TERM)
    if isinstance(phi, Add):
        left = _wrap(phi.left, _LEVEL_SUM)
        return f"{left} + {_wrap(phi.right, _LEVEL_TERM)}"
    if isinstance(phi, Ominus):
        return f"{_wrap(phi.arg, _LEVEL_TERM)} (-) {format_rational(phi.r)}"
    op = _LATTICE_OPS.get(type(phi))
    if op is None:
        raise TypeError(f"not a formula: {phi!r}")
    left = to_text(phi.left) if type(phi.left) is type(phi) else _wrap(phi.left, _LEVEL_TERM)
    return f"{left} {op} {_wrap(phi.right, _LEVEL_TERM)}"


# ---------------------------------------------------------------------------
# Parsing


class FormulaSyntaxError(ValueError):
    """Raised on malformed formula text."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at line {line}, column {column}{detail}")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ext>\(\+\)|\(\.\)|\(-\))
  | (?P<decimal>\d+\.\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>/\\|\\/|<>|:=|[-+*/|()<>\[\],{}=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        assert kind is not None
        if kind == "ws":
            chunk = m.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rfind("\n") + 1
        else:
            if kind == "decimal" and m.end() < len(text) and text[m.end()] == ".":
                raise FormulaSyntaxError("malformed rational literal", line, pos - line_start + 1)
            tokens.append(Token(kind if kind in ("decimal", "int", "ident", "ext") else m.group(),
                                m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class Parser:
    """Recursive-descent parser over a token list.

    ``variables`` enables bare identifiers as ``Var`` leaves (used for
    equations); ``extended`` enables the Lukasiewicz/Panangaden connectives.
    """

    def __init__(self, tokens: list[Token], *, variables: bool = False, extended: bool = False):
        self.tokens = tokens
        self.i = 0
        self.variables = variables
        self.extended = extended

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, expected: tuple[str, ...] = ()) -> FormulaSyntaxError:
        tok = self.tok
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return FormulaSyntaxError(f"{message}, found {found}", tok.line, tok.column, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.error("unexpected token", (repr(kind),))
        return self.advance()

    # formula := meetjoin
    def formula(self) -> Formula:
        left = self.sum()
        op_kind: Optional[str] = None
        while True:
            tok = self.tok
            kind = tok.kind if tok.kind in ("/\\", "\\/") else (tok.text if tok.kind == "ext" else None)
            if kind is None:
                return left
            if kind in ("(+)", "(.)", "(-)") and not self.extended:
                raise self.error("extended connective not allowed here (use translate)")
            if op_kind is not None and kind != op_kind:
                raise self.error("cannot mix lattice operators without parentheses", (repr(op_kind),))
            op_kind = kind
            self.advance()
            if kind == "(-)":
                q = self.signed_rational()
                if not 0 <= q <= 1:
                    raise FormulaSyntaxError(
                        f"truncated subtraction constant {format_rational(q)} outside [0,1]",
                        tok.line, tok.column)
                left = Ominus(left, q)
                continue
            right = self.sum()
            left = {"/\\": Meet, "\\/": Join, "(+)": Oplus, "(.)": Odot}[kind](left, right)

    def sum(self) -> Formula:
        left = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            left = Add(left, right) if op == "+" else Add(left, Scale(Fraction(-1), right))
        return left

    def term(self) -> Formula:
        tok = self.tok
        if tok.kind in ("int", "decimal"):
            start = self.i
            q = self.rational()
            if self.tok.kind == "*":
                self.advance()
                return Scale(q, self.term())
            bare = self.i - start == 1
            if bare and tok.text == "0":
                return ZERO
            if bare and tok.text == "1":
                return ONE
            return Scale(q, ONE)
        if tok.kind == "-":
            self.advance()
            return Scale(Fraction(-1), self.term())
        if tok.kind == "<>":
            self.advance()
            return Dia(self.term(), DEFAULT_LABEL)
        if tok.kind == "<":
            self.advance()
            label = self.expect("ident").text
            self.expect(">")
            return Dia(self.term(), label)
        if tok.kind == "|":
            self.advance()
            inner = self.formula()
            self.expect("|")
            return abs_(inner)
        if tok.kind == "(":
            coeff = self.try_paren_coefficient()
            if coeff is not None:
                return Scale(coeff, self.term())
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            if not self.variables:
                raise self.error("unknown identifier (irrational or symbolic constants are not supported)")
            self.advance()
            return Var(tok.text)
        raise self.error("expected a term", ("0", "1", "rational", "-", "<>", "<label>", "|", "("))

    def try_paren_coefficient(self) -> Optional[Fraction]:
        """Recognize ``( [-] rational ) *`` without consuming anything else."""
        toks = self.tokens

        def kind(idx: int) -> str:
            return toks[idx].kind if idx < len(toks) else "EOF"

        j = self.i + 1
        negative = kind(j) == "-"
        if negative:
            j += 1
        if kind(j) not in ("int", "decimal"):
            return None
        k = j + 1
        if kind(j) == "int" and kind(k) == "/":
            k += 2
        if kind(k) != ")" or kind(k + 1) != "*":
            return None
        self.i = j
        q = self.rational()
        self.i = k + 2
        return -q if negative else q

    def rational(self) -> Fraction:
        tok = self.advance()
        if tok.kind == "decimal":
            return Fraction(tok.text)
        if tok.kind != "int":
            self.i -= 1
            raise self.error("expected a rational literal")
        if self.tok.kind == "/" and self.peek().kind == "int":
            self.advance()
            den_tok = self.advance()
            den = int(den_tok.text)
            if den == 0:
                raise FormulaSyntaxError("malformed rational literal (zero denominator)",
                                         den_tok.line, den_tok.column)
            return Fraction(int(tok.text), den)
        if self.tok.kind == "/":
            raise self.error("malformed rational literal", ("positive integer",))
        return Fraction(int(tok.text))

    def signed_rational(self) -> Fraction:
        if self.tok.kind == "(":
            self.advance()
            q = self.signed_rational()
            self.expect(")")
            return q
        if self.tok.kind == "-":
            self.advance()
            return -self.rational()
        return self.rational()

    def finish(self) -> None:
        if self.tok.kind != "EOF":
            raise self.error("unexpected trailing input", ("end of input",))


def parse(text: str, *, variables: bool = False, extended: bool = False) -> Formula:
    """Parse formula text into a tree.

    Raises :class:`FormulaSyntaxError` with line/column information.
    """
    parser = Parser(tokenize(text), variables=variables, extended=extended)
    phi = parser.formula()
    parser.finish()
    return phi


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer, or a decimal, optionally signed."""
    parser = Parser(tokenize(text.strip()))
    q = parser.signed_rational()
    parser.finish()
    return q
