"""Derivations and their checker.

File format (one item per line, ``#`` starts a comment)::

    vars x, y
    goal <lhs> = <rhs>                      (optional)
    step <n>: <lhs> = <rhs> by <justification>

Justifications:

    axiom <id> [x := <formula>, ...] {r1 := <rational>, label := <name>}
    refl
    symm <k>
    trans <k>, <m>
    cong <scale|add|join|meet|dia> <k>[, <m>]     (a child may be ``refl``)
    subst <k> [x := <formula>, ...]
    riesz

Both bracket groups of ``axiom`` are optional; axiom variables not mentioned
in the substitution stand for themselves.  ``riesz`` accepts any identity
that holds in the unital Riesz space of the reals when modal subterms and
variables are read as free atoms; such identities are exactly the ones
derivable from the Riesz space axioms and ``0 <= 1``, so the rule is a
shortcut for equational reasoning, not an extension of it.

The infinitary Archimedean rule has no finite proof object and is not
available; conclusions that need it are out of reach of this checker.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from ..formula import (LABEL_RE, Add, Dia, Formula, FormulaSyntaxError, Join, Meet, Scale, Var,
                       parse, parse_rational, substitute, to_text)
from .axioms import Equation, SideConditionError, lookup
from .riesz import riesz_identity

# Error kinds
UNKNOWN_AXIOM = "UNKNOWN_AXIOM"
MISMATCH = "MISMATCH"
FORWARD_REFERENCE = "FORWARD_REFERENCE"
SIDE_CONDITION = "SIDE_CONDITION"
UNDECLARED_VARIABLE = "UNDECLARED_VARIABLE"
SYNTAX = "SYNTAX"
MALFORMED = "MALFORMED"
INVALID_RIESZ = "INVALID_RIESZ"


class ProofError(Exception):
    def __init__(self, kind: str, message: str, step: Optional[int] = None, line: Optional[int] = None,
                 path: Optional[str] = None, expected: Optional[str] = None, found: Optional[str] = None):
        self.kind = kind
        self.message = message
        self.step = step
        self.line = line
        self.path = path
        self.expected = expected
        self.found = found
        where = f"step {step}: " if step is not None else (f"line {line}: " if line is not None else "")
        super().__init__(f"{where}{kind}: {message}")

    def to_dict(self) -> dict:
        return {k: v for k, v in {
            "kind": self.kind, "message": self.message, "step": self.step, "line": self.line,
            "path": self.path, "expected": self.expected, "found": self.found}.items() if v is not None}


# ---------------------------------------------------------------------------
# Justifications


@dataclass(frozen=True)
class AxiomInstance:
    axiom_id: str
    subst: tuple[tuple[str, Formula], ...] = ()
    params: tuple[tuple[str, Union[Fraction, str]], ...] = ()


@dataclass(frozen=True)
class Reflexivity:
    pass


@dataclass(frozen=True)
class Symmetry:
    step: int


@dataclass(frozen=True)
class Transitivity:
    first: int
    second: int


@dataclass(frozen=True)
class Congruence:
    constructor: str
    children: tuple[Optional[int], ...]  # None means reflexivity for that child


@dataclass(frozen=True)
class Substitution:
    step: int
    subst: tuple[tuple[str, Formula], ...]


@dataclass(frozen=True)
class RieszIdentity:
    pass


Justification = Union[AxiomInstance, Reflexivity, Symmetry, Transitivity, Congruence, Substitution, RieszIdentity]


@dataclass(frozen=True)
class Step:
    number: int
    equation: Equation
    justification: Justification
    line: Optional[int] = None


@dataclass
class Derivation:
    variables: tuple[str, ...]
    steps: list[Step] = field(default_factory=list)
    goal: Optional[Equation] = None


# ---------------------------------------------------------------------------
# Parsing


_STEP_RE = re.compile(r"step\s+(\d+)\s*:\s*(.*)\Z")
_CONG_ARITY = {"scale": 1, "dia": 1, "add": 2, "join": 2, "meet": 2}


def _split_top(text: str, sep: str) -> list[str]:
    return [part.strip() for part in text.split(sep)] if text.strip() else []


class _Reader:
    def __init__(self, variables: tuple[str, ...], line: int, step: Optional[int]):
        self.variables = variables
        self.line = line
        self.step = step

    def error(self, kind: str, message: str) -> ProofError:
        return ProofError(kind, message, step=self.step, line=self.line)

    def formula(self, text: str) -> Formula:
        try:
            phi = parse(text, variables=True)
        except FormulaSyntaxError as exc:
            raise self.error(SYNTAX, f"{exc} in {text.strip()!r}") from None
        for node in _walk(phi):
            if isinstance(node, Var) and node.name not in self.variables:
                raise self.error(UNDECLARED_VARIABLE, f"variable {node.name!r} is not declared")
        return phi

    def equation(self, text: str) -> Equation:
        parts = text.split("=")
        if len(parts) != 2:
            raise self.error(SYNTAX, f"expected exactly one '=' in {text.strip()!r}")
        return Equation(self.formula(parts[0]), self.formula(parts[1]))

    def step_ref(self, text: str) -> int:
        if not text.isdigit():
            raise self.error(MALFORMED, f"expected a step number, found {text!r}")
        return int(text)

    def subst(self, body: str) -> tuple[tuple[str, Formula], ...]:
        out = []
        for item in _split_top(body, ","):
            name, sep, value = item.partition(":=")
            name = name.strip()
            if not sep or not LABEL_RE.match(name):
                raise self.error(MALFORMED, f"bad substitution entry {item!r}")
            out.append((name, self.formula(value)))
        return tuple(out)

    def params(self, body: str) -> tuple[tuple[str, Union[Fraction, str]], ...]:
        out: list[tuple[str, Union[Fraction, str]]] = []
        for item in _split_top(body, ","):
            name, sep, value = item.partition(":=")
            name, value = name.strip(), value.strip()
            if not sep:
                raise self.error(MALFORMED, f"bad parameter entry {item!r}")
            if name == "label":
                out.append((name, value))
                continue
            try:
                out.append((name, parse_rational(value)))
            except FormulaSyntaxError as exc:
                raise self.error(SYNTAX, f"bad scalar {value!r}: {exc}") from None
        return tuple(out)

    def justification(self, text: str) -> Justification:
        text = text.strip()
        head, _, rest = text.partition(" ")
        rest = rest.strip()
        if head == "refl" and not rest:
            return Reflexivity()
        if head == "riesz" and not rest:
            return RieszIdentity()
        if head == "symm":
            return Symmetry(self.step_ref(rest))
        if head == "trans":
            refs = _split_top(rest, ",")
            if len(refs) != 2:
                raise self.error(MALFORMED, "trans needs two step numbers")
            return Transitivity(self.step_ref(refs[0]), self.step_ref(refs[1]))
        if head == "cong":
            ctor, _, args = rest.partition(" ")
            if ctor not in _CONG_ARITY:
                raise self.error(MALFORMED, f"unknown constructor {ctor!r} for cong")
            refs = _split_top(args, ",")
            if len(refs) != _CONG_ARITY[ctor]:
                raise self.error(MALFORMED, f"cong {ctor} needs {_CONG_ARITY[ctor]} child justification(s)")
            return Congruence(ctor, tuple(None if r == "refl" else self.step_ref(r) for r in refs))
        if head == "subst":
            m = re.match(r"(\S+)\s*\[(.*)\]\Z", rest)
            if not m:
                raise self.error(MALFORMED, "subst needs a step number and a [x := ...] substitution")
            return Substitution(self.step_ref(m.group(1)), self.subst(m.group(2)))
        if head == "axiom":
            m = re.match(r"([A-Za-z0-9_-]+)\s*(?:\[(.*?)\])?\s*(?:\{(.*?)\})?\s*\Z", rest)
            if not m:
                raise self.error(MALFORMED, f"cannot read axiom justification {rest!r}")
            axiom_id, sub, params = m.groups()
            # variables of an axiom are free names, not declarations of the derivation
            return AxiomInstance(axiom_id, self.subst(sub or ""), self.params(params or ""))
        raise self.error(MALFORMED, f"unknown justification {text!r}")


def _walk(phi: Formula):
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children())


def parse_derivation(text: str) -> Derivation:
    variables: Optional[tuple[str, ...]] = None
    d = Derivation(())
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars"):
            if variables is not None:
                raise ProofError(MALFORMED, "duplicate vars declaration", line=lineno)
            names = _split_top(line[4:], ",")
            for name in names:
                if not LABEL_RE.match(name) or name == "by":
                    raise ProofError(MALFORMED, f"invalid variable name {name!r}", line=lineno)
            variables = tuple(names)
            d.variables = variables
            continue
        if variables is None:
            variables = ()
        if line.startswith("goal "):
            d.goal = _Reader(variables, lineno, None).equation(line[5:])
            continue
        m = _STEP_RE.match(line)
        if not m:
            raise ProofError(SYNTAX, f"expected 'vars', 'goal' or 'step', found {line!r}", line=lineno)
        number = int(m.group(1))
        body = m.group(2)
        eq_text, sep, just_text = body.rpartition(" by ")
        reader = _Reader(variables, lineno, number)
        if not sep:
            raise reader.error(SYNTAX, "missing ' by <justification>'")
        d.steps.append(Step(number, reader.equation(eq_text), reader.justification(just_text), lineno))
    return d


def load_derivation(path: Union[str, Path]) -> Derivation:
    return parse_derivation(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# Checking


def first_difference(expected: Formula, found: Formula, path: str = "") -> Optional[tuple[str, Formula, Formula]]:
    """Path (dot-separated child indices) of the first differing subterm."""
    if expected == found:
        return None
    if type(expected) is not type(found) or len(expected.children()) != len(found.children()):
        return path or "root", expected, found
    if isinstance(expected, Scale) and expected.r != found.r:
        return path or "root", expected, found
    if isinstance(expected, Dia) and expected.label != found.label:
        return path or "root", expected, found
    if isinstance(expected, Var):
        return path or "root", expected, found
    for i, (a, b) in enumerate(zip(expected.children(), found.children())):
        hit = first_difference(a, b, f"{path}.{i}" if path else str(i))
        if hit:
            return hit
    return path or "root", expected, found  # pragma: no cover


def _expect(step: Step, expected: Equation, what: str) -> None:
    for side in ("lhs", "rhs"):
        hit = first_difference(getattr(expected, side), getattr(step.equation, side))
        if hit:
            path, exp, got = hit
            full = side if path == "root" else f"{side}.{path}"
            raise ProofError(MISMATCH, f"{what}: at {full} expected {to_text(exp)} but found {to_text(got)}",
                             step=step.number, line=step.line, path=full,
                             expected=to_text(exp), found=to_text(got))


def _expect_equal(step: Step, a: Formula, b: Formula, what: str, path: str) -> None:
    hit = first_difference(a, b)
    if hit:
        sub, exp, got = hit
        full = path if sub == "root" else f"{path}.{sub}"
        raise ProofError(MISMATCH, f"{what}: at {full} expected {to_text(exp)} but found {to_text(got)}",
                         step=step.number, line=step.line, path=full, expected=to_text(exp), found=to_text(got))


_CTOR = {"scale": Scale, "dia": Dia, "add": Add, "join": Join, "meet": Meet}


def check(d: Derivation) -> Equation:
    """Validate every step; return the proven equation or raise :class:`ProofError`."""
    proven: dict[int, Equation] = {}
    last: Optional[Equation] = None
    for step in d.steps:
        n = step.number
        if n in proven:
            raise ProofError(MALFORMED, f"step number {n} used twice", step=n, line=step.line)

        def ref(k: int) -> Equation:
            if k not in proven:
                if k >= n:
                    raise ProofError(FORWARD_REFERENCE, f"step {k} is not an earlier step", step=n, line=step.line)
                raise ProofError(MALFORMED, f"there is no step {k}", step=n, line=step.line)
            return proven[k]

        j = step.justification
        eq = step.equation
        if isinstance(j, Reflexivity):
            _expect_equal(step, eq.lhs, eq.rhs, "reflexivity needs identical sides", "rhs")
        elif isinstance(j, Symmetry):
            src = ref(j.step)
            _expect(step, Equation(src.rhs, src.lhs), f"symmetry of step {j.step}")
        elif isinstance(j, Transitivity):
            a, b = ref(j.first), ref(j.second)
            _expect_equal(step, a.rhs, b.lhs, f"steps {j.first} and {j.second} do not chain", f"step{j.second}.lhs")
            _expect(step, Equation(a.lhs, b.rhs), f"transitivity of steps {j.first}, {j.second}")
        elif isinstance(j, Congruence):
            ctor = _CTOR[j.constructor]
            for side in ("lhs", "rhs"):
                node = getattr(eq, side)
                if not isinstance(node, ctor):
                    raise ProofError(MISMATCH, f"cong {j.constructor}: {side} is not a {j.constructor} term",
                                     step=n, line=step.line, path=side, found=to_text(node))
            if ctor is Scale and eq.lhs.r != eq.rhs.r:
                raise ProofError(MISMATCH, "cong scale needs the same coefficient on both sides", step=n,
                                 line=step.line, path="rhs", expected=str(eq.lhs.r), found=str(eq.rhs.r))
            if ctor is Dia and eq.lhs.label != eq.rhs.label:
                raise ProofError(MISMATCH, "cong dia needs the same label on both sides", step=n,
                                 line=step.line, path="rhs", expected=eq.lhs.label, found=eq.rhs.label)
            kids_l = eq.lhs.children() if ctor not in (Scale, Dia) else (eq.lhs.arg,)
            kids_r = eq.rhs.children() if ctor not in (Scale, Dia) else (eq.rhs.arg,)
            for i, (child, a, b) in enumerate(zip(j.children, kids_l, kids_r)):
                if child is None:
                    _expect_equal(step, a, b, f"child {i} must be identical for refl", f"rhs.{i}")
                else:
                    src = ref(child)
                    _expect_equal(step, src.lhs, a, f"child {i} must match step {child}", f"lhs.{i}")
                    _expect_equal(step, src.rhs, b, f"child {i} must match step {child}", f"rhs.{i}")
        elif isinstance(j, Substitution):
            src = ref(j.step)
            mapping = dict(j.subst)
            unknown = set(mapping) - set(d.variables)
            if unknown:
                raise ProofError(MALFORMED, f"substitution for undeclared variable(s) {sorted(unknown)}",
                                 step=n, line=step.line)
            _expect(step, Equation(substitute(src.lhs, mapping), substitute(src.rhs, mapping)),
                    f"substitution instance of step {j.step}")
        elif isinstance(j, AxiomInstance):
            try:
                axiom = lookup(j.axiom_id)
            except KeyError:
                raise ProofError(UNKNOWN_AXIOM, f"unknown axiom {j.axiom_id!r}", step=n, line=step.line) from None
            try:
                inst = axiom.instance(dict(j.params))
            except SideConditionError as exc:
                raise ProofError(SIDE_CONDITION, str(exc), step=n, line=step.line) from None
            except KeyError as exc:
                raise ProofError(MALFORMED, exc.args[0], step=n, line=step.line) from None
            mapping = dict(j.subst)
            axiom_vars = {v.name for side in (inst.lhs, inst.rhs) for v in _walk(side) if isinstance(v, Var)}
            unknown = set(mapping) - axiom_vars
            if unknown:
                raise ProofError(MALFORMED, f"axiom {axiom.id} has no variable(s) {sorted(unknown)}",
                                 step=n, line=step.line)
            _expect(step, Equation(substitute(inst.lhs, mapping), substitute(inst.rhs, mapping)),
                    f"instance of axiom {axiom.id}")
        elif isinstance(j, RieszIdentity):
            if not riesz_identity(eq.lhs, eq.rhs):
                raise ProofError(INVALID_RIESZ, f"{eq} is not a Riesz space identity", step=n, line=step.line)
        else:  # pragma: no cover
            raise ProofError(MALFORMED, f"unsupported justification {j!r}", step=n, line=step.line)
        proven[n] = eq
        last = eq
    if d.goal is not None:
        if last is None:
            if d.goal.lhs != d.goal.rhs:
                raise ProofError(MISMATCH, "empty derivation proves only reflexive goals", path="goal")
            return d.goal
        if last != d.goal:
            raise ProofError(MISMATCH, f"last step proves {last}, not the goal {d.goal}", step=d.steps[-1].number)
        return d.goal
    if last is None:
        raise ProofError(MALFORMED, "derivation has no steps and no goal")
    return last


def check_text(text: str) -> Equation:
    return check(parse_derivation(text))
