"""Finite labelled subprobabilistic Markov processes.

A process assigns to every (label, state) pair a subprobability distribution
over the states.  Missing pairs denote the null measure.  Model files are JSON
with probabilities written as exact ``"p/q"`` strings::

    {"states": ["x1", "x2"],
     "labels": ["tau"],
     "transitions": {"tau": {"x1": {"x1": "1/3", "x2": "1/2"},
                             "x2": {"x1": "1/3"}}}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from .formula import DEFAULT_LABEL, LABEL_RE, FormulaSyntaxError, format_rational, parse_rational

Distribution = tuple[tuple[str, Fraction], ...]


class ModelError(ValueError):
    """A model document or object violates the process invariants."""


class NotBisimulationError(ModelError):
    """Raised by :func:`quotient` when the partition is not stable."""

    def __init__(self, message: str, witness: tuple[str, str], label: str):
        super().__init__(message)
        self.witness = witness
        self.label = label


@dataclass(frozen=True)
class MarkovProcess:
    states: tuple[str, ...]
    labels: tuple[str, ...]
    trans: Mapping[tuple[str, str], Distribution] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "labels", tuple(self.labels))
        trans = {}
        for key, dist in self.trans.items():
            normalized = tuple((t, Fraction(p)) for t, p in dist if Fraction(p) != 0)
            if normalized:
                trans[key] = normalized
        object.__setattr__(self, "trans", trans)
        self.validate()

    def validate(self) -> None:
        if len(set(self.states)) != len(self.states):
            raise ModelError("duplicate state ids")
        if not self.states:
            raise ModelError("a process needs at least one state")
        if len(set(self.labels)) != len(self.labels):
            raise ModelError("duplicate labels")
        for label in self.labels:
            if not LABEL_RE.match(label):
                raise ModelError(f"invalid label {label!r}")
        known = set(self.states)
        for (label, state), dist in self.trans.items():
            if label not in self.labels:
                raise ModelError(f"transition uses undeclared label {label!r}")
            if state not in known:
                raise ModelError(f"transition from undeclared state {state!r}")
            seen = set()
            total = Fraction(0)
            for target, p in dist:
                if target not in known:
                    raise ModelError(f"state {state!r} (label {label!r}) targets undeclared state {target!r}")
                if target in seen:
                    raise ModelError(f"state {state!r} (label {label!r}) lists target {target!r} twice")
                seen.add(target)
                if not 0 <= p <= 1:
                    raise ModelError(
                        f"probability {format_rational(p)} of {state!r} -> {target!r} (label {label!r}) outside [0,1]")
                total += p
            if total > 1:
                raise ModelError(
                    f"state {state!r} (label {label!r}) has total mass {format_rational(total)}, "
                    f"exceeding 1 by {format_rational(total - 1)}")

    def dist(self, label: str, state: str) -> Distribution:
        """The ``label``-distribution at ``state`` (empty means null measure)."""
        return self.trans.get((label, state), ())

    def mass(self, label: str, state: str, targets: Iterable[str] | None = None) -> Fraction:
        dist = self.dist(label, state)
        if targets is None:
            return sum((p for _, p in dist), Fraction(0))
        chosen = set(targets)
        return sum((p for t, p in dist if t in chosen), Fraction(0))

    def to_dict(self) -> dict:
        transitions: dict = {}
        for label in self.labels:
            rows = {}
            for state in self.states:
                dist = self.dist(label, state)
                if dist:
                    rows[state] = {t: format_rational(p) for t, p in dist}
            transitions[label] = rows
        return {"states": list(self.states), "labels": list(self.labels), "transitions": transitions}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def from_dict(doc: object) -> MarkovProcess:
    """Build a validated process from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    unknown = set(doc) - {"states", "labels", "transitions"}
    if unknown:
        raise ModelError(f"unknown top-level keys: {sorted(unknown)}")
    states = doc.get("states")
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise ModelError("'states' must be a list of strings")
    labels = doc.get("labels", [DEFAULT_LABEL])
    if not isinstance(labels, list) or not all(isinstance(lab, str) for lab in labels):
        raise ModelError("'labels' must be a list of strings")
    transitions = doc.get("transitions", {})
    if not isinstance(transitions, dict):
        raise ModelError("'transitions' must be an object")
    trans: dict[tuple[str, str], Distribution] = {}
    for label, rows in transitions.items():
        if label not in labels:
            raise ModelError(f"transitions use undeclared label {label!r}")
        if not isinstance(rows, dict):
            raise ModelError(f"transitions[{label!r}] must be an object")
        for state, row in rows.items():
            if state not in states:
                raise ModelError(f"transition from undeclared state {state!r}")
            if not isinstance(row, dict):
                raise ModelError(f"transitions[{label!r}][{state!r}] must be an object")
            dist = []
            for target, text in row.items():
                if not isinstance(text, str):
                    raise ModelError(
                        f"probability of {state!r} -> {target!r} must be a string such as \"1/3\"")
                try:
                    p = parse_rational(text)
                except FormulaSyntaxError as exc:
                    raise ModelError(f"bad probability {text!r} for {state!r} -> {target!r}: {exc}") from None
                dist.append((target, p))
            trans[(label, state)] = tuple(dist)
    return MarkovProcess(tuple(states), tuple(labels), trans)


def loads(text: str) -> MarkovProcess:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON: {exc}") from None
    return from_dict(doc)


def load(path: Union[str, Path]) -> MarkovProcess:
    """Read and validate a model file.  I/O errors propagate as ``OSError``."""
    return loads(Path(path).read_text(encoding="utf-8"))


def build(states: Sequence[str], edges: Mapping[str, Mapping[str, Union[str, int, Fraction]]],
          label: str = DEFAULT_LABEL) -> MarkovProcess:
    """Shorthand for single-label processes: ``build(["a"], {"a": {"a": "1/2"}})``."""
    trans = {
        (label, s): tuple((t, Fraction(p) if not isinstance(p, str) else parse_rational(p))
                          for t, p in row.items())
        for s, row in edges.items()
    }
    return MarkovProcess(tuple(states), (label,), trans)


# ---------------------------------------------------------------------------
# Partitions and quotients


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(frozenset(b) for b in self.blocks))
        seen: set[str] = set()
        for block in self.blocks:
            if not block:
                raise ModelError("partition blocks must be nonempty")
            if seen & block:
                raise ModelError("partition blocks overlap")
            seen |= block

    def block_of(self, state: str) -> frozenset[str]:
        for block in self.blocks:
            if state in block:
                return block
        raise KeyError(state)

    def index(self) -> dict[str, int]:
        return {s: i for i, b in enumerate(self.blocks) for s in b}

    def ordered(self, states: Sequence[str]) -> list[list[str]]:
        """Blocks as lists in declared state order, blocks ordered by first member."""
        idx = self.index()
        out: dict[int, list[str]] = {}
        for s in states:
            out.setdefault(idx[s], []).append(s)
        return list(out.values())

    def canonical(self, states: Sequence[str]) -> "Partition":
        return Partition(tuple(frozenset(b) for b in self.ordered(states)))

    def same(self, other: "Partition") -> bool:
        return set(self.blocks) == set(other.blocks)


def check_partition(process: MarkovProcess, partition: Partition) -> None:
    covered = set().union(*partition.blocks) if partition.blocks else set()
    if covered != set(process.states):
        raise ModelError("partition does not cover exactly the process states")


def unstable_witness(process: MarkovProcess, partition: Partition):
    """First (x, y, label, block) with x ~ y in ``partition`` but unequal block mass, else None."""
    ordered = partition.ordered(process.states)
    for label in process.labels:
        for block in ordered:
            rep = block[0]
            for other in block[1:]:
                for target in ordered:
                    if process.mass(label, rep, target) != process.mass(label, other, target):
                        return rep, other, label, target
    return None


def quotient(process: MarkovProcess, partition: Partition) -> tuple[MarkovProcess, dict[str, str]]:
    """Collapse each block of a bisimulation partition to its first member.

    Returns the quotient process and the projection map.  The projection is a
    coalgebra morphism; this is re-checked exactly before returning.
    """
    check_partition(process, partition)
    witness = unstable_witness(process, partition)
    if witness is not None:
        x, y, label, target = witness
        raise NotBisimulationError(
            f"partition is not a bisimulation: {x!r} and {y!r} give different {label!r}-mass "
            f"to block {{{', '.join(target)}}}", (x, y), label)
    ordered = partition.ordered(process.states)
    projection = {s: block[0] for block in ordered for s in block}
    names = tuple(block[0] for block in ordered)
    trans = {}
    for label in process.labels:
        for block in ordered:
            rep = block[0]
            row = []
            for target in ordered:
                p = process.mass(label, rep, target)
                if p:
                    row.append((target[0], p))
            trans[(label, rep)] = tuple(row)
    quotiented = MarkovProcess(names, process.labels, trans)
    assert is_morphism(process, quotiented, projection)
    return quotiented, projection


def is_morphism(source: MarkovProcess, target: MarkovProcess, f: Mapping[str, str]) -> bool:
    """Check ``target(f(x)) == f_*(source(x))`` for every state and label."""
    for label in set(source.labels) | set(target.labels):
        for x in source.states:
            pushed: dict[str, Fraction] = {}
            for y, p in source.dist(label, x):
                pushed[f[y]] = pushed.get(f[y], Fraction(0)) + p
            image = {t: p for t, p in target.dist(label, f[x])}
            if {k: v for k, v in pushed.items() if v} != image:
                return False
    return True
