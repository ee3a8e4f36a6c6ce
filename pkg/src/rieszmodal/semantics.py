"""Exact evaluation of formulas on finite Markov processes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .formula import Add, Dia, Formula, Join, Meet, One, Scale, Var, Zero, format_rational
from .markov import MarkovProcess


@dataclass(frozen=True)
class Valuation(Mapping[str, Fraction]):
    """The exact value of a formula at every state of one process."""

    states: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __getitem__(self, state: str) -> Fraction:
        try:
            return self.values[self.states.index(state)]
        except ValueError:
            raise KeyError(state) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def __le__(self, other: "Valuation") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def __ge__(self, other: "Valuation") -> bool:
        return other <= self

    def lines(self) -> list[str]:
        return [f"{s} = {format_rational(v)}" for s, v in zip(self.states, self.values)]


class Evaluator:
    """Evaluates formulas against one process, sharing work between subterms.

    The cache is keyed by node identity, so shared subtrees of one formula (or
    of several formulas evaluated through the same instance) are computed once.
    """

    def __init__(self, process: MarkovProcess):
        self.process = process
        self.index = {s: i for i, s in enumerate(process.states)}
        self._cache: dict[int, tuple[Formula, tuple[Fraction, ...]]] = {}
        # label -> per-state list of (target index, probability)
        self._rows: dict[str, list[list[tuple[int, Fraction]]]] = {}

    def rows(self, label: str) -> list[list[tuple[int, Fraction]]]:
        rows = self._rows.get(label)
        if rows is None:
            rows = [[(self.index[t], p) for t, p in self.process.dist(label, s)]
                    for s in self.process.states]
            self._rows[label] = rows
        return rows

    def vector(self, phi: Formula) -> tuple[Fraction, ...]:
        hit = self._cache.get(id(phi))
        if hit is not None and hit[0] is phi:
            return hit[1]
        n = len(self.process.states)
        if isinstance(phi, Zero):
            out = (Fraction(0),) * n
        elif isinstance(phi, One):
            out = (Fraction(1),) * n
        elif isinstance(phi, Scale):
            r = phi.r
            out = tuple(r * v for v in self.vector(phi.arg))
        elif isinstance(phi, Add):
            out = tuple(a + b for a, b in zip(self.vector(phi.left), self.vector(phi.right)))
        elif isinstance(phi, Join):
            out = tuple(max(a, b) for a, b in zip(self.vector(phi.left), self.vector(phi.right)))
        elif isinstance(phi, Meet):
            out = tuple(min(a, b) for a, b in zip(self.vector(phi.left), self.vector(phi.right)))
        elif isinstance(phi, Dia):
            inner = self.vector(phi.arg)
            out = tuple(sum((p * inner[j] for j, p in row), Fraction(0)) for row in self.rows(phi.label))
        elif isinstance(phi, Var):
            raise ValueError(f"cannot evaluate open formula (free variable {phi.name!r})")
        else:
            raise ValueError(f"cannot evaluate {type(phi).__name__}; expand extended connectives first")
        self._cache[id(phi)] = (phi, out)
        return out

    def __call__(self, phi: Formula) -> Valuation:
        return Valuation(self.process.states, self.vector(phi))


def evaluate(phi: Formula, process: MarkovProcess) -> Valuation:
    """``[[phi]]`` on ``process``.  Labels absent from the process act as the null measure."""
    return Evaluator(process)(phi)


def eval_at(phi: Formula, process: MarkovProcess, state: str) -> Fraction:
    if state not in process.states:
        raise KeyError(f"unknown state {state!r}")
    return evaluate(phi, process)[state]


def diamond(process: MarkovProcess, values: Mapping[str, Fraction], label: str = "tau") -> dict[str, Fraction]:
    """Apply the expectation operator of ``label`` to an arbitrary valuation."""
    return {
        s: sum((p * values[t] for t, p in process.dist(label, s)), Fraction(0))
        for s in process.states
    }
