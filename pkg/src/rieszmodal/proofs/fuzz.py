"""Randomized soundness testing of equations over finite and symbolic models."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..equivalence import symbolic_witness, unit_interval_state
from ..formula import DEFAULT_LABEL, ONE, Dia, Formula, Var, labels_of, substitute, to_text
from ..markov import MarkovProcess
from ..sampling import example_models, random_formula, random_model
from ..semantics import Evaluator
from ..sympoly import eval_pointwise
from .axioms import Equation


@dataclass(frozen=True)
class Countermodel:
    process: MarkovProcess
    state: str
    instantiation: dict[str, Formula]
    left: Fraction
    right: Fraction
    trial: int
    source: str

    def describe(self) -> str:
        inst = ", ".join(f"{v} := {to_text(f)}" for v, f in self.instantiation.items())
        return (f"trial {self.trial} ({self.source}): [{inst}] at state {self.state}: "
                f"{self.left} vs {self.right}")


@dataclass(frozen=True)
class FuzzResult:
    passed: bool
    trials: int
    countermodel: Optional[Countermodel] = None
    symbolic_checks: int = field(default=0)


def _variables(eq: Equation) -> list[str]:
    names: list[str] = []
    for side in (eq.lhs, eq.rhs):
        stack = [side]
        while stack:
            node = stack.pop()
            if isinstance(node, Var) and node.name not in names:
                names.append(node.name)
            stack.extend(node.children())
    return sorted(names)


def _check_finite(lhs: Formula, rhs: Formula, model: MarkovProcess):
    ev = Evaluator(model)
    for state, a, b in zip(model.states, ev.vector(lhs), ev.vector(rhs)):
        if a != b:
            return state, a, b
    return None


def soundness_fuzz(eq: Equation, trials: int = 200, seed: int = 0, max_states: int = 8,
                   depth: int = 3) -> FuzzResult:
    """Instantiate the variables of ``eq`` with random closed formulas and compare both sides.

    Trial 0 uses ``x := <>1, y := 1 - <>1`` (further variables ``<>1``) on the
    example models.  Every trial then checks a random instantiation on a random
    finite model with up to two labels and, when ``eq`` only mentions the
    default modality, a second instantiation on the unit-interval model.
    """
    names = _variables(eq)
    eq_labels = labels_of(eq.lhs) | labels_of(eq.rhs)
    labels = sorted(eq_labels | {DEFAULT_LABEL})
    if len(labels) < 2:
        labels.append("a" if DEFAULT_LABEL in labels else DEFAULT_LABEL)
    symbolic_ok = eq_labels <= {DEFAULT_LABEL}
    rng = random.Random(seed)
    symbolic = 0

    seeded_values = [Dia(ONE), ONE - Dia(ONE)]
    seeded = {v: seeded_values[i] if i < 2 else Dia(ONE) for i, v in enumerate(names)}
    lhs, rhs = substitute(eq.lhs, seeded), substitute(eq.rhs, seeded)
    for name, model in example_models():
        hit = _check_finite(lhs, rhs, model)
        if hit:
            return FuzzResult(False, 0, Countermodel(model, hit[0], seeded, hit[1], hit[2], 0,
                                                     f"example model {name}"))

    for trial in range(trials):
        inst = {v: random_formula(rng, depth, labels) for v in names}
        lhs, rhs = substitute(eq.lhs, inst), substitute(eq.rhs, inst)
        model = random_model(rng, max_states, labels)
        hit = _check_finite(lhs, rhs, model)
        if hit:
            return FuzzResult(False, trial + 1, Countermodel(model, hit[0], inst, hit[1], hit[2], trial,
                                                             "random model"), symbolic)
        if symbolic_ok:
            symbolic += 1
            inst = {v: random_formula(rng, depth) for v in names}
            lhs, rhs = substitute(eq.lhs, inst), substitute(eq.rhs, inst)
            x0 = symbolic_witness(lhs, rhs)
            if x0 is not None:
                return FuzzResult(False, trial + 1, Countermodel(
                    unit_interval_state(x0), "x", inst, eval_pointwise(lhs, x0), eval_pointwise(rhs, x0),
                    trial, "unit-interval model"), symbolic)
    return FuzzResult(True, trials, None, symbolic)
