"""Seeded random generators for models and formulas, plus the bundled example models."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from .formula import DEFAULT_LABEL, ONE, ZERO, Add, Dia, Formula, Join, Meet, Scale, Var
from .markov import MarkovProcess, from_dict

MASS_LEVELS = tuple(Fraction(k, 4) for k in range(5))
SCALARS = (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(1, 3), Fraction(1, 2),
           Fraction(2), Fraction(3, 4), Fraction(-3, 5))


def bundled_model(name: str) -> MarkovProcess:
    """One of the shipped example models: ``looping``, ``branching`` or ``chain4``."""
    text = resources.files("rieszmodal").joinpath("data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return from_dict(json.loads(text))


EXAMPLE_MODELS = ("branching", "looping", "chain4")


def example_models() -> list[tuple[str, MarkovProcess]]:
    """The bundled example models, by name, in the order samplers try them."""
    return [(name, bundled_model(name)) for name in EXAMPLE_MODELS]


def random_distribution(rng: random.Random, states: Sequence[str]) -> tuple[tuple[str, Fraction], ...]:
    total = rng.choice(MASS_LEVELS)
    if total == 0:
        return ()
    k = rng.randint(1, len(states))
    targets = rng.sample(list(states), k)
    weights = [rng.randint(1, 64) for _ in targets]
    norm = sum(weights)
    return tuple((t, total * Fraction(w, norm)) for t, w in zip(targets, weights))


def random_model(rng: random.Random, max_states: int = 6, labels: Optional[Sequence[str]] = None,
                 n_states: Optional[int] = None) -> MarkovProcess:
    """A random finite process; state count uniform in ``1..max_states``."""
    n = n_states if n_states is not None else rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    if labels is None:
        labels = (DEFAULT_LABEL, "a")[: rng.randint(1, 2)]
    trans = {}
    for label in labels:
        for s in states:
            dist = random_distribution(rng, states)
            if dist:
                trans[(label, s)] = dist
    return MarkovProcess(states, tuple(labels), trans)


def random_formula(rng: random.Random, depth: int = 4, labels: Sequence[str] = (DEFAULT_LABEL,),
                   variables: Sequence[str] = (), scalars: Sequence[Fraction] = SCALARS,
                   leaf_prob: float = 0.2) -> Formula:
    """A random core formula of tree depth at most ``depth``."""
    if depth <= 0 or rng.random() < leaf_prob:
        leaves: list[Formula] = [ZERO, ONE, ONE]
        leaves += [Var(v) for v in variables] * 2
        return rng.choice(leaves)
    kind = rng.choice(("scale", "add", "join", "meet", "dia", "dia"))
    sub = lambda: random_formula(rng, depth - 1, labels, variables, scalars, leaf_prob)  # noqa: E731
    if kind == "scale":
        return Scale(rng.choice(scalars), sub())
    if kind == "dia":
        return Dia(sub(), rng.choice(list(labels)))
    cls = {"add": Add, "join": Join, "meet": Meet}[kind]
    return cls(sub(), sub())


def random_unit_formula(rng: random.Random, depth: int = 3, labels: Sequence[str] = (DEFAULT_LABEL,)) -> Formula:
    """A random formula whose value lies in [0, 1] on every model."""
    phi = random_formula(rng, depth, labels)
    guarded = Dia(phi, rng.choice(list(labels))) if rng.random() < 0.7 else phi
    return Meet(Join(guarded, ZERO), ONE)
