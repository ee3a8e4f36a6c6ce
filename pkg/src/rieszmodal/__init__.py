"""Riesz modal logic: formulas, finite Markov processes and exact semantics."""

__version__ = "0.1.0"

from .formula import (DEFAULT_LABEL, ONE, ZERO, Add, Dia, Formula, FormulaSyntaxError, Join, Meet, Odot, Ominus,
                      One, Oplus, Scale, Var, Zero, modal_depth, parse, to_text, unit_bound)
from .markov import MarkovProcess, ModelError, NotBisimulationError, Partition, load, loads, quotient
from .semantics import Valuation, eval_at, evaluate

__all__ = [
    "DEFAULT_LABEL", "ONE", "ZERO", "Add", "Dia", "Formula", "FormulaSyntaxError", "Join", "MarkovProcess",
    "Meet", "ModelError", "NotBisimulationError", "Odot", "Ominus", "One", "Oplus", "Partition", "Scale",
    "Valuation", "Var", "Zero", "eval_at", "evaluate", "load", "loads", "modal_depth", "parse", "quotient",
    "to_text", "unit_bound",
]
