"""Rewrite Lukasiewicz-style connectives into core Riesz modal logic.

    phi (+) psi  =  1 /\\ (phi + psi)
    phi (.) psi  =  0 \\/ (phi + psi - 1)
    phi (-) r    =  0 \\/ (phi - r*1)        with r in [0, 1]
"""

from __future__ import annotations

from fractions import Fraction

from .formula import ONE, ZERO, Add, Dia, Formula, Join, Meet, Odot, Ominus, One, Oplus, Scale, Var, Zero


class TranslationError(ValueError):
    pass


def expand(phi: Formula) -> Formula:
    """Replace every extended connective by its defining core formula."""
    if isinstance(phi, (Zero, One, Var)):
        return phi
    if isinstance(phi, Scale):
        return Scale(phi.r, expand(phi.arg))
    if isinstance(phi, Dia):
        return Dia(expand(phi.arg), phi.label)
    if isinstance(phi, Oplus):
        return Meet(ONE, Add(expand(phi.left), expand(phi.right)))
    if isinstance(phi, Odot):
        return Join(ZERO, Add(Add(expand(phi.left), expand(phi.right)), Scale(Fraction(-1), ONE)))
    if isinstance(phi, Ominus):
        if not 0 <= phi.r <= 1:
            raise TranslationError(f"truncated subtraction needs a constant in [0,1], got {phi.r}")
        return Join(ZERO, Add(expand(phi.arg), Scale(-phi.r, ONE)))
    return type(phi)(expand(phi.left), expand(phi.right))
