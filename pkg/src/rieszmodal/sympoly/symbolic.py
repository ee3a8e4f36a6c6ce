"""Symbolic semantics on the unit-interval process ``alpha(x) = x * delta_x``.

On this process ``<>f`` is the function ``x -> x * f(x)``, so every formula
denotes a continuous piecewise polynomial on [0, 1].
"""

from __future__ import annotations

from fractions import Fraction

from ..formula import DEFAULT_LABEL, Add, Dia, Formula, Join, Meet, One, Scale, Zero
from .piecewise import PiecewisePoly, pp_join, pp_meet
from .poly import Coeff


class LabelError(ValueError):
    """The formula uses a modality other than the default label."""


def _check_label(phi: Dia) -> None:
    if phi.label != DEFAULT_LABEL:
        raise LabelError(f"the unit-interval model only has the default modality, found <{phi.label}>")


def eval_symbolic(phi: Formula) -> PiecewisePoly:
    """``[[phi]]`` on the unit-interval model as an exact piecewise polynomial."""
    cache: dict[int, tuple[Formula, PiecewisePoly]] = {}

    def go(node: Formula) -> PiecewisePoly:
        hit = cache.get(id(node))
        if hit is not None and hit[0] is node:
            return hit[1]
        if isinstance(node, Zero):
            out = PiecewisePoly.constant(0)
        elif isinstance(node, One):
            out = PiecewisePoly.constant(1)
        elif isinstance(node, Scale):
            out = go(node.arg).scale(node.r)
        elif isinstance(node, Add):
            out = go(node.left) + go(node.right)
        elif isinstance(node, Join):
            out = pp_join(go(node.left), go(node.right))
        elif isinstance(node, Meet):
            out = pp_meet(go(node.left), go(node.right))
        elif isinstance(node, Dia):
            _check_label(node)
            out = go(node.arg).times_x()
        else:
            raise ValueError(f"cannot evaluate {type(node).__name__} symbolically")
        cache[id(node)] = (node, out)
        return out

    return go(phi)


def eval_pointwise(phi: Formula, x0: Coeff) -> Fraction:
    """``[[phi]](x0)`` by direct recursion; independent of the piecewise machinery."""
    x0 = Fraction(x0)
    if not 0 <= x0 <= 1:
        raise ValueError(f"point {x0} is outside [0, 1]")

    def go(node: Formula) -> Fraction:
        if isinstance(node, Zero):
            return Fraction(0)
        if isinstance(node, One):
            return Fraction(1)
        if isinstance(node, Scale):
            return node.r * go(node.arg)
        if isinstance(node, Add):
            return go(node.left) + go(node.right)
        if isinstance(node, Join):
            return max(go(node.left), go(node.right))
        if isinstance(node, Meet):
            return min(go(node.left), go(node.right))
        if isinstance(node, Dia):
            _check_label(node)
            return x0 * go(node.arg)
        raise ValueError(f"cannot evaluate {type(node).__name__} pointwise")

    return go(phi)
