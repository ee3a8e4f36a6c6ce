"""The equational axioms of modal Riesz spaces.

Inequalities ``a <= b`` are stored as the equation ``a /\\ b = a``.  Axioms
indexed by scalars (and by modality labels) are schemas: an instance is
obtained by supplying concrete parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Union

from ..formula import DEFAULT_LABEL, LABEL_RE, ONE, ZERO, Add, Dia, Formula, Join, Meet, Scale, Var, to_text

Param = Union[Fraction, str]

x, y, z = Var("x"), Var("y"), Var("z")


@dataclass(frozen=True)
class Equation:
    lhs: Formula
    rhs: Formula

    def __str__(self) -> str:
        return f"{to_text(self.lhs)} = {to_text(self.rhs)}"


def encode_leq(a: Formula, b: Formula) -> Equation:
    """``a <= b`` as ``a /\\ b = a``."""
    return Equation(Meet(a, b), a)


def decode_leq(eq: Equation) -> Optional[tuple[Formula, Formula]]:
    """Inverse of :func:`encode_leq`; ``None`` if ``eq`` is not of that shape."""
    if isinstance(eq.lhs, Meet) and eq.lhs.left == eq.rhs:
        return eq.lhs.left, eq.lhs.right
    return None


class SideConditionError(ValueError):
    pass


@dataclass(frozen=True)
class Axiom:
    id: str
    group: str
    inequality: bool
    params: tuple[str, ...]
    build: Callable[[Mapping[str, Param]], tuple[Formula, Formula]]
    schema: str
    side: Optional[Callable[[Mapping[str, Param]], Optional[str]]] = None

    def instance(self, params: Optional[Mapping[str, Param]] = None) -> Equation:
        """The (encoded) equation for concrete parameters.

        ``label`` defaults to the distinguished label; scalar parameters are
        mandatory.  Raises ``KeyError`` for missing or unknown parameters and
        :class:`SideConditionError` when a side condition fails.
        """
        given = dict(params or {})
        unknown = set(given) - set(self.params)
        if unknown:
            raise KeyError(f"axiom {self.id} has no parameter(s) {', '.join(sorted(unknown))}")
        if "label" in self.params:
            given.setdefault("label", DEFAULT_LABEL)
            if not isinstance(given["label"], str) or not LABEL_RE.match(given["label"]):
                raise KeyError(f"invalid label {given['label']!r}")
        for p in self.params:
            if p == "label":
                continue
            if p not in given:
                raise KeyError(f"axiom {self.id} needs parameter {p}")
            given[p] = Fraction(given[p])
        if self.side is not None:
            problem = self.side(given)
            if problem:
                raise SideConditionError(problem)
        a, b = self.build(given)
        return encode_leq(a, b) if self.inequality else Equation(a, b)

    def sample_params(self, rng=None) -> dict[str, Param]:
        """Some admissible parameters (random if ``rng`` is given)."""
        choices = [Fraction(-2), Fraction(-1, 3), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(5, 4)]
        out: dict[str, Param] = {}
        for i, p in enumerate(self.params):
            if p == "label":
                continue
            out[p] = rng.choice(choices) if rng else choices[(i + 3) % len(choices)]
        if self.side is not None:
            out = {k: abs(v) for k, v in out.items()}
        return out


def _nonneg_r(p: Mapping[str, Param]) -> Optional[str]:
    if p["r"] < 0:
        return f"scalar-compat requires r >= 0, got r = {p['r']}"
    return None


def _lab(p: Mapping[str, Param]) -> str:
    return p.get("label", DEFAULT_LABEL)  # type: ignore[return-value]


_M1 = Fraction(-1)

CATALOGUE: tuple[Axiom, ...] = (
    # vector space: additive group
    Axiom("add-assoc", "additive group", False, (),
          lambda p: (Add(x, Add(y, z)), Add(Add(x, y), z)), "x + (y + z) = (x + y) + z"),
    Axiom("add-comm", "additive group", False, (),
          lambda p: (Add(x, y), Add(y, x)), "x + y = y + x"),
    Axiom("add-zero", "additive group", False, (),
          lambda p: (Add(x, ZERO), x), "x + 0 = x"),
    Axiom("add-inverse", "additive group", False, (),
          lambda p: (Add(x, Scale(_M1, x)), ZERO), "x - x = 0"),
    # vector space: scalar multiplication
    Axiom("scalar-assoc", "scalar multiplication", False, ("r1", "r2"),
          lambda p: (Scale(p["r1"], Scale(p["r2"], x)), Scale(p["r1"] * p["r2"], x)),
          "r1(r2 x) = (r1 r2) x"),
    Axiom("scalar-unit", "scalar multiplication", False, (),
          lambda p: (Scale(Fraction(1), x), x), "1x = x"),
    Axiom("scalar-distrib-vec", "scalar multiplication", False, ("r",),
          lambda p: (Scale(p["r"], Add(x, y)), Add(Scale(p["r"], x), Scale(p["r"], y))),
          "r(x + y) = rx + ry"),
    Axiom("scalar-distrib-scalar", "scalar multiplication", False, ("r1", "r2"),
          lambda p: (Scale(p["r1"] + p["r2"], x), Add(Scale(p["r1"], x), Scale(p["r2"], x))),
          "(r1 + r2)x = r1 x + r2 x"),
    # lattice
    Axiom("lattice-join-assoc", "lattice", False, (),
          lambda p: (Join(x, Join(y, z)), Join(Join(x, y), z)), "x \\/ (y \\/ z) = (x \\/ y) \\/ z"),
    Axiom("lattice-meet-assoc", "lattice", False, (),
          lambda p: (Meet(x, Meet(y, z)), Meet(Meet(x, y), z)), "x /\\ (y /\\ z) = (x /\\ y) /\\ z"),
    Axiom("lattice-join-comm", "lattice", False, (),
          lambda p: (Join(z, y), Join(y, z)), "z \\/ y = y \\/ z"),
    Axiom("lattice-meet-comm", "lattice", False, (),
          lambda p: (Meet(z, y), Meet(y, z)), "z /\\ y = y /\\ z"),
    Axiom("lattice-absorption-1", "lattice", False, (),
          lambda p: (Join(z, Meet(z, y)), z), "z \\/ (z /\\ y) = z"),
    Axiom("lattice-absorption-2", "lattice", False, (),
          lambda p: (Meet(z, Join(z, y)), z), "z /\\ (z \\/ y) = z"),
    Axiom("lattice-join-idem", "lattice", False, (),
          lambda p: (Join(x, x), x), "x \\/ x = x"),
    Axiom("lattice-meet-idem", "lattice", False, (),
          lambda p: (Meet(x, x), x), "x /\\ x = x"),
    # compatibility
    Axiom("compat-add", "compatibility", True, (),
          lambda p: (Add(Meet(x, y), z), Add(y, z)), "(x /\\ y) + z <= y + z"),
    Axiom("scalar-compat", "compatibility", True, ("r",),
          lambda p: (Scale(p["r"], Meet(x, y)), Scale(p["r"], y)), "r(x /\\ y) <= ry  (r >= 0)",
          _nonneg_r),
    # positive element
    Axiom("positive-element", "positive element", True, (),
          lambda p: (ZERO, ONE), "0 <= 1"),
    # modal
    Axiom("modal-linearity", "modal", False, ("r1", "r2", "label"),
          lambda p: (Dia(Add(Scale(p["r1"], x), Scale(p["r2"], y)), _lab(p)),
                     Add(Scale(p["r1"], Dia(x, _lab(p))), Scale(p["r2"], Dia(y, _lab(p))))),
          "<>(r1 x + r2 y) = r1 <>x + r2 <>y"),
    Axiom("modal-positivity", "modal", True, ("label",),
          lambda p: (ZERO, Dia(Join(x, ZERO), _lab(p))), "0 <= <>(x \\/ 0)"),
    Axiom("modal-1-decreasing", "modal", True, ("label",),
          lambda p: (Dia(ONE, _lab(p)), ONE), "<>1 <= 1"),
)

_BY_ID = {a.id: a for a in CATALOGUE}


def axiom_catalogue() -> list[Axiom]:
    return list(CATALOGUE)


def lookup(axiom_id: str) -> Axiom:
    try:
        return _BY_ID[axiom_id]
    except KeyError:
        raise KeyError(f"unknown axiom {axiom_id!r}") from None
