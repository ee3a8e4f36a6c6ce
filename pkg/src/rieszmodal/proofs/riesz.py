"""Decide identities of unital Riesz spaces by reduction to linear arithmetic.

An equation between Riesz terms over the constant 1 holds in every Riesz
space with a positive element iff it holds in the reals with unit 1.  Treating
variables and modal subterms as free real atoms, each side is a piecewise
linear function; the sides agree iff on every region carved out by the
lattice operations neither difference sign is satisfiable.  Satisfiability of
linear constraints (strict and non-strict) is decided exactly by
Fourier-Motzkin elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..formula import Add, Dia, Formula, Join, Meet, One, Scale, Var, Zero

# A linear form is a tuple (c_0, ..., c_{n-1}, const); a constraint is
# (form, strict) meaning form > 0 when strict, form >= 0 otherwise.
Form = tuple[Fraction, ...]
Constraint = tuple[Form, bool]


class _Atoms:
    def __init__(self) -> None:
        self.index: dict[Formula, int] = {}

    def collect(self, phi: Formula) -> None:
        if isinstance(phi, (Var, Dia)):
            self.index.setdefault(phi, len(self.index))
            return
        for k in phi.children():
            self.collect(k)


def _sub(a: Form, b: Form) -> Form:
    return tuple(p - q for p, q in zip(a, b))


def feasible(constraints: Iterable[Constraint], nvars: int) -> bool:
    """Whether some real point satisfies all constraints."""
    cons = set(constraints)
    for v in range(nvars):
        pos, neg, rest = [], [], []
        for form, strict in cons:
            c = form[v]
            (pos if c > 0 else neg if c < 0 else rest).append((form, strict))
        if not pos or not neg:
            cons = set(rest)
            continue
        new = set(rest)
        for fp, sp in pos:
            for fn, sn in neg:
                a, b = fp[v], -fn[v]
                combined = tuple(p / a + q / b for p, q in zip(fp, fn))
                if any(combined[:-1]):
                    new.add((_normal(combined), sp or sn))
                else:
                    new.add((combined, sp or sn))
        cons = new
    for form, strict in cons:
        const = form[-1]
        if const < 0 or (strict and const == 0):
            return False
    return True


def _normal(form: Form) -> Form:
    """Scale by a positive factor so that the first nonzero coefficient is +-1."""
    lead = next(abs(c) for c in form if c)
    return tuple(c / lead for c in form)


def _branches(phi: Formula, atoms: _Atoms, n: int) -> list[tuple[Form, tuple[Constraint, ...]]]:
    """Piecewise-linear description of ``phi``: (value form, region) pairs covering R^n."""
    if isinstance(phi, Zero):
        return [(tuple(Fraction(0) for _ in range(n + 1)), ())]
    if isinstance(phi, One):
        return [(tuple(Fraction(0) for _ in range(n)) + (Fraction(1),), ())]
    if isinstance(phi, (Var, Dia)):
        form = [Fraction(0)] * (n + 1)
        form[atoms.index[phi]] = Fraction(1)
        return [(tuple(form), ())]
    if isinstance(phi, Scale):
        return [(tuple(phi.r * c for c in f), reg) for f, reg in _branches(phi.arg, atoms, n)]
    left = _branches(phi.left, atoms, n)
    right = _branches(phi.right, atoms, n)
    out = []
    for fa, ra in left:
        for fb, rb in right:
            region = ra + rb
            if isinstance(phi, Add):
                if feasible(region, n):
                    out.append((tuple(p + q for p, q in zip(fa, fb)), region))
                continue
            if isinstance(phi, Join):
                first, second = (fa, fb)
            elif isinstance(phi, Meet):
                first, second = (fb, fa)
            else:
                raise TypeError(f"not a Riesz term: {type(phi).__name__}")
            # the join takes fa where fa >= fb; the meet takes fa where fb >= fa
            ra_region = region + ((_sub(first, second), False),)
            rb_region = region + ((_sub(second, first), True),)
            if feasible(ra_region, n):
                out.append((fa, ra_region))
            if feasible(rb_region, n):
                out.append((fb, rb_region))
    return out


def riesz_identity(lhs: Formula, rhs: Formula) -> bool:
    """True iff ``lhs = rhs`` holds in (R, 1) with modal subterms as free atoms."""
    atoms = _Atoms()
    atoms.collect(lhs)
    atoms.collect(rhs)
    n = len(atoms.index)
    for fl, rl in _branches(lhs, atoms, n):
        for fr, rr in _branches(rhs, atoms, n):
            region = rl + rr
            diff = _sub(fl, fr)
            if not any(diff):
                continue
            if feasible(region + ((diff, True),), n) or feasible(region + ((_sub(fr, fl), True),), n):
                return False
    return True
