"""Continuous piecewise-polynomial functions on [0, 1] with algebraic breakpoints."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .algebraic import AlgebraicNumber, isolate_roots, rational_between, sign_at
from .poly import Coeff, Poly, format_poly

ZERO_PT = AlgebraicNumber.rational(0)
ONE_PT = AlgebraicNumber.rational(1)


@dataclass(frozen=True, eq=False)
class PiecewisePoly:
    breakpoints: tuple[AlgebraicNumber, ...]
    pieces: tuple[Poly, ...]

    def __post_init__(self) -> None:
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more piece than breakpoints")

    @classmethod
    def poly(cls, p: Poly) -> "PiecewisePoly":
        return cls((), (p,))

    @classmethod
    def constant(cls, c: Coeff) -> "PiecewisePoly":
        return cls.poly(Poly.const(c))

    def cells(self) -> Iterator[tuple[AlgebraicNumber, AlgebraicNumber, Poly]]:
        """``(left, right, piece)`` for each subinterval of [0, 1]."""
        ends = (ZERO_PT,) + self.breakpoints + (ONE_PT,)
        for i, piece in enumerate(self.pieces):
            yield ends[i], ends[i + 1], piece

    def __call__(self, x: Coeff) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError(f"{x} is outside [0, 1]")
        i = 0
        for b in self.breakpoints:
            if b.compare(x) < 0:
                i += 1
            else:
                break
        return self.pieces[i](x)

    def validate(self) -> None:
        """Raise ``AssertionError`` unless breakpoints and continuity invariants hold."""
        prev = ZERO_PT
        for b in self.breakpoints:
            b.check()
            if not prev < b:
                raise AssertionError(f"breakpoints not strictly increasing in (0,1) at {b!r}")
            prev = b
        if self.breakpoints and not self.breakpoints[-1] < ONE_PT:
            raise AssertionError("breakpoint at or beyond 1")
        for i, b in enumerate(self.breakpoints):
            if sign_at(self.pieces[i] - self.pieces[i + 1], b) != 0:
                raise AssertionError(f"discontinuity at breakpoint {b!r}")

    # Algebra ------------------------------------------------------------------

    def map(self, f: Callable[[Poly], Poly]) -> "PiecewisePoly":
        return _normalize(self.breakpoints, [f(p) for p in self.pieces])

    def scale(self, r: Coeff) -> "PiecewisePoly":
        return self.map(lambda p: p.scale(r))

    def times_x(self) -> "PiecewisePoly":
        return self.map(Poly.shift_up)

    def __add__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        breaks, fs, gs = common_refinement(self, other)
        return _normalize(breaks, [a + b for a, b in zip(fs, gs)])

    def __neg__(self) -> "PiecewisePoly":
        return self.scale(-1)

    def __sub__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        return self + (-other)

    def dump(self) -> str:
        return dump(self)


def _normalize(breaks: Sequence[AlgebraicNumber], pieces: Sequence[Poly]) -> PiecewisePoly:
    """Drop breakpoints between identical neighbouring pieces."""
    out_breaks: list[AlgebraicNumber] = []
    out_pieces: list[Poly] = [pieces[0]]
    for b, p in zip(breaks, pieces[1:]):
        if p == out_pieces[-1]:
            continue
        out_breaks.append(b)
        out_pieces.append(p)
    return PiecewisePoly(tuple(out_breaks), tuple(out_pieces))


def common_refinement(f: PiecewisePoly, g: PiecewisePoly):
    """Merged breakpoints plus the pieces of ``f`` and ``g`` on each merged cell."""
    fb, gb = f.breakpoints, g.breakpoints
    breaks: list[AlgebraicNumber] = []
    fs: list[Poly] = []
    gs: list[Poly] = []
    i = j = 0
    while i < len(fb) or j < len(gb):
        fs.append(f.pieces[i])
        gs.append(g.pieces[j])
        if j >= len(gb):
            breaks.append(fb[i])
            i += 1
            continue
        if i >= len(fb):
            breaks.append(gb[j])
            j += 1
            continue
        c = fb[i].compare(gb[j])
        if c <= 0:
            breaks.append(fb[i])
            i += 1
            if c == 0:
                j += 1
        else:
            breaks.append(gb[j])
            j += 1
    fs.append(f.pieces[i])
    gs.append(g.pieces[j])
    return breaks, fs, gs


def _select(f: PiecewisePoly, g: PiecewisePoly, want: int) -> PiecewisePoly:
    """Pointwise max (``want=1``) or min (``want=-1``)."""
    breaks, fs, gs = common_refinement(f, g)
    ends = [ZERO_PT] + breaks + [ONE_PT]
    out_breaks: list[AlgebraicNumber] = []
    out_pieces: list[Poly] = []
    for k, (pf, pg) in enumerate(zip(fs, gs)):
        left, right = ends[k], ends[k + 1]
        if k:
            out_breaks.append(left)
        if pf == pg:
            out_pieces.append(pf)
            continue
        diff = pf - pg
        inner = [r for r in isolate_roots(diff, left, right) if left < r < right]
        sub_ends = [left] + inner + [right]
        for m in range(len(sub_ends) - 1):
            if m:
                out_breaks.append(sub_ends[m])
            sample = rational_between(sub_ends[m], sub_ends[m + 1])
            s = diff.sign_at(sample)
            out_pieces.append(pf if s * want >= 0 else pg)
    return _normalize(out_breaks, out_pieces)


def pp_join(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    return _select(f, g, 1)


def pp_meet(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    return _select(f, g, -1)


def pp_equal(f: PiecewisePoly, g: PiecewisePoly) -> bool:
    """True iff ``f`` and ``g`` agree on all of [0, 1].

    A nonzero polynomial has finitely many roots, so two pieces agree on a
    nondegenerate cell only when they are identical.
    """
    _, fs, gs = common_refinement(f, g)
    return all(a == b for a, b in zip(fs, gs))


def max_abs_at_most(f: PiecewisePoly, bound: Coeff) -> bool:
    """Check ``|f(x)| <= bound`` on [0, 1] at cell endpoints and interior critical points."""
    bound = Fraction(bound)
    for left, right, piece in f.cells():
        points = [left, right]
        deriv = piece.derivative()
        if deriv:
            points += [r for r in isolate_roots(deriv, left, right) if left < r < right]
        upper = piece - Poly.const(bound)
        lower = piece + Poly.const(bound)
        for pt in points:
            if sign_at(upper, pt) > 0 or sign_at(lower, pt) < 0:
                return False
    return True


def _fmt_point(a: AlgebraicNumber) -> str:
    if a.is_rational:
        return a.certificate()
    return f"{float(a.approx(Fraction(1, 10**9))):.6f}"


def dump(f: PiecewisePoly) -> str:
    """Text dump: one ``on [lo, hi]: poly`` line per piece, then breakpoint certificates."""
    lines = [f"on [{_fmt_point(lo)},{_fmt_point(hi)}]: {format_poly(p)}" for lo, hi, p in f.cells()]
    if f.breakpoints:
        lines.append("breakpoints:")
        for i, b in enumerate(f.breakpoints, 1):
            lines.append(f"  b{i} = {b.certificate()}")
    return "\n".join(lines)
