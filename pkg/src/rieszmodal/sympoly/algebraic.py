"""Exact real algebraic numbers and Sturm-based root isolation.

An algebraic number is either an exact rational (``lo == hi``) or a square-free
defining polynomial together with a rational interval ``(lo, hi)`` that holds
exactly one of its roots, with the polynomial nonzero at both endpoints.
Refinement never mutates: it returns a new, tighter number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from .poly import Coeff, Poly, count_roots, gcd, squarefree, sturm_sequence


@dataclass(frozen=True, eq=False)
class AlgebraicNumber:
    defining: Poly
    lo: Fraction
    hi: Fraction

    @classmethod
    def rational(cls, q: Coeff) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(Poly((-q, 1)), q, q)

    @classmethod
    def isolated(cls, p: Poly, lo: Fraction, hi: Fraction) -> "AlgebraicNumber":
        """Wrap a root of square-free ``p`` isolated in ``(lo, hi)``."""
        if p.degree == 1:
            return cls.rational(-p.coeffs[0] / p.coeffs[1])
        return cls(p, Fraction(lo), Fraction(hi))

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        return self.lo

    @cached_property
    def sturm(self) -> tuple[Poly, ...]:
        return sturm_sequence(self.defining)

    def check(self) -> None:
        """Assert the representation invariant (square-free, one root inside)."""
        p = self.defining
        if not p or p.degree < 1:
            raise AssertionError("defining polynomial must be nonconstant")
        if gcd(p, p.derivative()).degree > 0:
            raise AssertionError("defining polynomial is not square-free")
        if self.is_rational:
            if p(self.lo) != 0:
                raise AssertionError("rational value is not a root of its defining polynomial")
            return
        if not self.lo < self.hi:
            raise AssertionError("empty isolating interval")
        if p(self.lo) == 0 or p(self.hi) == 0:
            raise AssertionError("endpoint is a root")
        if p.sign_at(self.lo) == p.sign_at(self.hi):
            raise AssertionError("no sign change across isolating interval")
        if count_roots(self.sturm, self.lo, self.hi) != 1:
            raise AssertionError("isolating interval holds more than one root")

    def refine(self) -> "AlgebraicNumber":
        """Halve the isolating interval."""
        if self.is_rational:
            return self
        p = self.defining
        mid = (self.lo + self.hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return AlgebraicNumber.rational(mid)
        if s == p.sign_at(self.lo):
            return AlgebraicNumber(p, mid, self.hi)
        return AlgebraicNumber(p, self.lo, mid)

    def refine_to(self, width: Fraction) -> "AlgebraicNumber":
        a = self
        while a.hi - a.lo > width:
            a = a.refine()
        return a

    def approx(self, width: Fraction = Fraction(1, 10**12)) -> Fraction:
        a = self.refine_to(width)
        return (a.lo + a.hi) / 2

    def __float__(self) -> float:
        return float(self.approx())

    # Comparisons -----------------------------------------------------------

    def compare(self, other: Union["AlgebraicNumber", Coeff]) -> int:
        if not isinstance(other, AlgebraicNumber):
            other = AlgebraicNumber.rational(other)
        a, b = self, other
        if a.is_rational and b.is_rational:
            return (a.lo > b.lo) - (a.lo < b.lo)
        if a.is_rational:
            return -b._compare_rational(a.lo)
        if b.is_rational:
            return a._compare_rational(b.lo)
        g = gcd(a.defining, b.defining)
        g_seq = sturm_sequence(g) if g.degree > 0 else ()
        while True:
            if a.hi <= b.lo:
                return -1
            if b.hi <= a.lo:
                return 1
            if g_seq and count_roots(g_seq, max(a.lo, b.lo), min(a.hi, b.hi)) > 0:
                return 0
            a, b = a.refine(), b.refine()
            if a.is_rational or b.is_rational:
                return a.compare(b)

    def _compare_rational(self, q: Fraction) -> int:
        """Sign of ``self - q`` for irrational ``self``; exact, no iteration."""
        if q <= self.lo:
            return 1
        if q >= self.hi:
            return -1
        p = self.defining
        s = p.sign_at(q)
        if s == 0:
            return 0
        # q lies on the lo-side of the root iff p has the same sign there as at lo.
        return 1 if s == p.sign_at(self.lo) else -1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (AlgebraicNumber, int, Fraction)):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicNumber({self.lo})"
        return f"AlgebraicNumber(root of {self.defining} in ({self.lo}, {self.hi}))"

    def certificate(self) -> str:
        if self.is_rational:
            q = self.lo
            return f"{q.numerator}" if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        from .poly import format_poly

        return f"root of {format_poly(self.defining)} in ({self.lo}, {self.hi})"


def sign_at(p: Poly, a: AlgebraicNumber) -> int:
    """Exact sign of ``p`` evaluated at the algebraic number ``a``."""
    if a.is_rational:
        return p.sign_at(a.lo)
    if not p:
        return 0
    g = gcd(p, a.defining)
    if g.degree > 0 and count_roots(sturm_sequence(g), a.lo, a.hi) > 0:
        return 0
    q = squarefree(p)
    seq = sturm_sequence(q)
    while True:
        if q(a.lo) != 0 and count_roots(seq, a.lo, a.hi) == 0:
            return p.sign_at(a.lo)
        a = a.refine()
        if a.is_rational:
            return p.sign_at(a.lo)


def rational_between(a: AlgebraicNumber, b: AlgebraicNumber) -> Fraction:
    """A rational strictly between ``a < b``."""
    # a <= a.hi and b.lo <= b, so any gap between them brackets the midpoint.
    while not a.hi < b.lo:
        a, b = a.refine(), b.refine()
    return (a.hi + b.lo) / 2


def _isolate_open(p: Poly, seq: tuple[Poly, ...], lo: Fraction, hi: Fraction, out: list) -> None:
    n = count_roots(seq, lo, hi) - (1 if p(hi) == 0 else 0)
    if n <= 0:
        return
    if n == 1 and p(lo) != 0 and p(hi) != 0:
        out.append(AlgebraicNumber.isolated(p, lo, hi))
        return
    mid = (lo + hi) / 2
    _isolate_open(p, seq, lo, mid, out)
    if p(mid) == 0:
        out.append(AlgebraicNumber.rational(mid))
    _isolate_open(p, seq, mid, hi, out)


def isolate_roots(p: Poly, lo: Union[AlgebraicNumber, Coeff] = 0,
                  hi: Union[AlgebraicNumber, Coeff] = 1) -> list[AlgebraicNumber]:
    """All distinct real roots of ``p`` in the closed interval ``[lo, hi]``, sorted.

    Endpoints may be rationals or algebraic numbers.  Multiplicities are
    discarded (the square-free part is isolated).
    """
    if not p:
        raise ValueError("the zero polynomial has no isolated roots")
    lo_a = lo if isinstance(lo, AlgebraicNumber) else AlgebraicNumber.rational(lo)
    hi_a = hi if isinstance(hi, AlgebraicNumber) else AlgebraicNumber.rational(hi)
    r_lo, r_hi = lo_a.lo, hi_a.hi
    if r_hi < r_lo:
        return []
    if p.degree == 0:
        return []
    q = squarefree(p)
    seq = sturm_sequence(q)
    roots: list[AlgebraicNumber] = []
    if q(r_lo) == 0:
        roots.append(AlgebraicNumber.rational(r_lo))
    if r_hi > r_lo:
        _isolate_open(q, seq, r_lo, r_hi, roots)
        if q(r_hi) == 0:
            roots.append(AlgebraicNumber.rational(r_hi))
    if lo_a.is_rational and hi_a.is_rational:
        return roots
    return [r for r in roots if lo_a <= r <= hi_a]
