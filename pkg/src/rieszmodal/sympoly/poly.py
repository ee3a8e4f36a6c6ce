"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Coeff = Union[int, Fraction]


def _trim(coeffs: Iterable[Coeff]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """Coefficients lowest degree first; the zero polynomial is ``()``."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c: Coeff) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x: Coeff) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, r: Coeff) -> "Poly":
        r = Fraction(r)
        return Poly(tuple(r * c for c in self.coeffs)) if r else Poly()

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(tuple(out))

    def shift_up(self) -> "Poly":
        """Multiply by ``x``."""
        return Poly((Fraction(0),) + self.coeffs) if self.coeffs else self

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly(tuple(quot)), Poly(tuple(rem[:dq]))

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def monic(self) -> "Poly":
        return self.scale(1 / self.lead) if self else self

    def sign_at(self, x: Coeff) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def __str__(self) -> str:
        return format_poly(self)


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor (zero if both are zero)."""
    while q:
        p, q = q, p % q
    return p.monic()


def squarefree(p: Poly) -> Poly:
    """The square-free part ``p / gcd(p, p')``, made monic."""
    if p.degree <= 0:
        return p.monic()
    g = gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: Poly) -> tuple[Poly, ...]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return tuple(s for s in seq if s)


def sign_changes(values: Sequence[Fraction]) -> int:
    changes = 0
    last = 0
    for v in values:
        s = (v > 0) - (v < 0)
        if s:
            if last and s != last:
                changes += 1
            last = s
    return changes


def variations(seq: Sequence[Poly], x: Coeff) -> int:
    return sign_changes([s(x) for s in seq])


def count_roots(seq: Sequence[Poly], lo: Coeff, hi: Coeff) -> int:
    """Distinct real roots in the half-open interval ``(lo, hi]``.

    ``seq`` must be the Sturm sequence of a square-free polynomial.
    """
    if hi <= lo:
        return 0
    return variations(seq, lo) - variations(seq, hi)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_scale(r: Coeff, p: Poly) -> Poly:
    return p.scale(r)


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly, var: str = "x") -> str:
    """``1 - 2*x + x^2`` style, lowest degree first."""
    if not p:
        return "0"
    parts: list[str] = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mag = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(mag)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)
