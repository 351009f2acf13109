"""Truncated power series in ``u = x**4``.

Every function in this package is odd in ``x`` with a Maclaurin expansion
in powers of ``x**4`` after dividing by ``x``, so ``arcsl(x) / x``,
``sl(x) / x``, the quartic and square roots ``(1 +- x**4)**q`` and all the
quotients built from them are series in ``u``.  Rational coefficients are
kept as :class:`fractions.Fraction` so leading-order cancellations are
exact; coefficients that involve the lemniscate constant are floats.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

ORDER = 12


class Series:
    """Power series ``sum(c[n] * u**n for n < ORDER)``."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = list(coeffs)[:ORDER]
        c += [Fraction(0)] * (ORDER - len(c))
        self.c = c

    @classmethod
    def const(cls, value):
        return cls([value])

    @classmethod
    def u(cls):
        return cls([Fraction(0), Fraction(1)])

    @classmethod
    def binomial(cls, q, sign=1):
        """``(1 + sign*u)**q`` for rational ``q``."""
        q = Fraction(q)
        out, term = [], Fraction(1)
        for n in range(ORDER):
            out.append(term * sign**n)
            term = term * (q - n) / (n + 1)
        return cls(out)

    def __repr__(self):
        return f"Series({[float(x) for x in self.c[:4]]}...)"

    @staticmethod
    def _lift(other):
        return other if isinstance(other, Series) else Series.const(other)

    def __add__(self, other):
        other = self._lift(other)
        return Series(a + b for a, b in zip(self.c, other.c))

    __radd__ = __add__

    def __neg__(self):
        return Series(-a for a in self.c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = [Fraction(0)] * ORDER
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(ORDER - i):
                out[i + j] += a * other.c[j]
        return Series(out)

    __rmul__ = __mul__

    def reciprocal(self):
        c0 = self.c[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        out = [1 / Fraction(c0) if isinstance(c0, Fraction) else 1.0 / c0]
        for n in range(1, ORDER):
            s = sum(self.c[k] * out[n - k] for k in range(1, n + 1))
            out.append(-s * out[0])
        return Series(out)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def shift(self):
        """Divide by ``u``; the constant term must vanish."""
        if self.c[0] != 0:
            raise ValueError("constant term is not zero")
        return Series(self.c[1:])

    def times_u(self):
        return Series([Fraction(0)] + self.c[:-1])

    def compose(self, inner: "Series") -> "Series":
        """``self(inner(u))`` for ``inner`` without constant term."""
        if inner.c[0] != 0:
            raise ValueError("inner series must have zero constant term")
        out = Series.const(self.c[-1])
        for a in reversed(self.c[:-1]):
            out = out * inner + a
        return out

    def power(self, q):
        """``self**q`` for a series with constant term 1."""
        if self.c[0] != 1:
            raise ValueError("power() needs constant term 1")
        return Series.binomial(q).compose(self - 1)

    def __call__(self, u: float) -> float:
        acc = 0.0
        for a in reversed(self.c):
            acc = acc * u + float(a)
        return acc

    def tail(self, u: float) -> float:
        """Value minus the constant term."""
        acc = 0.0
        for a in reversed(self.c[1:]):
            acc = acc * u + float(a)
        return acc * u

    def step(self, u1: float, u2: float) -> float:
        """``self(u2) - self(u1)`` without cancelling the constant term."""
        acc = 0.0
        p1, p2 = 1.0, 1.0
        for a in self.c[1:]:
            p1 *= u1
            p2 *= u2
            acc += float(a) * (p2 - p1)
        return acc


def arc_series(exponent, sign) -> Series:
    """``F(x)/x`` where ``F' = (1 + sign*x**4)**exponent`` and ``F(0) = 0``."""
    b = Series.binomial(exponent, sign)
    return Series(a / (4 * n + 1) for n, a in enumerate(b.c))


def revert(arc_over_x: Series) -> Series:
    """Series ``S`` with ``y = x*S(x**4)`` inverting ``x = y*A(y**4)``.

    Solves ``S * A(u * S**4) = 1`` by fixed-point iteration; every pass
    fixes one more coefficient.
    """
    s = Series.const(Fraction(1))
    for _ in range(ORDER):
        s = arc_over_x.compose((s * s * s * s).times_u()).reciprocal()
    return s


def central_binomial_over_4n(n: int) -> Fraction:
    return Fraction(comb(2 * n, n), 4**n)
