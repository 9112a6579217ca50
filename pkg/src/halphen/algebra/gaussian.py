"""Exact Gaussian rational numbers: a + b*i with a, b arbitrary-precision rationals."""

from __future__ import annotations

from fractions import Fraction


class GaussRational:
    """Immutable element of Q(i).

    Arithmetic is exact; i*i == -1 by construction.  Values compare equal
    iff their (reduced) real and imaginary parts are equal.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_value(cls, v) -> "GaussRational":
        if isinstance(v, GaussRational):
            return v
        return cls(Fraction(v))

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = GaussRational.from_value(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussRational.from_value(other)
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRational.from_value(other) - self

    def __mul__(self, other):
        other = GaussRational.from_value(other)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm a^2 + b^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero GaussRational")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = GaussRational.from_value(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRational.from_value(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussRational(other)
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gauss(self)


def format_gauss(z: GaussRational) -> str:
    """Render in the expression grammar, e.g. ``3/2+1/2*i`` or ``-i``."""
    def frac(q: Fraction) -> str:
        return str(q)

    if z.im == 0:
        return frac(z.re)
    if z.im == 1:
        imag = "i"
    elif z.im == -1:
        imag = "-i"
    else:
        imag = f"{frac(z.im)}*i"
    if z.re == 0:
        return imag
    sep = "+" if z.im > 0 else ""
    return f"{frac(z.re)}{sep}{imag}"


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)
