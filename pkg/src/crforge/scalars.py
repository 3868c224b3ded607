"""Coefficient arithmetic: exact Gaussian rationals and binary64 complex.

Exact mode stores coefficients as :class:`QC` (a pair of ``Fraction``);
float mode stores plain ``complex``.  The two interoperate: any binary
operation mixing a ``QC`` with a ``complex`` or ``float`` degrades to
``complex``, so a whole computation switches mode at the first inexact
step and never silently upgrades back.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Union

Coeff = Union["QC", complex]

_NUMERIC = (int, Fraction)


class QC:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    # -- conversions ---------------------------------------------------
    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, QC):
            return QC(self.re + other.re, self.im + other.im)
        if isinstance(other, _NUMERIC):
            return QC(self.re + other, self.im)
        if isinstance(other, (complex, float)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, QC):
            return QC(self.re - other.re, self.im - other.im)
        if isinstance(other, _NUMERIC):
            return QC(self.re - other, self.im)
        if isinstance(other, (complex, float)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, QC):
            return QC(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        if isinstance(other, _NUMERIC):
            return QC(self.re * other, self.im * other)
        if isinstance(other, (complex, float)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QC):
            d = other.re * other.re + other.im * other.im
            if d == 0:
                raise ZeroDivisionError("division by exact zero")
            return QC((self.re * other.re + self.im * other.im) / d,
                      (self.im * other.re - self.re * other.im) / d)
        if isinstance(other, _NUMERIC):
            return QC(self.re / other, self.im / other)
        if isinstance(other, (complex, float)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _NUMERIC):
            return QC(other) / self
        if isinstance(other, (complex, float)):
            return other / complex(self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, QC):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _NUMERIC):
            return self.im == 0 and self.re == other
        if isinstance(other, (complex, float)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QC({self.re!s}, {self.im!s})"


ZERO = QC(0)
ONE = QC(1)
I = QC(0, 1)
HALF = QC(Fraction(1, 2))


def is_exact(x: Coeff) -> bool:
    return isinstance(x, (QC, int, Fraction))


def conj(x: Coeff) -> Coeff:
    if isinstance(x, QC):
        return x.conjugate()
    if isinstance(x, _NUMERIC):
        return x
    return x.conjugate()


def as_complex(x: Coeff) -> complex:
    return complex(x)


def is_zero(x: Coeff, tol: float = 0.0) -> bool:
    """Zero test: exact equality for QC, modulus <= tol otherwise."""
    if isinstance(x, QC):
        return x.re == 0 and x.im == 0
    if isinstance(x, _NUMERIC):
        return x == 0
    return abs(x) <= tol


def to_float(x: Coeff) -> complex:
    """Force a coefficient into float mode."""
    return complex(x)


def exact_sqrt(f: Fraction):
    """Rational square root of a nonnegative Fraction, or None."""
    if f < 0:
        return None
    pn = math.isqrt(f.numerator)
    pd = math.isqrt(f.denominator)
    if pn * pn == f.numerator and pd * pd == f.denominator:
        return Fraction(pn, pd)
    return None


def sqrt_positive(x: Coeff):
    """Square root of a positive real coefficient; exact when possible."""
    if isinstance(x, QC):
        if x.im != 0 or x.re <= 0:
            raise ValueError("sqrt_positive needs a positive real value")
        r = exact_sqrt(x.re)
        if r is not None:
            return QC(r)
        return complex(math.sqrt(float(x.re)), 0.0)
    xr = complex(x)
    if abs(xr.imag) > 1e-12 * max(1.0, abs(xr)) or xr.real <= 0:
        raise ValueError("sqrt_positive needs a positive real value")
    return complex(math.sqrt(xr.real), 0.0)


def real_part(x: Coeff):
    if isinstance(x, QC):
        return QC(x.re)
    return complex(x.real, 0.0)


def imag_part(x: Coeff):
    if isinstance(x, QC):
        return QC(x.im)
    return complex(x.imag, 0.0)


def cube_root_dilation(alpha: Coeff) -> complex:
    """The canonical lambda with lambda^2 conj(lambda) = alpha.

    Chosen as r e^{i theta} with r = |alpha|^{1/3} > 0 and
    theta = arg(alpha), which is the unique such root with that phase.
    """
    a = complex(alpha)
    if a == 0:
        raise ZeroDivisionError("dilation of zero coefficient")
    r = abs(a) ** (1.0 / 3.0)
    theta = cmath.phase(a)
    return r * cmath.exp(1j * theta)


# -- parsing / formatting for the document format ----------------------

def parse_rational(text) -> Fraction:
    """Parse 'p/q' or 'p' (also accepts ints)."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text)
    raise ValueError(f"not an exact rational literal: {text!r}")


def format_rational(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
