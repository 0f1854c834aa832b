"""Exact Gaussian-rational scalars.

A :class:`GaussianRational` is a pair of reduced rationals (re, im) and is
the coefficient field for everything else in the package.  Arithmetic is
exact; equal values have identical representations, so results are
bit-reproducible.

The rational backend is ``gmpy2.mpq`` when available (same canonical
reduced form and string syntax as ``fractions.Fraction``, several times
faster), with ``fractions.Fraction`` as fallback.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import DivisionByZero, ParseError

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Q = Fraction

_QTYPES = (int, Fraction) if _Q is Fraction else (int, Fraction, type(_Q(0)))


def rational(value, den=None):
    """Coerce to the canonical rational backend type."""
    if den is not None:
        return _Q(value, den)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed on the exact path")
    return _Q(value)


def parse_rational(text):
    """Parse "p/q" or "p" into an exact rational."""
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            return _Q(int(p), int(q))
        return _Q(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def format_rational(q):
    """Render as "p/q" or "p" (the shared serialization)."""
    return str(q)


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return _Q(rn, rd)
    return None


class GaussianRational:
    """Element of Q(i), stored as exact (re, im) rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", rational(re))
        object.__setattr__(self, "im", rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_json(cls, obj):
        """Accept "p/q" (real) or a two-element ["re", "im"] array."""
        if isinstance(obj, str):
            return cls(parse_rational(obj))
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return cls(parse_rational(str(obj[0])), parse_rational(str(obj[1])))
        raise ParseError(f"bad Gaussian rational {obj!r}")

    def to_json(self):
        if self.im == 0:
            return format_rational(self.re)
        return [format_rational(self.re), format_rational(self.im)]

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, _QTYPES):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        n = c * c + d * d
        if n == 0:
            raise DivisionByZero("division by zero in Q(i)")
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def modulus_squared(self):
        """|a|^2 = a * conj(a); the result has zero imaginary part."""
        return GaussianRational(self.re * self.re + self.im * self.im)

    def inverse(self):
        return GaussianRational(1) / self

    # -- predicates & views ----------------------------------------------

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_real(self):
        return self.im == 0

    def as_rational(self):
        """The underlying rational of a real value."""
        if self.im != 0:
            raise ValueError(f"{self} is not real")
        return self.re

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        return f"[{format_rational(self.re)},{format_rational(self.im)}]"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(re=0, im=0):
    """Shorthand constructor used throughout tests and demos."""
    return GaussianRational(re, im)


def as_scalar(x):
    """Coerce ints, rationals, "p/q" strings and ["re","im"] pairs to Q(i)."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, _QTYPES):
        return GaussianRational(x)
    if isinstance(x, (str, list, tuple)):
        return GaussianRational.from_json(x)
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
