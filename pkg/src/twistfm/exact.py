"""Exact scalars: rationals and Gaussian rationals, plus their text forms.

Text forms are the ones used on the wire by the CLI: a rational is
``"p/q"`` (or ``"p"`` when integral) and a Gaussian rational is
``"a+bi"`` with ``a`` and ``b`` rationals, e.g. ``"1/2-3/4i"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InputError

Rational = Union[int, Fraction]


def to_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction (never floats)."""
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    if isinstance(x, GaussianRational) and x.imag == 0:
        return x.real
    raise InputError(f"not an exact rational: {x!r}")


def format_fraction(x: Rational) -> str:
    return str(Fraction(x))


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """An element ``real + imag*i`` of Q(i)."""

    real: Fraction = Fraction(0)
    imag: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "real", to_fraction(self.real))
        object.__setattr__(self, "imag", to_fraction(self.imag))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return parse_gaussian(x)
        return cls(to_fraction(x))

    def __add__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.real + other.real, self.imag + other.imag)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __sub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.real - other.real, self.imag - other.imag)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.real, self.imag, other.real, other.imag
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.real, -self.imag)

    def norm(self) -> Fraction:
        return self.real * self.real + self.imag * self.imag

    def __truediv__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * other.conjugate()
        return GaussianRational(num.real / n, num.imag / n)

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self.real == other.real and self.imag == other.imag

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __str__(self):
        return format_gaussian(self)


def _maybe(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational(Fraction(x))
    return None


_GAUSS_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*i)?\s*$"
)


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``"a"``, ``"a+bi"``, ``"a-bi"``, ``"-bi"`` or ``"i"`` forms."""
    s = text.replace(" ", "")
    if s == "i":
        s = "+i"
    if s.endswith("i") and s[:1].isdigit() and not re.search(r"\d[+-]", s):
        s = "+" + s
    m = _GAUSS_RE.match(s)
    if not m or (m.group("re") is None and m.group("sign") is None):
        raise InputError(f"not a Gaussian rational: {text!r}")
    real = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    imag = Fraction(0)
    if m.group("sign"):
        imag = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            imag = -imag
    return GaussianRational(real, imag)


def format_gaussian(z: GaussianRational) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real}{sign}{abs(z.imag)}i"
