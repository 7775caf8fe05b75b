"""Exact scalars in the tower Q ⊂ Q(i) ⊂ Q(i, √2).

A :class:`Scalar` stores its rational coordinates over the basis
``1, i, s2, i*s2`` (``s2`` is √2), truncated to the smallest field that
contains it.  Equality is therefore componentwise.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Union

__all__ = ["Field", "Scalar", "ScalarParseError", "as_scalar", "ZERO", "ONE", "I", "SQRT2"]


class Field(enum.IntEnum):
    """Supported fields; the value is the dimension over Q."""

    Q = 1
    QI = 2
    QI_SQRT2 = 4

    @classmethod
    def join(cls, *fields: "Field") -> "Field":
        return cls(max(fields, default=cls.Q))


class ScalarParseError(ValueError):
    pass


Number = Union["Scalar", int, Fraction]

_F0 = Fraction(0)


def _cmul(p, q, r, t):
    return p * r - q * t, p * t + q * r


def _trim(c: tuple) -> tuple:
    if len(c) == 4 and not c[2] and not c[3]:
        c = c[:2]
    if len(c) == 2 and not c[1]:
        c = c[:1]
    return c


def _pad(c: tuple, n: int) -> tuple:
    return c + (_F0,) * (n - len(c))


class Scalar:
    __slots__ = ("c",)

    def __init__(self, *coords):
        if not coords:
            coords = (0,)
        if len(coords) not in (1, 2, 4):
            raise ValueError("a scalar has 1, 2 or 4 rational coordinates")
        self.c = _trim(tuple(Fraction(x) for x in coords))

    @classmethod
    def _raw(cls, c: tuple) -> "Scalar":
        s = object.__new__(cls)
        s.c = _trim(c)
        return s

    @property
    def field(self) -> Field:
        return Field(len(self.c))

    @property
    def coords(self) -> tuple:
        return self.c

    def coords_in(self, field: Field) -> tuple:
        return _pad(self.c, int(field))

    # ---- predicates -------------------------------------------------
    def is_zero(self) -> bool:
        return len(self.c) == 1 and not self.c[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return len(self.c) == 1

    def is_real(self) -> bool:
        c = self.c
        if len(c) == 1:
            return True
        if len(c) == 2:
            return not c[1]
        return not c[1] and not c[3]

    def conjugate(self) -> "Scalar":
        c = self.c
        if len(c) == 1:
            return self
        if len(c) == 2:
            return Scalar._raw((c[0], -c[1]))
        return Scalar._raw((c[0], -c[1], c[2], -c[3]))

    def real_part(self) -> "Scalar":
        c = _pad(self.c, 4)
        return Scalar._raw((c[0], _F0, c[2], _F0))

    def imag_part(self) -> "Scalar":
        c = _pad(self.c, 4)
        return Scalar._raw((c[1], _F0, c[3], _F0))

    def to_fraction(self) -> Fraction:
        if len(self.c) != 1:
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    # ---- arithmetic -------------------------------------------------
    def __add__(self, other: Number) -> "Scalar":
        o = as_scalar(other).c
        a = self.c
        if len(a) == 1 and len(o) == 1:
            return Scalar._raw((a[0] + o[0],))
        n = max(len(a), len(o))
        a, o = _pad(a, n), _pad(o, n)
        return Scalar._raw(tuple(x + y for x, y in zip(a, o)))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(tuple(-x for x in self.c))

    def __sub__(self, other: Number) -> "Scalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other: Number) -> "Scalar":
        return as_scalar(other) + (-self)

    def __mul__(self, other: Number) -> "Scalar":
        b = as_scalar(other).c
        a = self.c
        if len(a) == 1:
            x = a[0]
            return Scalar._raw(tuple(x * y for y in b)) if x else ZERO
        if len(b) == 1:
            y = b[0]
            return Scalar._raw(tuple(x * y for x in a)) if y else ZERO
        if len(a) == 2 and len(b) == 2:
            return Scalar._raw(_cmul(a[0], a[1], b[0], b[1]))
        a, b = _pad(a, 4), _pad(b, 4)
        # (u + v s)(w + z s) = (uw + 2vz) + (uz + vw) s
        uw = _cmul(a[0], a[1], b[0], b[1])
        vz = _cmul(a[2], a[3], b[2], b[3])
        uz = _cmul(a[0], a[1], b[2], b[3])
        vw = _cmul(a[2], a[3], b[0], b[1])
        return Scalar._raw((uw[0] + 2 * vz[0], uw[1] + 2 * vz[1], uz[0] + vw[0], uz[1] + vw[1]))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        c = self.c
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if len(c) == 1:
            return Scalar._raw((1 / c[0],))
        if len(c) == 2:
            nrm = c[0] * c[0] + c[1] * c[1]
            return Scalar._raw((c[0] / nrm, -c[1] / nrm))
        u = Scalar._raw((c[0], c[1]))
        v = Scalar._raw((c[2], c[3]))
        norm = u * u - 2 * v * v  # lies in Q(i), nonzero since √2 ∉ Q(i)
        ninv = norm.inverse()
        w = u * ninv
        z = -(v * ninv)
        wc, zc = _pad(w.c, 2), _pad(z.c, 2)
        return Scalar._raw((wc[0], wc[1], zc[0], zc[1]))

    def __truediv__(self, other: Number) -> "Scalar":
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other: Number) -> "Scalar":
        return as_scalar(other) * self.inverse()

    # ---- comparison / hashing ---------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return len(self.c) == 1 and self.c[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c) if len(self.c) > 1 else hash(self.c[0])

    def digit_size(self) -> int:
        """Total decimal digit count of all numerators and denominators."""
        return sum(len(str(abs(x.numerator))) + len(str(x.denominator)) for x in self.c)

    # ---- text -------------------------------------------------------
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar('{format_scalar(self)}')"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)


def as_scalar(x: Number) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._raw((Fraction(x),))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
SQRT2 = Scalar(0, 0, 1, 0)

_UNITS = ("", "*i", "*s2", "*i*s2")
_TERM = re.compile(r"([+-]?)([^+-]+)")
_NUM = re.compile(r"(\d+)(?:/(\d+))?\Z")


def _frac_text(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical text: ``a/b+c/d*i+e/f*s2+g/h*i*s2`` with zero terms omitted."""
    parts = []
    for x, unit in zip(s.c, _UNITS):
        if not x:
            continue
        body = _frac_text(abs(x)) + unit
        if x < 0:
            parts.append("-" + body)
        else:
            parts.append(("+" if parts else "") + body)
    return "".join(parts) if parts else "0"


def parse_scalar(text: str) -> Scalar:
    src = re.sub(r"\s*([+*/-])\s*", r"\1", text.strip())
    if not src:
        raise ScalarParseError("empty scalar text")
    if any(ch.isspace() for ch in src):
        raise ScalarParseError(f"malformed scalar {text!r}")
    coords = [_F0] * 4
    pos = 0
    for k, m in enumerate(_TERM.finditer(src)):
        if m.start() != pos or (k > 0 and not m.group(1)):
            raise ScalarParseError(f"malformed scalar {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        factors = m.group(2).split("*")
        coef = Fraction(1)
        if factors and _NUM.match(factors[0]):
            num = _NUM.match(factors[0])
            den = int(num.group(2)) if num.group(2) is not None else 1
            if den == 0:
                raise ScalarParseError(f"zero denominator in {text!r}")
            coef = Fraction(int(num.group(1)), den)
            factors = factors[1:]
        elif factors[0] not in ("i", "s2"):
            raise ScalarParseError(f"malformed term {m.group(0)!r} in {text!r}")
        if len(set(factors)) != len(factors) or any(f not in ("i", "s2") for f in factors):
            raise ScalarParseError(f"malformed term {m.group(0)!r} in {text!r}")
        slot = ("i" in factors) + 2 * ("s2" in factors)
        coords[slot] += sign * coef
    if pos != len(src):
        raise ScalarParseError(f"malformed scalar {text!r}")
    return Scalar._raw(tuple(coords))
