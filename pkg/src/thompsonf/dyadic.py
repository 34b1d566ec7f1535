"""Exact arithmetic in the ring of dyadic rationals Z[1/2].

A :class:`Dyadic` stores ``num / 2**exp`` with ``exp >= 0`` and, whenever
``exp > 0``, an odd numerator.  Python integers give arbitrary precision, so
long compositions of PL maps never lose bits.
"""

from __future__ import annotations

import re

__all__ = [
    "Dyadic",
    "ZERO",
    "ONE",
    "HALF",
    "add",
    "mul",
    "compare",
    "parse",
    "format_dyadic",
    "log2_ratio",
]

_GRAMMAR = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def _normalize(num: int, exp: int) -> tuple[int, int]:
    if num == 0:
        return 0, 0
    if exp < 0:
        return num << -exp, 0
    if exp and not num & 1:
        tz = (num & -num).bit_length() - 1
        if tz > exp:
            tz = exp
        return num >> tz, exp - tz
    return num, exp


class Dyadic:
    """An immutable dyadic rational ``num / 2**exp`` in canonical form."""

    __slots__ = ("num", "exp")

    num: int
    exp: int

    def __init__(self, num: int = 0, exp: int = 0):
        if isinstance(num, Dyadic):
            num, exp = num.num, num.exp + exp
        n, e = _normalize(int(num), int(exp))
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "exp", e)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.num, self.exp))

    @classmethod
    def _raw(cls, num: int, exp: int) -> "Dyadic":
        # caller guarantees canonical form
        d = object.__new__(cls)
        object.__setattr__(d, "num", num)
        object.__setattr__(d, "exp", exp)
        return d

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0)
        if isinstance(value, str):
            return parse(value)
        raise TypeError(f"cannot interpret {value!r} as a dyadic rational")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic._raw(other, 0)
        a, b = self.exp, other.exp
        if a == b:
            return Dyadic._raw(*_normalize(self.num + other.num, a))
        if a > b:
            return Dyadic._raw(self.num + (other.num << (a - b)), a)
        return Dyadic._raw((self.num << (b - a)) + other.num, b)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic._raw(-self.num, self.exp)

    def __sub__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic._raw(other, 0)
        return self + Dyadic._raw(-other.num, other.exp)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            return Dyadic._raw(*_normalize(self.num * other, self.exp))
        # product of odd numerators stays odd
        return Dyadic._raw(*_normalize(self.num * other.num, self.exp + other.exp))

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Divide by a power of two (possibly negated); other divisors raise."""
        other = Dyadic.coerce(other)
        if other.num == 0:
            raise ZeroDivisionError("division by zero")
        mag = abs(other.num)
        if mag & (mag - 1):
            raise ValueError(f"{other} is not a power of two; quotient leaves Z[1/2]")
        shift = mag.bit_length() - 1
        num = self.num if other.num > 0 else -self.num
        return Dyadic(num, self.exp + shift - other.exp)

    def shift(self, k: int) -> "Dyadic":
        """Multiply by ``2**k`` (k may be negative)."""
        if k == 0 or self.num == 0:
            return self
        return Dyadic._raw(*_normalize(self.num, self.exp - k))

    def half(self) -> "Dyadic":
        return self.shift(-1)

    def __abs__(self):
        return self if self.num >= 0 else -self

    # -- comparison -------------------------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        a, b = self.exp, other.exp
        if a == b:
            x, y = self.num, other.num
        elif a > b:
            x, y = self.num, other.num << (a - b)
        else:
            x, y = self.num << (b - a), other.num
        return (x > y) - (x < y)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, int):
            return self.exp == 0 and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.exp))

    def __lt__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic._raw(other, 0)
        return self._cmp(other) < 0

    def __le__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic._raw(other, 0)
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic._raw(other, 0)
        return self._cmp(other) > 0

    def __ge__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic._raw(other, 0)
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.num != 0

    # -- conversion -------------------------------------------------------

    @property
    def denominator(self) -> int:
        return 1 << self.exp

    def is_power_of_two(self) -> bool:
        """True for values 2**s with s any integer."""
        return self.num > 0 and self.num & (self.num - 1) == 0

    def log2(self) -> int:
        if not self.is_power_of_two():
            raise ValueError(f"{self} is not a power of two")
        return self.num.bit_length() - 1 - self.exp

    def __str__(self):
        return format_dyadic(self)

    def __repr__(self):
        return f"Dyadic({format_dyadic(self)!r})"

    def __float__(self):
        # display helper only; the library never computes in floating point
        return self.num / (1 << self.exp)


ZERO = Dyadic._raw(0, 0)
ONE = Dyadic._raw(1, 0)
HALF = Dyadic._raw(1, 1)


def add(a: Dyadic, b: Dyadic) -> Dyadic:
    return a + b


def mul(a: Dyadic, b: Dyadic) -> Dyadic:
    return a * b


def compare(a: Dyadic, b: Dyadic) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    return Dyadic.coerce(a)._cmp(Dyadic.coerce(b))


def parse(text: str) -> Dyadic:
    """Parse ``"3"``, ``"-5/8"`` and the like into a canonical Dyadic.

    >>> parse("2/4")
    Dyadic('1/2')
    """
    match = _GRAMMAR.match(text)
    if match is None:
        raise ValueError(f"malformed dyadic literal: {text!r}")
    num = int(match.group(1))
    if match.group(2) is None:
        return Dyadic(num)
    den = int(match.group(2))
    if den <= 0 or den & (den - 1):
        raise ValueError(f"denominator of {text!r} is not a power of two")
    return Dyadic(num, den.bit_length() - 1)


def format_dyadic(d: Dyadic) -> str:
    if d.exp == 0:
        return str(d.num)
    return f"{d.num}/{1 << d.exp}"


def log2_ratio(a: Dyadic, b: Dyadic) -> int | None:
    """Return ``s`` with ``a == 2**s * b`` when such an integer exists, else None.

    Both arguments must be nonzero and of the same sign.
    """
    if a.num == 0 or b.num == 0:
        return None
    # canonical numerators are odd unless exp == 0; strip remaining factors of 2
    an, ae = a.num, a.exp
    bn, be = b.num, b.exp
    tza = (an & -an).bit_length() - 1
    tzb = (bn & -bn).bit_length() - 1
    if an >> tza != bn >> tzb:
        return None
    return (tza - ae) - (tzb - be)
