"""Elements of Thompson's group F as exact PL homeomorphisms of [0, 1].

A :class:`PLMap` is stored as its canonical breakpoint list: x- and
y-coordinates strictly increasing from (0, 0) to (1, 1), every segment of
slope ``2**s``, and no breakpoint where the slope fails to change.  With
that normalization, equality of group elements is tuple equality.

Composition follows function notation: ``compose(f, g)(x) == f(g(x))``, so
``f * g`` applies ``g`` first.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dyadic import ONE, ZERO, Dyadic, log2_ratio, parse

__all__ = [
    "PLMap",
    "SupportSet",
    "identity",
    "generator",
    "compose",
    "invert",
    "evaluate",
    "support",
    "slope_at_endpoint",
    "from_partitions",
    "rescale_into",
    "standard_pieces",
    "is_standard_interval",
]


def _slopes(xs: Sequence[Dyadic], ys: Sequence[Dyadic]) -> tuple[int, ...]:
    out = []
    for i in range(len(xs) - 1):
        dx = xs[i + 1] - xs[i]
        dy = ys[i + 1] - ys[i]
        if dx.num <= 0 or dy.num <= 0:
            raise ValueError("breakpoints must be strictly increasing in x and y")
        s = log2_ratio(dy, dx)
        if s is None:
            raise ValueError(
                f"segment [{xs[i]}, {xs[i + 1]}] -> [{ys[i]}, {ys[i + 1]}] "
                "does not have a power-of-two slope"
            )
        out.append(s)
    return tuple(out)


def _drop_collinear(xs, ys, ss):
    if len(ss) < 2:
        return tuple(xs), tuple(ys), tuple(ss)
    nx, ny, ns = [xs[0]], [ys[0]], []
    for i, s in enumerate(ss):
        if ns and ns[-1] == s:
            nx[-1] = xs[i + 1]
            ny[-1] = ys[i + 1]
        else:
            nx.append(xs[i + 1])
            ny.append(ys[i + 1])
            ns.append(s)
    return tuple(nx), tuple(ny), tuple(ns)


def _compose_raw(fx, fy, fs, gx, gy, gs):
    """Breakpoints of f∘g for PL bijections with g's range equal to f's domain."""
    xs = [gx[0]]
    ys = [fy[0]]
    ss = []
    gi = fj = 1
    ng = len(gx)
    while gi < ng:
        t1 = gy[gi]
        t2 = fx[fj]
        slope = gs[gi - 1] + fs[fj - 1]
        c = t1._cmp(t2)
        if c == 0:
            x, y = gx[gi], fy[fj]
            gi += 1
            fj += 1
        elif c < 0:
            x = gx[gi]
            y = fy[fj - 1] + (t1 - fx[fj - 1]).shift(fs[fj - 1])
            gi += 1
        else:
            x = gx[gi - 1] + (t2 - gy[gi - 1]).shift(-gs[gi - 1])
            y = fy[fj]
            fj += 1
        if ss and ss[-1] == slope:
            xs[-1] = x
            ys[-1] = y
        else:
            xs.append(x)
            ys.append(y)
            ss.append(slope)
    return tuple(xs), tuple(ys), tuple(ss)


class PLMap:
    """A PL homeomorphism of [0,1] with dyadic breakpoints and power-of-two slopes."""

    __slots__ = ("xs", "ys", "slopes", "_hash")

    def __init__(self, breakpoints: Iterable[tuple] = ((0, 0), (1, 1))):
        pts = [(Dyadic.coerce(x), Dyadic.coerce(y)) for x, y in breakpoints]
        if len(pts) < 2 or pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
            raise ValueError("breakpoints must start at (0, 0) and end at (1, 1)")
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        ss = _slopes(xs, ys)
        self.xs, self.ys, self.slopes = _drop_collinear(xs, ys, ss)
        self._hash = None

    @classmethod
    def _make(cls, xs, ys, ss) -> "PLMap":
        f = object.__new__(cls)
        f.xs, f.ys, f.slopes = xs, ys, ss
        f._hash = None
        return f

    # -- structure -------------------------------------------------------

    @property
    def breakpoints(self) -> list[tuple[Dyadic, Dyadic]]:
        return list(zip(self.xs, self.ys))

    @property
    def interior_breakpoints(self) -> list[tuple[Dyadic, Dyadic]]:
        return list(zip(self.xs[1:-1], self.ys[1:-1]))

    def __len__(self):
        # number of breakpoints including the two endpoints
        return len(self.xs)

    def is_identity(self) -> bool:
        return len(self.xs) == 2

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.xs == other.xs and self.ys == other.ys

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.xs, self.ys))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"({x}, {y})" for x, y in self.interior_breakpoints)
        return f"PLMap[{inner}]" if inner else "PLMap[id]"

    def __reduce__(self):
        return (PLMap._make, (self.xs, self.ys, self.slopes))

    # -- group operations ------------------------------------------------

    def __mul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def inverse(self) -> "PLMap":
        return PLMap._make(self.ys, self.xs, tuple(-s for s in self.slopes))

    def __pow__(self, n: int) -> "PLMap":
        base = self if n >= 0 else self.inverse()
        result = identity()
        for _ in range(abs(n)):
            result = compose(result, base)
        return result

    def __call__(self, x) -> Dyadic:
        return evaluate(self, x)

    def apply_inverse(self, y) -> Dyadic:
        y = Dyadic.coerce(y)
        if y < ZERO or y > ONE:
            raise ValueError(f"{y} lies outside [0, 1]")
        i = bisect_right(self.ys, y) - 1
        if i == len(self.ys) - 1:
            return ONE
        return self.xs[i] + (y - self.ys[i]).shift(-self.slopes[i])

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {"breakpoints": [[str(x), str(y)] for x, y in zip(self.xs, self.ys)]}

    @classmethod
    def from_dict(cls, data: dict) -> "PLMap":
        return cls((parse(x), parse(y)) for x, y in data["breakpoints"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "PLMap":
        return cls.from_dict(json.loads(text))


_IDENTITY = PLMap._make((ZERO, ONE), (ZERO, ONE), (0,))


def identity() -> PLMap:
    return _IDENTITY


def generator(n: int) -> PLMap:
    """The standard generator x_n; x_0 has breakpoints (1/2, 1/4), (3/4, 1/2)."""
    if n < 0:
        raise ValueError("generator index must be non-negative")
    # x_n is x_0 conjugated into [1 - 2^-n, 1] by an affine map of slope 2^-n
    base = ONE - Dyadic(1, n)
    xs = [ZERO]
    ys = [ZERO]
    if n > 0:
        xs.append(base)
        ys.append(base)
    for bx, by in ((Dyadic(1, 1), Dyadic(1, 2)), (Dyadic(3, 2), Dyadic(1, 1)), (ONE, ONE)):
        xs.append(base + bx.shift(-n))
        ys.append(base + by.shift(-n))
    ss = (0, -1, 0, 1) if n > 0 else (-1, 0, 1)
    return PLMap._make(tuple(xs), tuple(ys), ss)


def compose(f: PLMap, g: PLMap) -> PLMap:
    """Return f∘g, the map x -> f(g(x))."""
    if len(f.xs) == 2:
        return g
    if len(g.xs) == 2:
        return f
    return PLMap._make(*_compose_raw(f.xs, f.ys, f.slopes, g.xs, g.ys, g.slopes))


def invert(f: PLMap) -> PLMap:
    return f.inverse()


def evaluate(f: PLMap, x) -> Dyadic:
    x = Dyadic.coerce(x)
    if x < ZERO or x > ONE:
        raise ValueError(f"{x} lies outside [0, 1]")
    i = bisect_right(f.xs, x) - 1
    if i == len(f.xs) - 1:
        return ONE
    return f.ys[i] + (x - f.xs[i]).shift(f.slopes[i])


@dataclass(frozen=True)
class SupportSet:
    """Closure of the moved set, as sorted disjoint closed intervals."""

    intervals: tuple[tuple[Dyadic, Dyadic], ...]

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def hull(self) -> tuple[Dyadic, Dyadic] | None:
        if not self.intervals:
            return None
        return self.intervals[0][0], self.intervals[-1][1]

    def within(self, a, b) -> bool:
        """True when every interval lies inside [a, b]."""
        a, b = Dyadic.coerce(a), Dyadic.coerce(b)
        return all(a <= lo and hi <= b for lo, hi in self.intervals)

    def interiors_disjoint(self, other: "SupportSet") -> bool:
        for lo, hi in self.intervals:
            for lo2, hi2 in other.intervals:
                if lo < hi2 and lo2 < hi:
                    return False
        return True

    def to_list(self) -> list[list[str]]:
        return [[str(lo), str(hi)] for lo, hi in self.intervals]

    def __str__(self):
        if not self.intervals:
            return "{}"
        return " U ".join(f"[{lo}, {hi}]" for lo, hi in self.intervals)


def support(f: PLMap) -> SupportSet:
    out: list[list[Dyadic]] = []
    xs, ys = f.xs, f.ys
    for i in range(len(xs) - 1):
        if xs[i] == ys[i] and xs[i + 1] == ys[i + 1]:
            continue
        if out and out[-1][1] == xs[i]:
            out[-1][1] = xs[i + 1]
        else:
            out.append([xs[i], xs[i + 1]])
    return SupportSet(tuple((lo, hi) for lo, hi in out))


def slope_at_endpoint(f: PLMap, which: str) -> int:
    """Exponent ``s`` of the slope ``2**s`` next to 0 (``"zero"``) or 1 (``"one"``)."""
    if which in ("zero", "0", 0):
        return f.slopes[0]
    if which in ("one", "1", 1):
        return f.slopes[-1]
    raise ValueError(f"endpoint must be 'zero' or 'one', not {which!r}")


# -- standard dyadic intervals ----------------------------------------------


def is_standard_interval(a: Dyadic, b: Dyadic) -> bool:
    """True for [p/2^q, (p+1)/2^q]."""
    length = b - a
    if length.num <= 0 or not length.is_power_of_two():
        return False
    return a.exp <= -length.log2() or a.num == 0


def standard_pieces(a: Dyadic, b: Dyadic) -> list[tuple[Dyadic, int]]:
    """Greedy left-to-right split of [a, b] into standard dyadic intervals.

    Each piece is returned as ``(start, q)`` meaning ``[start, start + 2^-q]``.
    """
    pieces = []
    while a < b:
        length = b - a
        # smallest q with 2^-q <= length
        q_len = length.exp - (length.num.bit_length() - 1)
        q = q_len if a.num == 0 else max(a.exp, q_len)
        pieces.append((a, q))
        a = a + Dyadic(1, q)
    return pieces


def _split_to(pieces: list[tuple[Dyadic, int]], count: int) -> list[tuple[Dyadic, int]]:
    pieces = list(pieces)
    while len(pieces) < count:
        k = min(range(len(pieces)), key=lambda i: pieces[i][1])
        start, q = pieces[k]
        pieces[k : k + 1] = [(start, q + 1), (start + Dyadic(1, q + 1), q + 1)]
    return pieces


def _interval_map_points(a, b, c, d) -> list[tuple[Dyadic, Dyadic]]:
    """Breakpoints (excluding the right end) of a dyadic PL map [a,b] -> [c,d]."""
    dom = standard_pieces(a, b)
    ran = standard_pieces(c, d)
    n = max(len(dom), len(ran))
    dom = _split_to(dom, n)
    ran = _split_to(ran, n)
    return [(p[0], r[0]) for p, r in zip(dom, ran)]


def from_partitions(xs: Sequence, ys: Sequence) -> PLMap:
    """An element f of F with ``f(xs[i]) == ys[i]`` for every i.

    Both lists must be strictly increasing dyadic partitions of [0, 1].  Where
    consecutive points are fixed (``xs[i-1] == ys[i-1]`` and ``xs[i] == ys[i]``)
    the result is the identity on ``[xs[i-1], xs[i]]``.
    """
    xs = [Dyadic.coerce(x) for x in xs]
    ys = [Dyadic.coerce(y) for y in ys]
    if len(xs) != len(ys):
        raise ValueError("partitions must have equal length")
    if len(xs) < 2 or xs[0] != ZERO or ys[0] != ZERO or xs[-1] != ONE or ys[-1] != ONE:
        raise ValueError("partitions must run from 0 to 1")
    for seq in (xs, ys):
        for i in range(len(seq) - 1):
            if not seq[i] < seq[i + 1]:
                raise ValueError("partitions must be strictly increasing")
    px: list[Dyadic] = []
    py: list[Dyadic] = []
    for i in range(len(xs) - 1):
        a, b, c, d = xs[i], xs[i + 1], ys[i], ys[i + 1]
        if a == c and b == d:
            px.append(a)
            py.append(c)
            continue
        for p, r in _interval_map_points(a, b, c, d):
            px.append(p)
            py.append(r)
    px.append(ONE)
    py.append(ONE)
    ss = _slopes(px, py)
    return PLMap._make(*_drop_collinear(px, py, ss))


def _interval_chart(a: Dyadic, b: Dyadic):
    """A PL bijection psi: [0,1] -> [a,b] with dyadic data, as raw arrays."""
    ran = standard_pieces(a, b)
    dom = _split_to([(ZERO, 0)], len(ran))
    xs = [p[0] for p in dom] + [ONE]
    ys = [r[0] for r in ran] + [b]
    return _drop_collinear(xs, ys, _slopes(xs, ys))


def rescale_into(f: PLMap, a, b) -> PLMap:
    """Conjugate ``f`` into [a, b]: psi∘f∘psi^-1 there, the identity elsewhere."""
    a, b = Dyadic.coerce(a), Dyadic.coerce(b)
    if not (ZERO <= a < b <= ONE):
        raise ValueError(f"need 0 <= a < b <= 1, got [{a}, {b}]")
    if f.is_identity():
        return f
    px, py, ps = _interval_chart(a, b)
    # psi^-1: [a,b] -> [0,1]
    ix, iy, is_ = py, px, tuple(-s for s in ps)
    mx, my, ms = _compose_raw(f.xs, f.ys, f.slopes, ix, iy, is_)
    cx, cy, cs = _compose_raw(px, py, ps, mx, my, ms)
    xs = list(cx)
    ys = list(cy)
    if a > ZERO:
        xs.insert(0, ZERO)
        ys.insert(0, ZERO)
    if b < ONE:
        xs.append(ONE)
        ys.append(ONE)
    return PLMap._make(*_drop_collinear(xs, ys, _slopes(xs, ys)))
