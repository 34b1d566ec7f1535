"""Free-group words, markings of F, and evaluation of words in a marking.

Letters are small integers: generator ``g`` is ``2*g`` and its inverse is
``2*g + 1``, so inverting a letter is ``l ^ 1`` and the natural integer order
``a < A < b < B < ...`` is the lexicographic order used for enumeration and
for canonical cyclic representatives.

Text form: lowercase ``a, b, c, ...`` name generators 0, 1, 2, ...;
uppercase is the inverse; ``^k`` repeats (negative k inverts), e.g.
``"a^2 B c^-1"``.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Iterator, Sequence

from .dyadic import Dyadic
from .plhomeo import PLMap, compose, generator, identity, slope_at_endpoint

__all__ = [
    "Word",
    "Marking",
    "letter",
    "free_reduce",
    "substitute",
    "delete_generator",
    "exponent_sum",
    "commutator",
    "evaluate",
    "evaluate_at",
    "cyclic_reduce",
    "canonical_cyclic",
    "enumerate_reduced",
    "enumerate_relator_candidates",
    "count_reduced",
    "standard_marking",
]

_TOKEN = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")


def letter(gen: int, sign: int = 1) -> int:
    if gen < 0 or sign not in (1, -1):
        raise ValueError(f"bad letter ({gen}, {sign})")
    return 2 * gen + (sign < 0)


def _reduce(letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return out


class Word(tuple):
    """A freely reduced word, stored as a tuple of letter codes."""

    __slots__ = ()

    def __new__(cls, letters: Iterable = ()):
        return tuple.__new__(cls, _reduce(_as_codes(letters)))

    @classmethod
    def _trusted(cls, letters: Iterable[int]) -> "Word":
        return tuple.__new__(cls, letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        codes: list[int] = []
        pos = 0
        text = text.strip()
        if text == "1":
            return cls()
        for match in _TOKEN.finditer(text):
            gap = text[pos : match.start()]
            if gap.strip():
                raise ValueError(f"unparseable word text {text!r} near {gap!r}")
            pos = match.end()
            ch, power = match.group(1), match.group(2)
            code = letter(ord(ch.lower()) - ord("a"), -1 if ch.isupper() else 1)
            k = 1 if power is None else int(power)
            if k < 0:
                code ^= 1
            codes.extend([code] * abs(k))
        if text[pos:].strip():
            raise ValueError(f"unparseable word text {text!r}")
        return cls(codes)

    @classmethod
    def gen(cls, g: int, power: int = 1) -> "Word":
        return cls([letter(g, 1 if power > 0 else -1)] * abs(power))

    def letters(self) -> list[tuple[int, int]]:
        """The word as (generator, sign) pairs."""
        return [(x >> 1, -1 if x & 1 else 1) for x in self]

    def inverse(self) -> "Word":
        return Word._trusted(x ^ 1 for x in reversed(self))

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, tuple):
            return NotImplemented
        return Word(tuple(self) + tuple(other))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(tuple(base) * abs(n))

    def max_gen(self) -> int:
        """Largest generator index used, or -1 for the empty word."""
        return max((x >> 1 for x in self), default=-1)

    def sort_key(self):
        return (len(self), tuple(self))

    def __str__(self):
        if not self:
            return "1"
        parts = []
        i = 0
        while i < len(self):
            j = i
            while j < len(self) and self[j] == self[i]:
                j += 1
            g, inv = self[i] >> 1, self[i] & 1
            name = chr(ord("a") + g) if g < 26 else f"<{g}>"
            name = name.upper() if inv else name
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return " ".join(parts)

    def __repr__(self):
        return f"Word({str(self)!r})"


def _as_codes(letters: Iterable) -> Iterator[int]:
    for x in letters:
        if isinstance(x, tuple):
            yield letter(*x)
        else:
            yield int(x)


def free_reduce(letters: Iterable) -> Word:
    """Freely reduce a raw sequence of letter codes or (gen, sign) pairs."""
    if isinstance(letters, str):
        return Word.parse(letters)
    return Word(letters)


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Apply the free-group homomorphism sending generator j to ``images[j]``."""
    if w.max_gen() >= len(images):
        raise ValueError(f"word uses generator {w.max_gen()} but only {len(images)} images given")
    inv = [im.inverse() for im in images]
    out: list[int] = []
    for x in w:
        out.extend(inv[x >> 1] if x & 1 else images[x >> 1])
    return Word(out)


def delete_generator(w: Word, gen: int) -> Word:
    return Word(x for x in w if x >> 1 != gen)


def exponent_sum(w: Word, gen: int) -> int:
    return sum(-1 if x & 1 else 1 for x in w if x >> 1 == gen)


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x^-1 y^-1 x y."""
    return Word(tuple(x.inverse()) + tuple(y.inverse()) + tuple(x) + tuple(y))


# -- cyclic words ------------------------------------------------------------


def cyclic_reduce(w: Word) -> Word:
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == w[j - 1] ^ 1:
        i += 1
        j -= 1
    return Word._trusted(w[i:j])


def _least_rotation(t: tuple) -> tuple:
    return min(t[i:] + t[:i] for i in range(len(t)))


def canonical_cyclic(w: Word) -> Word:
    """Least rotation of the cyclic reduction of ``w`` or of its inverse."""
    c = cyclic_reduce(w)
    if not c:
        return c
    t = tuple(c)
    ti = tuple(x ^ 1 for x in reversed(t))
    return Word._trusted(min(_least_rotation(t), _least_rotation(ti)))


def _is_canonical(t: tuple) -> bool:
    n = len(t)
    if t[0] == t[-1] ^ 1:
        return False
    for i in range(1, n):
        if t[i:] + t[:i] < t:
            return False
    ti = tuple(x ^ 1 for x in reversed(t))
    for i in range(n):
        if ti[i:] + ti[:i] < t:
            return False
    return True


def count_reduced(k: int, length: int) -> int:
    """Number of reduced words of exactly ``length`` letters over rank ``k``."""
    if length == 0:
        return 1
    return 2 * k * (2 * k - 1) ** (length - 1)


def _reduced_of_length(k: int, length: int) -> Iterator[tuple]:
    n = 2 * k
    if length == 0:
        yield ()
        return
    buf = [0] * length

    def rec(pos: int, prev: int):
        if pos == length:
            yield tuple(buf)
            return
        forbidden = prev ^ 1 if prev >= 0 else -1
        for x in range(n):
            if x != forbidden:
                buf[pos] = x
                yield from rec(pos + 1, x)

    yield from rec(0, -1)


def enumerate_reduced(k: int, max_length: int, min_length: int = 1) -> Iterator[Word]:
    """Every reduced word with min_length <= length <= max_length, length-lex order."""
    if k < 1:
        raise ValueError("rank must be at least 1")
    for t in range(max(min_length, 0), max_length + 1):
        for w in _reduced_of_length(k, t):
            yield Word._trusted(w)


def enumerate_relator_candidates(k: int, max_length: int, min_length: int = 1) -> Iterator[Word]:
    """One canonical representative per class of cyclically reduced words under
    rotation and inversion, by increasing length then lexicographically."""
    if k < 1:
        raise ValueError("rank must be at least 1")
    for t in range(max(min_length, 1), max_length + 1):
        for w in _reduced_of_length(k, t):
            if _is_canonical(w):
                yield Word._trusted(w)


# -- markings ----------------------------------------------------------------


class Marking:
    """An ordered tuple of elements of F interpreting generators a, b, c, ...

    ``probes`` are optional dyadic points tried first when deciding whether a
    word acts trivially; they only ever speed up a proof of nontriviality.
    """

    def __init__(self, maps: Sequence[PLMap], name: str | None = None, probes: Sequence = ()):
        self.maps = tuple(maps)
        if not self.maps:
            raise ValueError("a marking needs at least one element")
        self.inverses = tuple(f.inverse() for f in self.maps)
        self.name = name
        self.probes = tuple(Dyadic.coerce(p) for p in probes)
        self.slope0 = tuple(slope_at_endpoint(f, "zero") for f in self.maps)
        self.slope1 = tuple(slope_at_endpoint(f, "one") for f in self.maps)

    @property
    def rank(self) -> int:
        return len(self.maps)

    def __len__(self):
        return len(self.maps)

    def __getitem__(self, i):
        return self.maps[i]

    def __eq__(self, other):
        return isinstance(other, Marking) and self.maps == other.maps

    def __hash__(self):
        return hash(self.maps)

    def __repr__(self):
        label = self.name or "Marking"
        return f"<{label} rank={self.rank} breakpoints={[len(f) for f in self.maps]}>"

    def __reduce__(self):
        return (Marking, (self.maps, self.name, self.probes))

    def letter_map(self, code: int) -> PLMap:
        return self.inverses[code >> 1] if code & 1 else self.maps[code >> 1]

    def evaluate(self, w: Word) -> PLMap:
        return evaluate(w, self)

    def endpoint_slopes(self, w: Word) -> tuple[int, int]:
        """Slope exponents of w at 0 and at 1; both are homomorphisms to Z."""
        s0 = s1 = 0
        for x in w:
            g = x >> 1
            if x & 1:
                s0 -= self.slope0[g]
                s1 -= self.slope1[g]
            else:
                s0 += self.slope0[g]
                s1 += self.slope1[g]
        return s0, s1

    def to_list(self) -> list[dict]:
        return [f.to_dict() for f in self.maps]

    def to_dict(self) -> dict:
        out: dict = {"maps": self.to_list()}
        if self.name:
            out["name"] = self.name
        if self.probes:
            out["probes"] = [str(p) for p in self.probes]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_data(cls, data) -> "Marking":
        """Accept a bare JSON array of maps or an object with a ``maps`` key."""
        if isinstance(data, list):
            return cls([PLMap.from_dict(d) for d in data])
        return cls(
            [PLMap.from_dict(d) for d in data["maps"]],
            name=data.get("name"),
            probes=data.get("probes", ()),
        )

    @classmethod
    def from_json(cls, text: str) -> "Marking":
        return cls.from_data(json.loads(text))


def standard_marking(*indices: int) -> Marking:
    """Marking by standard generators, e.g. ``standard_marking(0, 1, 3)``."""
    indices = indices or (0, 1)
    return Marking([generator(i) for i in indices], name="{" + ",".join(f"x{i}" for i in indices) + "}")


def evaluate(w: Word, m: Marking) -> PLMap:
    """The element of F represented by ``w``; the rightmost letter acts first."""
    if w.max_gen() >= m.rank:
        raise ValueError(f"word uses generator {w.max_gen()} but marking has rank {m.rank}")
    result = identity()
    for x in w:
        result = compose(result, m.letter_map(x))
    return result


def evaluate_at(w: Word, m: Marking, point) -> Dyadic:
    """Image of a single point under the element represented by ``w``."""
    p = Dyadic.coerce(point)
    maps = m.maps
    for x in reversed(w):
        if x & 1:
            p = maps[x >> 1].apply_inverse(p)
        else:
            p = maps[x >> 1](p)
    return p
