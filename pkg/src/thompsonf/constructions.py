"""Witness elements that make prescribed free words act nontrivially, and the
generating sets S_{l,m} = (x_0, x_0^m u_1^m x_1, u_1, ..., u_{l-2}) of large girth.

Geometry.  With ``eps_hat`` the largest power of two <= min(eps, 1/4) and
translate radius L, the base interval is

    I_0 = [2^-(L+2) eps_hat, 2^-(L+1) eps_hat]

and x_0 is x -> x/2 on [0, 1/2], so its translates are exactly
``x_0^i(I_0) = 2^-i I_0`` for |i| <= L, all inside (0, eps) with pairwise
disjoint interiors.  Each word gets its own standard subinterval J of I_0.

Tracing a word ``a^{e_1} B_1 ... a^{e_r} B_r`` from the right, every letter
of a block B_s pushes the tracked point further right inside its current
translate (bisection toward the right end), and each ``a^e`` carries it to
another translate while preserving its relative position.  The recorded
(z, u_n(z)) pairs are then realized by :func:`from_partitions`, with every
translate endpoint held fixed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dyadic import HALF, ONE, ZERO, Dyadic
from .plhomeo import PLMap, compose, from_partitions, generator, identity, rescale_into, support
from .words import (
    Marking,
    Word,
    delete_generator,
    enumerate_reduced,
    enumerate_relator_candidates,
    evaluate_at,
    substitute,
)

__all__ = [
    "ConstructionError",
    "ResourceCapExceeded",
    "PoolExhausted",
    "ConstructionPlan",
    "WordCertificate",
    "WitnessTuple",
    "GirthMarking",
    "ChainLink",
    "FactResult",
    "base_interval",
    "construct_witnesses_single",
    "construct_witnesses_multi",
    "girth_marking",
    "derived_images",
    "girth_chain",
    "verify_fact",
    "partition_witnesses",
]


class ConstructionError(RuntimeError):
    """A construction step produced something that fails its own certificate."""


class ResourceCapExceeded(RuntimeError):
    pass


class PoolExhausted(RuntimeError):
    def __init__(self, word: Word, tried: int):
        super().__init__(f"no witness for {word} among {tried} pool tuples")
        self.word = word
        self.tried = tried


def _largest_power_of_two_at_most(x: Dyadic) -> Dyadic:
    # x > 0
    return Dyadic(1, x.exp - (x.num.bit_length() - 1))


def base_interval(epsilon: Dyadic, radius: int) -> tuple[Dyadic, Dyadic]:
    eps_hat = _largest_power_of_two_at_most(min(epsilon, Dyadic(1, 2)))
    lo = eps_hat.shift(-(radius + 2))
    return lo, lo.shift(1)


@dataclass
class ConstructionPlan:
    epsilon: Dyadic
    rank: int
    radius: int
    base: tuple[Dyadic, Dyadic]
    subintervals: list[tuple[Dyadic, Dyadic]]
    # per word: (translate index, increasing points) in the order constructed
    sequences: list[list[tuple[int, list[Dyadic]]]] = field(default_factory=list)

    @property
    def max_word_length(self) -> int:
        return self.radius

    def translates(self, interval=None) -> list[tuple[int, tuple[Dyadic, Dyadic]]]:
        p, q = self.base if interval is None else interval
        return [(i, (p.shift(-i), q.shift(-i))) for i in range(-self.radius, self.radius + 1)]

    def check(self) -> None:
        """Assert the plan's invariants (translates, dyadic interior points)."""
        tr = sorted(iv for _, iv in self.translates())
        for (a, b), (c, d) in zip(tr, tr[1:]):
            if c < b:
                raise ConstructionError("translates overlap")
        if not (ZERO < tr[0][0] and tr[-1][1] < self.epsilon):
            raise ConstructionError("translates leave (0, eps)")
        for J, seqs in zip(self.subintervals, self.sequences):
            for idx, pts in seqs:
                lo, hi = J[0].shift(-idx), J[1].shift(-idx)
                if any(not (lo < p < hi) for p in pts):
                    raise ConstructionError("chosen point not interior to its translate")
                if any(not (s < t) for s, t in zip(pts, pts[1:])):
                    raise ConstructionError("point sequence not increasing")


@dataclass(frozen=True)
class WordCertificate:
    """``word`` moves ``point`` (inside [0, eps)) to ``image``."""

    word: Word
    point: Dyadic
    image: Dyadic

    def to_dict(self) -> dict:
        return {"word": str(self.word), "point": str(self.point), "image": str(self.image)}


@dataclass
class WitnessTuple:
    elements: tuple[PLMap, ...]
    plan: ConstructionPlan
    words: list[Word]
    certificates: list[WordCertificate]

    def marking(self) -> Marking:
        """The marking (x_0, u_1, ..., u_{k-1}) the words are evaluated in."""
        return Marking((generator(0),) + self.elements, name="witness", probes=[c.point for c in self.certificates])

    def certificate_for(self, w: Word) -> WordCertificate:
        for c in self.certificates:
            if c.word == w:
                return c
        raise KeyError(w)

    def to_dict(self) -> dict:
        return {
            "maps": self.marking().to_list(),
            "certificate": {
                "epsilon": str(self.plan.epsilon),
                "radius": self.plan.radius,
                "base_interval": [str(self.plan.base[0]), str(self.plan.base[1])],
                "words": [c.to_dict() for c in self.certificates],
            },
        }


def _syllables(w: Word) -> list[tuple[int, list[int]]]:
    """Split w into (e_s, B_s) with w = a^{e_1} B_1 ... a^{e_r} B_r."""
    out: list[tuple[int, list[int]]] = []
    e = 0
    block: list[int] = []
    for x in w:
        if x >> 1 == 0:
            if block:
                out.append((e, block))
                e, block = 0, []
            e += -1 if x & 1 else 1
        else:
            block.append(x)
    out.append((e, block))
    return out


def _trace_word(w: Word, J: tuple[Dyadic, Dyadic], radius: int, pairs: dict[int, dict[Dyadic, Dyadic]]):
    """Record the (z, u_n(z)) pairs forcing ``w`` to push the midpoint of J.

    Returns (base point, predicted image, point sequences).
    """
    p, q = J
    x = (p + q).half()
    point, idx = x, 0
    sequences: list[tuple[int, list[Dyadic]]] = []
    for e, block in reversed(_syllables(w)):
        right = q.shift(-idx)
        pts = [point]
        for _ in block:
            pts.append((pts[-1] + right).half())
        # pts[0] = y^{n+1} < ... < pts[n] = y^1; letter b_{s,i} sits between y^{i+1} and y^i
        nb = len(block)
        for i, code in enumerate(block, start=1):
            lo_pt, hi_pt = pts[nb - i], pts[nb - i + 1]
            gen = code >> 1
            z, uz = (lo_pt, hi_pt) if not code & 1 else (hi_pt, lo_pt)
            table = pairs.setdefault(gen, {})
            if table.get(z, uz) != uz:
                raise ConstructionError(f"conflicting requirement for u_{gen} at {z}")
            table[z] = uz
        sequences.append((idx, pts))
        point = pts[-1].shift(-e)
        idx += e
        if abs(idx) > radius:
            raise ConstructionError(f"word {w} leaves the translates of radius {radius}")
    return x, point, sequences


def _realize(pairs: dict[Dyadic, Dyadic], fixed: Iterable[Dyadic]) -> PLMap:
    table = dict(pairs)
    for f in fixed:
        if table.setdefault(f, f) != f:
            raise ConstructionError("a prescribed point coincides with a fixed endpoint")
    table.setdefault(ZERO, ZERO)
    table.setdefault(ONE, ONE)
    xs = sorted(table)
    ys = [table[x] for x in xs]
    for a, b in zip(ys, ys[1:]):
        if not a < b:
            raise ConstructionError("prescribed points are not order preserving")
    return from_partitions(xs, ys)


def _canonical_orientation(w: Word) -> tuple[Word, bool]:
    wi = w.inverse()
    return (w, False) if tuple(w) <= tuple(wi) else (wi, True)


def construct_witnesses_multi(
    words: Sequence[Word],
    epsilon,
    k: int,
    radius: int | None = None,
    cap_breakpoints: int | None = None,
) -> WitnessTuple:
    """One tuple u_1..u_{k-1}, supported in [0, eps), under which every word of
    ``words`` (over a = x_0, b_1, ..., b_{k-1}) moves a point of [0, eps)."""
    epsilon = Dyadic.coerce(epsilon)
    if not (ZERO < epsilon < HALF):
        raise ValueError("epsilon must lie in (0, 1/2)")
    if k < 2:
        raise ValueError("rank must be at least 2")
    words = [Word(w) for w in words]
    if not words:
        raise ValueError("no words given")
    for w in words:
        if not w:
            raise ValueError("the empty word cannot be made nontrivial")
        if w.max_gen() >= k:
            raise ValueError(f"word {w} exceeds rank {k}")
    if radius is None:
        radius = max(len(w) for w in words)

    # w and w^-1 move the same points, so they share one subinterval
    slots: dict[Word, int] = {}
    for w in words:
        slots.setdefault(_canonical_orientation(w)[0], len(slots))
    q = len(slots)
    base = base_interval(epsilon, radius)
    h = (q - 1).bit_length()
    step = (base[1] - base[0]).shift(-h)
    subintervals = [(base[0] + step * i, base[0] + step * (i + 1)) for i in range(q)]

    plan = ConstructionPlan(epsilon, k, radius, base, subintervals)
    pairs: dict[int, dict[Dyadic, Dyadic]] = {}
    traced: dict[Word, tuple[Dyadic, Dyadic]] = {}
    for w, slot in slots.items():
        x, image, seqs = _trace_word(w, subintervals[slot], radius, pairs)
        plan.sequences.append(seqs)
        traced[w] = (x, image)

    fixed: set[Dyadic] = set()
    for J in subintervals:
        for _, (lo, hi) in plan.translates(J):
            fixed.add(lo)
            fixed.add(hi)
    elements = []
    for n in range(1, k):
        u = _realize(pairs.get(n, {}), fixed)
        if cap_breakpoints is not None and len(u) > cap_breakpoints:
            raise ResourceCapExceeded(f"u_{n} needs {len(u)} breakpoints (cap {cap_breakpoints})")
        elements.append(u)
    result = WitnessTuple(tuple(elements), plan, words, [])

    marking = result.marking()
    for w in words:
        canon, flipped = _canonical_orientation(w)
        x, image = traced[canon]
        if flipped:
            x, image = image, x
        got = evaluate_at(w, marking, x)
        if got != image or got == x:
            raise ConstructionError(f"word {w} does not move its base point as constructed")
        result.certificates.append(WordCertificate(w, x, got))
    return result


def construct_witnesses_single(w: Word, epsilon, radius: int | None = None, k: int | None = None) -> WitnessTuple:
    """Witnesses u_1..u_{k-1} for a single nontrivial word (k defaults to the word's rank)."""
    w = Word(w)
    if not w:
        raise ValueError("the empty word cannot be made nontrivial")
    k = max(2, w.max_gen() + 1) if k is None else k
    return construct_witnesses_multi([w], epsilon, k, radius=radius if radius is not None else len(w))


# -- generating sets of large girth -----------------------------------------


def derived_images(l: int, m: int) -> list[Word]:
    """Images of alpha, beta, gamma_1.. after deleting x_1: a, a^m b_1^m, b_1, ..."""
    a = Word.gen(0)
    images = [a, Word.gen(0, m) * Word.gen(1, m)]
    images += [Word.gen(i) for i in range(1, l - 1)]
    return images


def _expanded_images(l: int, m: int) -> list[Word]:
    # over (x_0, u_1, .., u_{l-2}, x_1): x_1 is the last generator
    x1 = Word.gen(l - 1)
    images = [Word.gen(0), Word.gen(0, m) * Word.gen(1, m) * x1]
    images += [Word.gen(i) for i in range(1, l - 1)]
    return images


class GirthMarking(Marking):
    """S_{l,m} together with the witness construction behind it."""

    def __init__(self, maps, l: int, m: int, mode: str, epsilon: Dyadic, witnesses: WitnessTuple, probes=()):
        super().__init__(maps, name=f"S_{l},{m}", probes=probes)
        self.l = l
        self.m = m
        self.mode = mode
        self.epsilon = epsilon
        self.witnesses = witnesses

    def __reduce__(self):
        return (Marking, (self.maps, self.name, self.probes))


def girth_marking(
    l: int,
    m: int,
    mode: str = "targeted",
    max_words: int = 50_000,
    cap_breakpoints: int | None = None,
) -> GirthMarking:
    """The marking (x_0, x_0^m u_1^m x_1, u_1, ..., u_{l-2}) with no relator of length <= m.

    ``targeted`` certifies exactly the derived words of all S-words of length
    <= m; ``faithful`` certifies every reduced word of length <= 2m^2 over
    (x_0, u_1, ..., u_{l-2}).
    """
    if l < 3:
        raise ValueError("girth markings need l >= 3")
    if m < 1:
        raise ValueError("m must be positive")
    epsilon = Dyadic(1, m * m + 2)
    radius = 2 * m * m
    if mode == "targeted":
        images = derived_images(l, m)
        seen: dict[Word, None] = {}
        for w in enumerate_reduced(l, m):
            w2 = substitute(w, images)
            if w2:
                seen.setdefault(w2, None)
        word_set = list(seen)
    elif mode == "faithful":
        total = sum(2 * (l - 1) * (2 * l - 3) ** (t - 1) for t in range(1, radius + 1))
        if total > max_words:
            raise ResourceCapExceeded(f"faithful word set has {total} words (cap {max_words})")
        word_set = list(enumerate_reduced(l - 1, radius))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if len(word_set) > max_words:
        raise ResourceCapExceeded(f"{len(word_set)} words exceed the cap of {max_words}")

    wit = construct_witnesses_multi(word_set, epsilon, l - 1, radius=radius, cap_breakpoints=cap_breakpoints)
    x0, x1 = generator(0), generator(1)
    u1 = wit.elements[0]
    beta = compose(compose(x0**m, u1**m), x1)
    maps = (x0, beta) + wit.elements
    probes = sorted({c.point for c in wit.certificates})
    return GirthMarking(maps, l, m, mode, epsilon, wit, probes=probes)


@dataclass(frozen=True)
class ChainLink:
    """One word's passage through the girth argument."""

    word: Word
    expanded: Word  # over (x_0, u_1, .., u_{l-2}, x_1)
    derived: Word  # x_1 deleted
    point: Dyadic
    derived_image: Dyadic
    marking_image: Dyadic

    @property
    def holds(self) -> bool:
        return bool(self.derived) and self.derived_image != self.point and self.marking_image == self.derived_image


def girth_chain(gm: GirthMarking, words: Iterable[Word] | None = None) -> list[ChainLink]:
    """Follow each S-word w (default: all classes of length <= m) through
    w -> w_1 -> w_2 and check that w moves the point that w_2 moves."""
    l, m = gm.l, gm.m
    eps = gm.epsilon
    for u in gm.witnesses.elements:
        hull = support(u).hull()
        if hull is not None and not hull[1] < eps:
            raise ConstructionError("witness support escapes [0, eps)")
    wit_marking = gm.witnesses.marking()
    expanded_images = _expanded_images(l, m)
    images = derived_images(l, m)
    links = []
    words = enumerate_relator_candidates(l, m) if words is None else words
    for w in words:
        w1 = substitute(w, expanded_images)
        w2 = delete_generator(w1, l - 1)
        if w2 != substitute(w, images):
            raise ConstructionError(f"derived word mismatch for {w}")
        if not w2:
            links.append(ChainLink(w, w1, w2, ZERO, ZERO, ZERO))
            continue
        try:
            point = gm.witnesses.certificate_for(w2).point
        except KeyError:
            point = gm.witnesses.certificate_for(w2.inverse()).image
        d_img = evaluate_at(w2, wit_marking, point)
        s_img = evaluate_at(w, gm, point)
        links.append(ChainLink(w, w1, w2, point, d_img, s_img))
    return links


# -- the free-group fact ----------------------------------------------------


@dataclass(frozen=True)
class FactResult:
    m: int
    holds: bool
    counterexample: Word | None
    classes_checked: int

    def __bool__(self):
        return self.holds


def verify_fact(m: int) -> FactResult:
    """No nonempty word of length <= m in x, y, d dies under d -> x^m y^m.

    Triviality of the image is conjugation and inversion invariant, so one
    cyclic class representative per class suffices.
    """
    if m < 1:
        raise ValueError("m must be positive")
    images = [Word.gen(0), Word.gen(1), Word.gen(0, m) * Word.gen(1, m)]
    checked = 0
    for w in enumerate_relator_candidates(3, m):
        checked += 1
        if not substitute(w, images):
            return FactResult(m, False, w, checked)
    return FactResult(m, True, None, checked)


# -- transplanted witnesses -------------------------------------------------


def _default_partition(q: int) -> list[Dyadic]:
    h = max((q - 1).bit_length(), 0)
    pts = [Dyadic(i, h) for i in range(q)]
    return pts + [ONE]


def partition_witnesses(
    words: Sequence[Word],
    k: int,
    intervals: Sequence | None = None,
    pool_length: int = 6,
    max_tries: int = 200_000,
) -> tuple[PLMap, ...]:
    """u_1..u_k under which every word in ``words`` is nontrivial.

    Word j gets a witness tuple from a deterministic search over short words
    in x_0, x_1; that tuple is conjugated into the j-th interval of the dyadic
    partition ``intervals`` (points 0 = a_0 < ... < a_q = 1) and the pieces
    are superimposed.
    """
    from .metric import is_trivial
    from .words import standard_marking

    words = [Word(w) for w in words]
    if intervals is None:
        intervals = _default_partition(len(words))
    points = [Dyadic.coerce(p) for p in intervals]
    if len(points) != len(words) + 1:
        raise ValueError("need exactly one interval per word")
    if points[0] != ZERO or points[-1] != ONE or any(not a < b for a, b in zip(points, points[1:])):
        raise ValueError("intervals must be a dyadic partition of [0, 1]")

    std = standard_marking(0, 1)
    pool_words = list(enumerate_reduced(2, pool_length))
    cache: dict[int, PLMap] = {}

    def pool(i: int) -> PLMap:
        if i not in cache:
            cache[i] = std.evaluate(pool_words[i])
        return cache[i]

    pieces: list[list[PLMap]] = [[] for _ in range(k)]
    for j, w in enumerate(words):
        if w.max_gen() >= k:
            raise ValueError(f"word {w} exceeds rank {k}")
        if not w:
            raise PoolExhausted(w, 0)
        tries = 0
        for combo in itertools.product(range(len(pool_words)), repeat=k):
            tries += 1
            if tries > max_tries:
                raise PoolExhausted(w, max_tries)
            cand = Marking([pool(i) for i in combo])
            if not is_trivial(w, cand):
                break
        else:
            raise PoolExhausted(w, tries)
        for r in range(k):
            pieces[r].append(rescale_into(cand.maps[r], points[j], points[j + 1]))

    out = []
    for r in range(k):
        u = identity()
        for piece in pieces[r]:
            u = compose(u, piece)
        out.append(u)
    return tuple(out)
