"""Girth, relation balls and distances in the space of marked groups.

Everything here rests on one exact test, :func:`is_trivial`.  Candidates are
enumerated one per class of cyclic words up to rotation and inversion, since
triviality is invariant under both.  Two cheap filters run before a full
composition:

* endpoint slopes: the slope exponents at 0 and at 1 are homomorphisms
  F -> Z, so a word with a nonzero exponent there cannot be trivial;
* probe points: if the word moves any probe point it is nontrivial.

Only a word surviving both is composed out in full.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .dyadic import Dyadic
from .words import Marking, Word, enumerate_relator_candidates, evaluate, evaluate_at

__all__ = [
    "is_trivial",
    "RelationBall",
    "GirthCertificate",
    "DistanceBound",
    "Stabilization",
    "relation_ball",
    "shortest_relator",
    "certify_girth",
    "marked_distance_bound",
    "distance_to_free",
    "stabilization_check",
]

DEFAULT_PROBES = tuple(
    Dyadic(n, e) for n, e in ((11, 5), (45, 6), (7, 7), (117, 7), (93, 8), (1, 2), (3, 2))
)


def is_trivial(w: Word, m: Marking, probes: Sequence[Dyadic] | None = None) -> bool:
    """Exact decision of whether ``w`` evaluates to the identity of F."""
    if not w:
        return True
    s0, s1 = m.endpoint_slopes(w)
    if s0 or s1:
        return False
    for p in m.probes if probes is None else probes:
        if evaluate_at(w, m, p) != p:
            return False
    if probes is None and not m.probes:
        for p in DEFAULT_PROBES:
            if evaluate_at(w, m, p) != p:
                return False
    return evaluate(w, m).is_identity()


def _flags_chunk(args):
    m, words = args
    return [is_trivial(w, m) for w in words]


def _trivial_flags(m: Marking, words: list[Word], jobs: int = 1) -> list[bool]:
    if jobs <= 1 or len(words) < 64:
        return [is_trivial(w, m) for w in words]
    size = -(-len(words) // (jobs * 4))
    chunks = [words[i : i + size] for i in range(0, len(words), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_flags_chunk, [(m, c) for c in chunks]))
    return [flag for part in parts for flag in part]


@dataclass(frozen=True)
class RelationBall:
    """Canonical relator classes of length <= radius that hold in a marking."""

    radius: int
    relations: tuple[Word, ...]

    def __contains__(self, w):
        from .words import canonical_cyclic

        return canonical_cyclic(Word(w)) in set(self.relations)

    def __len__(self):
        return len(self.relations)

    def as_set(self) -> frozenset:
        return frozenset(self.relations)

    def restrict(self, radius: int) -> "RelationBall":
        return RelationBall(radius, tuple(w for w in self.relations if len(w) <= radius))

    def audit(self, m: Marking) -> bool:
        """Re-evaluate every stored relation by full composition."""
        return all(evaluate(w, m).is_identity() for w in self.relations)

    def to_dict(self) -> dict:
        return {"radius": self.radius, "relations": [str(w) for w in self.relations]}


def relation_ball(m: Marking, R: int, jobs: int = 1) -> RelationBall:
    if R < 1:
        raise ValueError("radius must be at least 1")
    words = list(enumerate_relator_candidates(m.rank, R))
    flags = _trivial_flags(m, words, jobs)
    return RelationBall(R, tuple(w for w, t in zip(words, flags) if t))


def shortest_relator(m: Marking, max_length: int, jobs: int = 1) -> tuple[Word, int] | None:
    """A relator of minimal length <= max_length, searching length by length."""
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    for t in range(1, max_length + 1):
        words = list(enumerate_relator_candidates(m.rank, t, min_length=t))
        for w, flag in zip(words, _trivial_flags(m, words, jobs)):
            if flag:
                return w, t
    return None


@dataclass(frozen=True)
class GirthCertificate:
    """Outcome of an exhaustive relator search up to ``bound``."""

    marking: str
    bound: int
    relator: Word | None
    classes_checked: int

    @property
    def certified(self) -> bool:
        return self.relator is None

    def to_dict(self) -> dict:
        return {
            "marking": self.marking,
            "bound": self.bound,
            "certified_no_relator_up_to": self.bound if self.relator is None else len(self.relator) - 1,
            "shortest_relator": None if self.relator is None else str(self.relator),
            "relator_length": None if self.relator is None else len(self.relator),
            "classes_checked": self.classes_checked,
        }


def certify_girth(m: Marking, bound: int, jobs: int = 1) -> GirthCertificate:
    """Exhaustively check that no word of length <= bound is a relator."""
    checked = 0
    for t in range(1, bound + 1):
        words = list(enumerate_relator_candidates(m.rank, t, min_length=t))
        for w, flag in zip(words, _trivial_flags(m, words, jobs)):
            checked += 1
            if flag:
                return GirthCertificate(m.name or "marking", bound, w, checked)
    return GirthCertificate(m.name or "marking", bound, None, checked)


@dataclass(frozen=True)
class DistanceBound:
    """Balls of radius R_star agree; distance is at most e^-R_star."""

    R_star: int
    R_max: int
    witness: Word | None

    @property
    def bound_text(self) -> str:
        return f"e^-{self.R_star}"

    def to_dict(self) -> dict:
        return {
            "R_star": self.R_star,
            "R_max": self.R_max,
            "distance_bound": self.bound_text,
            "witness": None if self.witness is None else str(self.witness),
        }


def marked_distance_bound(m1: Marking, m2: Marking, R_max: int, jobs: int = 1) -> DistanceBound:
    if m1.rank != m2.rank:
        raise ValueError("markings must have equal rank")
    for t in range(1, R_max + 1):
        words = list(enumerate_relator_candidates(m1.rank, t, min_length=t))
        f1 = _trivial_flags(m1, words, jobs)
        f2 = _trivial_flags(m2, words, jobs)
        for w, a, b in zip(words, f1, f2):
            if a != b:
                return DistanceBound(t - 1, R_max, w)
    return DistanceBound(R_max, R_max, None)


def distance_to_free(m: Marking, R_max: int, jobs: int = 1) -> int:
    """Largest R <= R_max whose relation ball is empty, i.e. girth > R."""
    found = shortest_relator(m, R_max, jobs) if R_max >= 1 else None
    return R_max if found is None else found[1] - 1


@dataclass(frozen=True)
class Stabilization:
    word: Word
    n_lo: int
    n_hi: int
    pattern: tuple[bool, ...] = field(repr=False)

    @property
    def flips(self) -> list[int]:
        """Values of n where triviality differs from n - 1."""
        return [self.n_lo + i for i in range(1, len(self.pattern)) if self.pattern[i] != self.pattern[i - 1]]

    @property
    def kind(self) -> str:
        if all(self.pattern):
            return "all-trivial"
        if not any(self.pattern):
            return "all-nontrivial"
        return "flips"

    def __str__(self):
        if self.kind == "flips":
            return f"flips at {self.flips}"
        return self.kind


def stabilization_check(w: Word, family, n_range: tuple[int, int]) -> Stabilization:
    """Triviality of ``w`` in every marking ``family.marking(n)`` for n in the range."""
    lo, hi = n_range
    if lo > hi:
        raise ValueError("empty n range")
    pattern = tuple(is_trivial(w, family.marking(n)) for n in range(lo, hi + 1))
    return Stabilization(Word(w), lo, hi, pattern)
