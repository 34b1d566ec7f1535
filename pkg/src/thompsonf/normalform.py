"""Normal forms of F in the infinite presentation <x_0, x_1, ... | x_i^-1 x_j x_i = x_{j+1}, i < j>.

Two independent routes produce the unique reduced normal form
``x_{i_1}^{r_1} ... x_{i_k}^{r_k} x_{j_l}^{-s_l} ... x_{j_1}^{-s_1}``:

* :func:`word_to_normalform` rewrites a word with the defining relations;
* :func:`homeo_to_normalform` reads leaf exponents off a tree pair for the
  homeomorphism.

Agreement of the two on random words is one of the test oracles.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .dyadic import ONE, Dyadic
from .plhomeo import PLMap, compose, generator, identity, standard_pieces
from .words import Word, letter

__all__ = [
    "NormalForm",
    "word_to_normalform",
    "letters_to_normalform",
    "normalform_to_homeo",
    "homeo_to_normalform",
    "homeo_to_word",
    "normalform_to_word",
    "tree_pair",
    "positive_element",
]

_NF_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?")


@dataclass(frozen=True)
class NormalForm:
    """``positive`` and ``negative`` are (index, exponent) pairs, indices increasing."""

    positive: tuple[tuple[int, int], ...] = ()
    negative: tuple[tuple[int, int], ...] = ()

    def is_identity(self) -> bool:
        return not self.positive and not self.negative

    def letters(self) -> list[tuple[int, int]]:
        """The normal form spelled out as (index, sign) letters, left to right."""
        out = []
        for i, r in self.positive:
            out.extend([(i, 1)] * r)
        for j, s in reversed(self.negative):
            out.extend([(j, -1)] * s)
        return out

    def satisfies_reduction_condition(self) -> bool:
        pos = {i for i, _ in self.positive}
        neg = {j for j, _ in self.negative}
        return all((i + 1) in pos or (i + 1) in neg for i in pos & neg)

    def __str__(self):
        if self.is_identity():
            return "1"
        parts = [f"x{i}" if r == 1 else f"x{i}^{r}" for i, r in self.positive]
        parts += [f"x{j}^-{s}" for j, s in reversed(self.negative)]
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "NormalForm":
        text = text.strip()
        if text in ("", "1"):
            return cls()
        letters: list[tuple[int, int]] = []
        pos = 0
        for m in _NF_TOKEN.finditer(text):
            if text[pos : m.start()].strip():
                raise ValueError(f"unparseable normal form {text!r}")
            pos = m.end()
            k = 1 if m.group(2) is None else int(m.group(2))
            letters.extend([(int(m.group(1)), 1 if k > 0 else -1)] * abs(k))
        if text[pos:].strip():
            raise ValueError(f"unparseable normal form {text!r}")
        return letters_to_normalform(letters)


# -- rewriting ---------------------------------------------------------------


def _mul_positive(P: list[int], N: list[int], k: int) -> None:
    # P N^-1 x_k: push x_k left through N^-1, then sort it into P
    for pos, i in enumerate(N):
        if i < k:
            k += 1
        elif i == k:
            del N[pos]
            return
        else:
            for q in range(pos, len(N)):
                N[q] += 1
            break
    cut = bisect_right(P, k)
    for q in range(cut, len(P)):
        P[q] += 1
    P.insert(cut, k)


def _mul_negative(N: list[int], k: int) -> None:
    # P N^-1 x_k^-1 = P (x_k N)^-1: sort x_k into N from the left
    pos = 0
    while pos < len(N) and N[pos] < k:
        k += 1
        pos += 1
    N.insert(pos, k)


def _reduce(P: list[int], N: list[int]) -> None:
    """Cancel x_i ... x_i^-1 pairs lacking x_{i+1}^{±1} until none remain."""
    while True:
        pos, neg = set(P), set(N)
        bad = [i for i in pos & neg if (i + 1) not in pos and (i + 1) not in neg]
        if not bad:
            return
        i = max(bad)
        P.remove(i)
        N.remove(i)
        for seq in (P, N):
            for q in range(len(seq)):
                if seq[q] > i:
                    seq[q] -= 1


def _pack(P: list[int], N: list[int]) -> NormalForm:
    return NormalForm(tuple(sorted(Counter(P).items())), tuple(sorted(Counter(N).items())))


def letters_to_normalform(letters: Iterable[tuple[int, int]]) -> NormalForm:
    """Normal form of a product of infinite-presentation letters (index, ±1)."""
    P: list[int] = []
    N: list[int] = []
    for idx, sign in letters:
        if idx < 0:
            raise ValueError("generator indices are non-negative")
        if sign > 0:
            _mul_positive(P, N, idx)
        else:
            _mul_negative(N, idx)
    _reduce(P, N)
    return _pack(P, N)


def word_to_normalform(w: Word) -> NormalForm:
    """Normal form of a word over a = x_0, b = x_1."""
    if w.max_gen() > 1:
        raise ValueError("word_to_normalform expects a word in a and b only")
    return letters_to_normalform(w.letters())


def normalform_to_homeo(nf: NormalForm) -> PLMap:
    result = identity()
    for i, r in nf.positive:
        g = generator(i)
        for _ in range(r):
            result = compose(result, g)
    for j, s in reversed(nf.negative):
        g = generator(j).inverse()
        for _ in range(s):
            result = compose(result, g)
    return result


def normalform_to_word(nf: NormalForm) -> Word:
    """Spell the normal form in a, b using x_n = a^-(n-1) b a^(n-1)."""
    codes: list[int] = []
    a, A, b, B = letter(0, 1), letter(0, -1), letter(1, 1), letter(1, -1)
    for idx, sign in nf.letters():
        if idx == 0:
            codes.append(a if sign > 0 else A)
        else:
            codes.extend([A] * (idx - 1))
            codes.append(b if sign > 0 else B)
            codes.extend([a] * (idx - 1))
    return Word(codes)


# -- tree pairs --------------------------------------------------------------


def tree_pair(f: PLMap) -> tuple[list[tuple[Dyadic, int]], list[tuple[Dyadic, int]]]:
    """Matching standard dyadic subdivisions (domain, range) on which f is affine.

    Each entry ``(p, q)`` stands for the interval [p, p + 2^-q]; the i-th
    domain interval is carried affinely onto the i-th range interval.
    """
    dom: list[tuple[Dyadic, int]] = []
    ran: list[tuple[Dyadic, int]] = []
    for seg in range(len(f.xs) - 1):
        slope = f.slopes[seg]
        x0, y0 = f.xs[seg], f.ys[seg]
        stack = list(reversed(standard_pieces(x0, f.xs[seg + 1])))
        while stack:
            p, q = stack.pop()
            image = y0 + (p - x0).shift(slope)
            q_img = q - slope
            if image.num == 0 or image.exp <= q_img:
                dom.append((p, q))
                ran.append((image, q_img))
            else:
                stack.append((p + Dyadic(1, q + 1), q + 1))
                stack.append((p, q + 1))
    return dom, ran


def _leaf_exponents(leaves: list[tuple[Dyadic, int]]) -> list[int]:
    out = []
    for p, q in leaves:
        count = 0
        while q >= 1 and (p.num == 0 or p.exp <= q - 1):
            # node [p, p+2^-q] is a left child; stop before reaching the right spine
            if p + Dyadic(1, q - 1) == ONE:
                break
            count += 1
            q -= 1
        out.append(count)
    return out


def positive_element(leaves: list[tuple[Dyadic, int]]) -> NormalForm:
    """Normal form of the positive element carrying the all-right vine onto ``leaves``."""
    exps = _leaf_exponents(leaves)
    return NormalForm(tuple((k, e) for k, e in enumerate(exps) if e), ())


def homeo_to_normalform(f: PLMap) -> NormalForm:
    dom, ran = tree_pair(f)
    P: list[int] = []
    N: list[int] = []
    for k, e in enumerate(_leaf_exponents(ran)):
        P.extend([k] * e)
    for k, e in enumerate(_leaf_exponents(dom)):
        N.extend([k] * e)
    _reduce(P, N)
    return _pack(P, N)


def homeo_to_word(f: PLMap) -> Word:
    """A word in a = x_0, b = x_1 evaluating to ``f``."""
    return normalform_to_word(homeo_to_normalform(f))
