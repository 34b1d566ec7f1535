"""Sequences of markings (x_0, x_1, c_n) of F and the relators of their limits.

Three families are provided, with a = x_0 and b = x_1:

* ``xn``: c_n = x_n, support [t_n, 1] with t_n = 1 - 2^-n;
* ``small``: c_n supported in [r_n, s_n] with r_n < s_n < 2 r_n, r_n -> 0;
* ``power``: c_n = x_0^n.

Limit presentations are infinite, so relators come from parametrized
templates instantiated on finite ranges.  The harness only ever checks the
two directions of the convergence criterion on a tested window of n; it never
claims that a word is trivial in the limit group itself.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .dyadic import HALF, ONE, ZERO, Dyadic
from .metric import Stabilization, is_trivial
from .normalform import homeo_to_word
from .plhomeo import PLMap, generator, rescale_into, support
from .words import Marking, Word, commutator, enumerate_relator_candidates, evaluate

__all__ = [
    "HypothesisViolation",
    "MarkingFamily",
    "LimitRelator",
    "RelatorCheck",
    "ConvergenceReport",
    "family_xn",
    "family_small_support",
    "family_power",
    "get_family",
    "limit_relators",
    "verify_limit_convergence",
    "threshold_table",
]

A, B, C = Word.gen(0), Word.gen(1), Word.gen(2)


class HypothesisViolation(ValueError):
    def __init__(self, family: str, n: int, clause: str):
        super().__init__(f"{family} family violates its hypothesis at n={n}: {clause}")
        self.family = family
        self.n = n
        self.clause = clause


class MarkingFamily:
    """n -> marking (x_0, x_1, c_n), with an exact check of the family's hypothesis."""

    def __init__(
        self,
        name: str,
        element: Callable[[int], PLMap],
        validator: Callable[["MarkingFamily", int], None],
        word: Callable[[int], Word] | None = None,
        params: dict[str, Callable[[int], Dyadic | int]] | None = None,
        kind: str | None = None,
    ):
        self.name = name
        self.kind = kind or name
        self._element = lru_cache(maxsize=None)(element)
        self._validator = validator
        self._word = word
        self.params = params or {}

    def element(self, n: int) -> PLMap:
        if n < 1:
            raise ValueError("family index n starts at 1")
        return self._element(n)

    def word(self, n: int) -> Word:
        """A word w_n in a, b with w_n(x_0, x_1) = c_n."""
        if self._word is not None:
            return self._word(n)
        return homeo_to_word(self.element(n))

    def param(self, key: str, n: int):
        return self.params[key](n)

    def marking(self, n: int) -> Marking:
        return _family_marking(self, n)

    def validate(self, n: int) -> None:
        self._validator(self, n)

    def __repr__(self):
        return f"<MarkingFamily {self.name}>"


@lru_cache(maxsize=512)
def _family_marking(fam: MarkingFamily, n: int) -> Marking:
    return Marking((generator(0), generator(1), fam.element(n)), name=f"{fam.name}[n={n}]")


# -- xn family ---------------------------------------------------------------


def _validate_xn(fam: MarkingFamily, n: int) -> None:
    c = fam.element(n)
    t = Dyadic.coerce(fam.param("t", n))
    if not support(c).within(t, ONE):
        raise HypothesisViolation(fam.name, n, f"support {support(c)} not inside [{t}, 1]")
    lo = (t + 3).shift(-2)
    hi = (t + 1).half()
    if c(lo) != hi or any(lo < x < ONE for x in c.xs):
        raise HypothesisViolation(fam.name, n, f"c_n does not map [{lo}, 1] linearly onto [{hi}, 1]")


def family_xn(
    variant: str = "canonical",
    t_rule: Callable[[int], Dyadic] | None = None,
    w_rule: Callable[[int], Word] | None = None,
) -> MarkingFamily:
    """c_n = x_n (canonical), or c_n = w_n(x_0, x_1) with a supplied t_n rule (custom)."""
    if variant == "canonical":
        return MarkingFamily(
            "xn",
            generator,
            _validate_xn,
            word=lambda n: Word.gen(0, -(n - 1)) * B * Word.gen(0, n - 1),
            params={"t": lambda n: ONE - Dyadic(1, n)},
        )
    if variant != "custom" or t_rule is None or w_rule is None:
        raise ValueError("custom xn family needs t_rule and w_rule")
    std = Marking((generator(0), generator(1)))
    return MarkingFamily(
        "xn-custom",
        lambda n: evaluate(w_rule(n), std),
        _validate_xn,
        word=w_rule,
        params={"t": t_rule},
        kind="xn",
    )


# -- small-support family ----------------------------------------------------


def _validate_small(fam: MarkingFamily, n: int) -> None:
    r = Dyadic.coerce(fam.param("r", n))
    s = Dyadic.coerce(fam.param("s", n))
    if not (ZERO < r < s):
        raise HypothesisViolation(fam.name, n, f"need 0 < r_n < s_n, got [{r}, {s}]")
    if not s < r.shift(1):
        raise HypothesisViolation(fam.name, n, f"s_n = {s} is not below 2 r_n = {r.shift(1)}")
    g = fam.element(n)
    if not support(g).within(r, s):
        raise HypothesisViolation(fam.name, n, f"support {support(g)} escapes [{r}, {s}]")
    if s < HALF and not generator(0)(s) <= r:
        raise HypothesisViolation(fam.name, n, "x_0([r_n, s_n]) meets [r_n, s_n]")


def family_small_support(
    variant: str = "canonical",
    g_rule: Callable[[int], PLMap] | None = None,
    r_rule: Callable[[int], Dyadic] | None = None,
    s_rule: Callable[[int], Dyadic] | None = None,
) -> MarkingFamily:
    """Canonical g_n = x_0 conjugated into [2^-(n+1), 3*2^-(n+2)]."""
    if variant == "canonical":
        r_rule = lambda n: Dyadic(1, n + 1)  # noqa: E731
        s_rule = lambda n: Dyadic(3, n + 2)  # noqa: E731
        x0 = generator(0)
        return MarkingFamily(
            "small",
            lambda n: rescale_into(x0, r_rule(n), s_rule(n)),
            _validate_small,
            params={"r": r_rule, "s": s_rule},
        )
    if variant != "custom" or g_rule is None or r_rule is None or s_rule is None:
        raise ValueError("custom small-support family needs g_rule, r_rule and s_rule")
    return MarkingFamily("small-custom", g_rule, _validate_small, params={"r": r_rule, "s": s_rule}, kind="small")


# -- power family ------------------------------------------------------------


def _validate_power(fam: MarkingFamily, n: int) -> None:
    m = fam.marking(n)
    if not evaluate(C.inverse() * Word.gen(0, n), m).is_identity():
        raise HypothesisViolation(fam.name, n, "c != a^n")


def family_power() -> MarkingFamily:
    x0 = generator(0)
    return MarkingFamily("power", lambda n: x0**n, _validate_power, word=lambda n: Word.gen(0, n))


def get_family(name: str) -> MarkingFamily:
    if name == "xn":
        return family_xn()
    if name in ("small", "small-support"):
        return family_small_support()
    if name == "power":
        return family_power()
    raise ValueError(f"unknown family {name!r}; expected xn, small or power")


# -- relator schemas ---------------------------------------------------------

R1 = commutator(B * A.inverse(), Word.gen(0, -1) * B * A)
R2 = commutator(B * A.inverse(), Word.gen(0, -2) * B * Word.gen(0, 2))


def _conj(x: Word, i: int) -> Word:
    """a^i x a^-i."""
    return Word.gen(0, i) * x * Word.gen(0, -i)


@dataclass(frozen=True)
class LimitRelator:
    label: str
    word: Word
    params: tuple[int, ...]
    threshold: int | None
    # "always", "predicted" (from a support argument) or "scan" (observed)
    basis: str

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "word": str(self.word),
            "length": len(self.word),
            "params": list(self.params),
            "threshold": self.threshold,
            "basis": self.basis,
        }


def _first_n(pred: Callable[[int], bool], n_max: int) -> int | None:
    """Smallest N <= n_max with pred(n) true for every n in [N, n_max]."""
    found = None
    for n in range(n_max, 0, -1):
        if pred(n):
            found = n
        else:
            break
    return found


def limit_relators(family: MarkingFamily, ranges: dict | None = None) -> list[LimitRelator]:
    """Instantiate the family's limit relators with thresholds.

    ``ranges`` keys: ``i`` (inclusive pair) for xn and small; ``i``, ``j``,
    ``k`` for power; ``n_max`` bounds threshold searches and ``n_scan`` gives
    the observation window for scanned thresholds.
    """
    ranges = dict(ranges or {})
    n_max = ranges.get("n_max", 64)
    kind = family.kind
    out = [LimitRelator("R1", R1, (), 1, "always"), LimitRelator("R2", R2, (), 1, "always")]
    if kind == "xn":
        i_lo, i_hi = ranges.get("i", (-3, 3))
        if i_lo > i_hi:
            raise ValueError("empty i range")
        t = lambda n: Dyadic.coerce(family.param("t", n))  # noqa: E731
        n0 = _first_n(lambda n: t(n) >= HALF, n_max)
        out.append(LimitRelator("R3", commutator(C * A.inverse(), A.inverse() * C * A), (), n0, "predicted"))
        out.append(
            LimitRelator("R4", commutator(C * A.inverse(), Word.gen(0, -2) * C * Word.gen(0, 2)), (), n0, "predicted")
        )
        scan_lo, scan_hi = ranges.get("n_scan", (1, 16))
        x0 = generator(0)
        three_quarters = Dyadic(3, 2)
        for i in range(i_lo, i_hi + 1):
            w = commutator(B * A.inverse(), _conj(C, i))
            if i < 0:
                # no support argument is offered for negative i; observe instead
                ni = _first_n(lambda n: n >= scan_lo and is_trivial(w, family.marking(n)), scan_hi)
                out.append(LimitRelator("[bA, a^i c a^-i]", w, (i,), ni, "scan"))
                continue
            power = x0**i
            # a^i [t_n, 1] = [a^i(t_n), 1] must sit inside [3/4, 1]
            ni = _first_n(lambda n: power(t(n)) >= three_quarters, n_max)
            out.append(LimitRelator("[bA, a^i c a^-i]", w, (i,), ni, "predicted"))
    elif kind == "small":
        i_lo, i_hi = ranges.get("i", (-3, 3))
        if i_lo > i_hi:
            raise ValueError("empty i range")
        scan_lo, scan_hi = ranges.get("n_scan", (1, 16))
        templates = []
        for i in range(i_lo, i_hi + 1):
            if i != 0:
                templates.append(("[a^i c a^-i, c]", commutator(_conj(C, i), C), (i,)))
        for i in range(i_lo, i_hi + 1):
            templates.append(("[a^i b a^-i, c]", commutator(_conj(B, i), C), (i,)))
        for label, w, params in templates:
            n_first = _first_n(lambda n: n >= scan_lo and is_trivial(w, family.marking(n)), scan_hi)
            out.append(LimitRelator(label, w, params, n_first, "scan"))
    elif kind == "power":
        out.append(LimitRelator("[c, a]", commutator(C, A), (), 1, "always"))
        i_lo, i_hi = ranges.get("i", (1, 3))
        j_lo, j_hi = ranges.get("j", (0, 4))
        k_lo, k_hi = ranges.get("k", (0, 4))
        if i_lo > i_hi or j_lo > j_hi or k_lo > k_hi:
            raise ValueError("empty parameter range")
        if i_lo < 1 or j_lo < 0 or k_lo < 0:
            raise ValueError("power-family relators need i >= 1, j >= 0, k >= 0")
        for i in range(i_lo, i_hi + 1):
            for j in range(j_lo, j_hi + 1):
                for k in range(k_lo, k_hi + 1):
                    left = Word.gen(0, -j) * B * Word.gen(0, j) * A.inverse()
                    right = Word.gen(2, -i) * Word.gen(0, -k) * B * Word.gen(0, k) * Word.gen(2, i)
                    # x_{ni+k+1} commutes with x_{j+1} x_0^-1 once j + 2 <= ni + k + 1
                    threshold = max(1, -(-(j - k + 1) // i))
                    out.append(LimitRelator("[(a^-j b a^j) A, c^-i (a^-k b a^k) c^i]", commutator(left, right), (i, j, k), threshold, "predicted"))
    else:
        raise ValueError(f"no relator schema for family kind {kind!r}")
    return out


# -- convergence harness -----------------------------------------------------


@dataclass(frozen=True)
class RelatorCheck:
    relator: LimitRelator
    trivial_at: tuple[tuple[int, bool], ...]
    observed_first: int | None

    @property
    def passed(self) -> bool:
        th = self.relator.threshold
        if th is None:
            return False
        return all(t for n, t in self.trivial_at if n >= th)

    @property
    def sharp(self) -> bool | None:
        """Whether the relator fails just below its threshold (None if untested)."""
        th = self.relator.threshold
        below = [t for n, t in self.trivial_at if n == (th or 0) - 1]
        return (not below[0]) if below else None

    def to_dict(self) -> dict:
        d = self.relator.to_dict()
        d.update(
            status="PASS" if self.passed else "FAIL",
            observed_first=self.observed_first,
            sharp=self.sharp,
            trivial_at={str(n): t for n, t in self.trivial_at},
        )
        return d


@dataclass
class ConvergenceReport:
    family: str
    R: int
    n_range: tuple[int, int]
    relator_checks: list[RelatorCheck]
    balls: dict[int, tuple[Word, ...]]
    classifications: list[Stabilization]
    hypothesis_failures: list[str] = field(default_factory=list)

    @property
    def tail_ball(self) -> tuple[Word, ...]:
        return self.balls[self.n_range[1]]

    @property
    def stabilized_from(self) -> int:
        """Smallest n whose ball equals every later ball in the window."""
        lo, hi = self.n_range
        tail = set(self.tail_ball)
        first = hi
        for n in range(hi, lo - 1, -1):
            if set(self.balls[n]) == tail:
                first = n
            else:
                break
        return first

    @property
    def unstable_words(self) -> list[Word]:
        return [s.word for s in self.classifications if s.kind == "flips"]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.relator_checks) and not self.hypothesis_failures

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "R": self.R,
            "n_range": list(self.n_range),
            "status": "PASS" if self.passed else "FAIL",
            "hypothesis_failures": self.hypothesis_failures,
            "relators": [c.to_dict() for c in self.relator_checks],
            "balls": {str(n): [str(w) for w in ball] for n, ball in self.balls.items()},
            "tail_ball": [str(w) for w in self.tail_ball],
            "stabilized_from": self.stabilized_from,
            "unstable_words": [str(w) for w in self.unstable_words],
            "classifications": {
                "all-trivial": sum(s.kind == "all-trivial" for s in self.classifications),
                "all-nontrivial": sum(s.kind == "all-nontrivial" for s in self.classifications),
                "flips": {str(s.word): s.flips for s in self.classifications if s.kind == "flips"},
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"family {self.family}   R = {self.R}   n in [{self.n_range[0]}, {self.n_range[1]}]"]
        rows = [("relator", "params", "len", "N", "first", "status")]
        for c in self.relator_checks:
            r = c.relator
            rows.append(
                (
                    r.label if r.label in ("R1", "R2", "R3", "R4") else str(r.word),
                    ",".join(map(str, r.params)) or "-",
                    str(len(r.word)),
                    "-" if r.threshold is None else str(r.threshold),
                    "-" if c.observed_first is None else str(c.observed_first),
                    "PASS" if c.passed else "FAIL",
                )
            )
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        for row in rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
        lines.append("")
        lines.append("ball sizes: " + ", ".join(f"n={n}: {len(b)}" for n, b in sorted(self.balls.items())))
        lines.append(f"stabilized from n = {self.stabilized_from}; tail ball has {len(self.tail_ball)} classes")
        unstable = self.unstable_words
        lines.append(f"unstable classes: {len(unstable)}" + (" " + ", ".join(map(str, unstable[:10])) if unstable else ""))
        for failure in self.hypothesis_failures:
            lines.append(f"hypothesis: {failure}")
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "check", "params", "status", "witness"])
        lo, hi = self.n_range
        for n in range(lo, hi + 1):
            for c in self.relator_checks:
                r = c.relator
                trivial = dict(c.trivial_at).get(n)
                if r.threshold is None or n < r.threshold:
                    status = "n/a"
                else:
                    status = "PASS" if trivial else "FAIL"
                writer.writerow([n, r.label, " ".join(map(str, r.params)), status, str(r.word)])
        writer.writerow(["summary", "stabilized_from", self.stabilized_from, "PASS" if self.passed else "FAIL", f"R*={self.R}"])
        return buf.getvalue()


def verify_limit_convergence(
    family: MarkingFamily,
    ranges: dict | None,
    R: int,
    n_range: tuple[int, int],
) -> ConvergenceReport:
    lo, hi = n_range
    if lo > hi or lo < 1:
        raise ValueError("n range must be nonempty and start at n >= 1")
    failures = []
    for n in range(lo, hi + 1):
        try:
            family.validate(n)
        except HypothesisViolation as exc:
            failures.append(str(exc))
    ranges = dict(ranges or {})
    ranges.setdefault("n_scan", (lo, hi))
    checks = []
    for rel in limit_relators(family, ranges):
        flags = tuple((n, is_trivial(rel.word, family.marking(n))) for n in range(lo, hi + 1))
        observed = None
        for n, t in reversed(flags):
            if t:
                observed = n
            else:
                break
        checks.append(RelatorCheck(rel, flags, observed))

    words = list(enumerate_relator_candidates(3, R))
    matrix = {n: [is_trivial(w, family.marking(n)) for w in words] for n in range(lo, hi + 1)}
    balls = {n: tuple(w for w, t in zip(words, matrix[n]) if t) for n in range(lo, hi + 1)}
    classes = [
        Stabilization(w, lo, hi, tuple(matrix[n][idx] for n in range(lo, hi + 1))) for idx, w in enumerate(words)
    ]
    return ConvergenceReport(family.name, R, (lo, hi), checks, balls, classes, failures)


def threshold_table(family: MarkingFamily, ranges: dict | None, n_range: tuple[int, int]) -> str:
    """CSV rows (family, relator, i, j, k, predicted N, observed first-pass n).

    Scanned thresholds have no prediction, so that column is left empty.
    """
    report_checks = verify_limit_convergence(family, ranges, 1, n_range).relator_checks
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "relator", "i", "j", "k", "predicted_N", "observed_first_pass"])
    for c in report_checks:
        p = list(c.relator.params) + [""] * (3 - len(c.relator.params))
        predicted = c.relator.threshold if c.relator.basis != "scan" else None
        writer.writerow([family.name, c.relator.label, *p[:3], "" if predicted is None else predicted, "" if c.observed_first is None else c.observed_first])
    return buf.getvalue()
