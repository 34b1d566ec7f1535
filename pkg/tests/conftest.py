import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from thompsonf.dyadic import Dyadic
from thompsonf.words import Word, evaluate, standard_marking

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

STD = standard_marking(0, 1)


def frac(d: Dyadic) -> Fraction:
    return Fraction(d.num, 2**d.exp)


dyadics = st.builds(lambda n, e: Dyadic(n, e), st.integers(-(2**40), 2**40), st.integers(0, 40))
unit_dyadics = st.integers(0, 12).flatmap(lambda e: st.integers(0, 2**e).map(lambda n: Dyadic(n, e)))


def words(rank=2, max_len=10):
    return st.lists(st.integers(0, 2 * rank - 1), max_size=max_len).map(Word)


def elements(max_len=8):
    return words(2, max_len).map(lambda w: evaluate(w, STD))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
