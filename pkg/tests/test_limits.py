import csv
import io
import json

import pytest

from thompsonf.dyadic import Dyadic, parse
from thompsonf.limits import (
    HypothesisViolation,
    family_power,
    family_small_support,
    family_xn,
    limit_relators,
    threshold_table,
    verify_limit_convergence,
)
from thompsonf.metric import is_trivial
from thompsonf.plhomeo import generator, rescale_into, slope_at_endpoint, support
from thompsonf.words import Word, evaluate, standard_marking


def test_xn_family_hypothesis():
    fam = family_xn()
    assert support(fam.element(2)).to_list() == [["3/4", "1"]]
    assert fam.param("t", 2) == parse("3/4")
    for n in range(1, 10):
        fam.validate(n)
        assert evaluate(fam.word(n), standard_marking(0, 1)) == fam.element(n)


def test_xn_linear_piece():
    x3 = generator(3)
    lo, hi = parse("31/32"), parse("15/16")
    assert x3(lo) == hi
    assert all(not lo < x < 1 for x in x3.xs)


def test_custom_xn_violation():
    fam = family_xn("custom", t_rule=lambda n: 1 - Dyadic(1, n), w_rule=lambda n: Word.parse("b"))
    fam.validate(1)
    with pytest.raises(HypothesisViolation) as info:
        fam.validate(4)
    assert info.value.n == 4 and "support" in info.value.clause


def test_custom_xn_requires_rules():
    with pytest.raises(ValueError):
        family_xn("custom")


def test_small_support_family():
    fam = family_small_support()
    assert support(fam.element(3)).to_list() == [["1/16", "3/32"]]
    for n in range(1, 8):
        fam.validate(n)
        assert evaluate(fam.word(n), standard_marking(0, 1)) == fam.element(n)
        g = fam.element(n)
        x0 = generator(0)
        translate = x0 * g * x0.inverse()
        assert support(g).interiors_disjoint(support(translate))


def test_small_support_violation():
    fam = family_small_support(
        "custom",
        g_rule=lambda n: rescale_into(generator(0), Dyadic(1, n + 1), Dyadic(1, n)),
        r_rule=lambda n: Dyadic(1, n + 1),
        s_rule=lambda n: Dyadic(1, n),
    )
    with pytest.raises(HypothesisViolation, match="2 r_n"):
        fam.validate(3)


def test_power_family():
    fam = family_power()
    assert slope_at_endpoint(fam.element(3), "zero") == -3
    for n in range(1, 11):
        fam.validate(n)
        assert is_trivial(Word.parse("C") * Word.gen(0, n), fam.marking(n))


def test_xn_thresholds():
    rels = {(r.label, r.params): r for r in limit_relators(family_xn(), {"i": (-3, 3)})}
    assert rels[("R3", ())].threshold == 1
    assert [rels[("[bA, a^i c a^-i]", (i,))].threshold for i in range(0, 4)] == [2, 3, 4, 5]
    assert rels[("[bA, a^i c a^-i]", (-1,))].basis == "scan"


def test_power_thresholds():
    rels = {r.params: r for r in limit_relators(family_power(), {"i": (1, 2), "j": (0, 4), "k": (0, 2)}) if r.params}
    r = rels[(1, 0, 0)]
    assert r.threshold == 1 and r.word == Word.parse("a B C B c b A C b c")
    r = rels[(1, 2, 0)]
    assert r.threshold == 3
    assert not is_trivial(r.word, family_power().marking(2))
    assert is_trivial(r.word, family_power().marking(3))


def test_power_relator_is_R1_at_n1():
    from thompsonf.limits import R1
    from thompsonf.words import canonical_cyclic, substitute

    r = [r for r in limit_relators(family_power(), {"i": (1, 1), "j": (0, 0), "k": (0, 0)}) if r.params == (1, 0, 0)][0]
    at_one = substitute(r.word, [Word.parse("a"), Word.parse("b"), Word.parse("a")])
    assert canonical_cyclic(at_one) == canonical_cyclic(R1)


def test_empty_ranges():
    with pytest.raises(ValueError):
        limit_relators(family_xn(), {"i": (2, 1)})
    with pytest.raises(ValueError):
        verify_limit_convergence(family_xn(), {}, 4, (5, 3))


def test_relators_are_reduced():
    for fam, rng in ((family_xn(), {}), (family_small_support(), {"n_scan": (1, 6)}), (family_power(), {})):
        for r in limit_relators(fam, rng):
            assert Word(r.word) == r.word and len(r.word) > 0


def test_xn_report():
    rep = verify_limit_convergence(family_xn(), {"i": (-3, 3)}, 6, (4, 10))
    assert rep.passed
    assert rep.stabilized_from == 4
    named = {c.relator.label: c for c in rep.relator_checks}
    assert named["R3"].passed and named["R4"].passed
    data = json.loads(rep.to_json())
    assert data["status"] == "PASS"
    assert "overall: PASS" in rep.to_text()


def test_power_report_ball():
    rep = verify_limit_convergence(family_power(), {}, 5, (6, 12))
    assert rep.passed and rep.unstable_words == []
    assert [str(w) for w in rep.tail_ball] == ["a c A C"]


def test_small_report():
    rep = verify_limit_convergence(family_small_support(), {"i": (-2, 2)}, 4, (1, 8))
    assert rep.passed
    thresholds = {r.relator.params: r.relator.threshold for r in rep.relator_checks if r.relator.label == "[a^i b a^-i, c]"}
    assert thresholds == {(-2,): 1, (-1,): 1, (0,): 1, (1,): 2, (2,): 3}


def test_report_flags_hypothesis_failures():
    fam = family_xn("custom", t_rule=lambda n: 1 - Dyadic(1, n), w_rule=lambda n: Word.parse("b"))
    rep = verify_limit_convergence(fam, {"i": (0, 1)}, 3, (1, 4))
    assert not rep.passed and len(rep.hypothesis_failures) == 3


def test_csv_outputs():
    rep = verify_limit_convergence(family_xn(), {"i": (0, 1)}, 4, (1, 3))
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["n", "check", "params", "status", "witness"]
    assert rows[-1][0] == "summary"
    table = list(csv.DictReader(io.StringIO(threshold_table(family_xn(), {"i": (0, 1)}, (1, 4)))))
    i1 = [r for r in table if r["i"] == "1"][0]
    assert i1["predicted_N"] == "3" and i1["observed_first_pass"] == "3"
