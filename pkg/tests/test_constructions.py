import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thompsonf.constructions import (
    PoolExhausted,
    ResourceCapExceeded,
    base_interval,
    construct_witnesses_multi,
    construct_witnesses_single,
    derived_images,
    girth_marking,
    partition_witnesses,
    girth_chain,
    verify_fact,
)
from thompsonf.dyadic import Dyadic
from thompsonf.metric import certify_girth, is_trivial
from thompsonf.plhomeo import support
from thompsonf.words import Marking, Word, enumerate_reduced, evaluate, substitute


def supported_below(f, eps):
    hull = support(f).hull()
    return hull is None or hull[1] < eps


def test_base_interval():
    lo, hi = base_interval(Dyadic(1, 6), 4)
    assert (str(lo), str(hi)) == ("1/4096", "1/2048")


def test_single_witness():
    w = Word.parse("a b A B")
    wit = construct_witnesses_single(w, Dyadic(1, 6))
    (u,) = wit.elements
    assert support(u).to_list() == [["1/4096", "1/1024"]]
    f = evaluate(w, wit.marking())
    assert not f.is_identity()
    c = wit.certificate_for(w)
    assert f(c.point) == c.image != c.point


@settings(max_examples=25)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=7).map(Word).filter(bool))
def test_single_witness_random_words(w):
    eps = Dyadic(1, 5)
    wit = construct_witnesses_single(w, eps, k=3)
    assert all(supported_below(u, eps) for u in wit.elements)
    f = evaluate(w, wit.marking())
    c = wit.certificate_for(w)
    assert c.point < eps and f(c.point) != c.point


def test_multi_witness_rank_two_full_evaluation():
    # every nontrivial word of length <= 3 over (a, b): checked by full composition
    words = list(enumerate_reduced(2, 3))
    eps = Dyadic(1, 6)
    wit = construct_witnesses_multi(words, eps, 2)
    m = wit.marking()
    assert supported_below(wit.elements[0], eps)
    for w in words:
        f = evaluate(w, m)
        c = wit.certificate_for(w)
        assert not f.is_identity() and c.point < eps and f(c.point) != c.point


def test_witness_rejects_bad_input():
    with pytest.raises(ValueError):
        construct_witnesses_multi([Word()], Dyadic(1, 4), 2)
    with pytest.raises(ValueError):
        construct_witnesses_multi([Word.parse("c")], Dyadic(1, 4), 2)
    with pytest.raises(ValueError):
        construct_witnesses_multi([Word.parse("a")], Dyadic(3, 2), 2)


def test_cap():
    words = list(enumerate_reduced(2, 4))
    with pytest.raises(ResourceCapExceeded):
        construct_witnesses_multi(words, Dyadic(1, 6), 2, cap_breakpoints=10)


def brute_fact(m):
    images = [Word.gen(0), Word.gen(1), Word.gen(0, m) * Word.gen(1, m)]
    return all(substitute(w, images) for w in enumerate_reduced(3, m))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_fact_against_brute_force(m):
    res = verify_fact(m)
    assert res.holds == brute_fact(m)
    assert res.holds


def test_fact_class_counts():
    assert [verify_fact(m).classes_checked for m in (1, 2, 3)] == [3, 12, 35]


def test_derived_images():
    assert [str(w) for w in derived_images(4, 2)] == ["a", "a^2 b^2", "b", "c"]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_girth_marking_targeted(m):
    gm = girth_marking(3, m)
    assert certify_girth(gm, m).certified
    links = girth_chain(gm)
    assert links and all(link.holds for link in links)
    # probes only speed up nontriviality; repeat with full evaluation
    bare = Marking(gm.maps)
    for link in links:
        assert not evaluate(link.word, bare).is_identity()


def test_girth_marking_faithful_m1():
    gm = girth_marking(3, 1, mode="faithful")
    assert certify_girth(gm, 1).certified


def test_girth_marking_caps():
    with pytest.raises(ResourceCapExceeded):
        girth_marking(3, 3, mode="faithful", max_words=100)
    with pytest.raises(ValueError):
        girth_marking(2, 3)


def test_partition_witnesses():
    words = [Word.parse("a b A B"), Word.parse("a^2 B")]
    us = partition_witnesses(words, 2)
    m = Marking(us)
    for w in words:
        assert not is_trivial(w, m)


def test_partition_witnesses_exhaustion():
    with pytest.raises(PoolExhausted):
        partition_witnesses([Word()], 2)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=8).map(Word).filter(bool))
def test_tracked_point_dichotomy(w):
    # the traced orientation v pushes its point up when exp_a(v) = 0, else out of I_0
    from thompsonf.constructions import _canonical_orientation
    from thompsonf.words import exponent_sum

    wit = construct_witnesses_single(w, Dyadic(1, 5), k=3)
    v, flipped = _canonical_orientation(w)
    c = wit.certificate_for(w)
    x, image = (c.image, c.point) if flipped else (c.point, c.image)
    lo, hi = wit.plan.base
    if exponent_sum(v, 0) == 0:
        assert image > x
    else:
        assert not lo <= image <= hi


def test_translates_are_halvings():
    wit = construct_witnesses_single(Word.parse("a b"), Dyadic(1, 4), radius=3)
    x0 = wit.marking()[0]
    for i, (lo, hi) in wit.plan.translates():
        assert (x0**i)(wit.plan.base[0]) == lo and (x0**i)(wit.plan.base[1]) == hi
    wit.plan.check()


def test_beta_expansion_length():
    from thompsonf.constructions import _expanded_images

    assert len(_expanded_images(3, 4)[1]) == 9


def test_partition_witness_examples():
    (u1, u2) = partition_witnesses([Word.parse("b")], 2, [0, 1])
    from thompsonf.plhomeo import generator

    assert u2 == generator(0)
    us = partition_witnesses([Word.parse("b"), Word.parse("a b A B")], 2)
    # pieces stay inside their halves, so the cut point is fixed
    for u in us:
        assert u(Dyadic(1, 1)) == Dyadic(1, 1)
