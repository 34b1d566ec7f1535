import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thompsonf.dyadic import Dyadic
from thompsonf.plhomeo import compose, generator
from thompsonf.words import (
    Marking,
    Word,
    canonical_cyclic,
    commutator,
    count_reduced,
    cyclic_reduce,
    delete_generator,
    enumerate_reduced,
    enumerate_relator_candidates,
    evaluate,
    evaluate_at,
    exponent_sum,
    free_reduce,
    standard_marking,
    substitute,
)

from conftest import STD, unit_dyadics, words


def naive_reduce(codes):
    codes = list(codes)
    changed = True
    while changed:
        changed = False
        for i in range(len(codes) - 1):
            if codes[i] ^ 1 == codes[i + 1]:
                del codes[i : i + 2]
                changed = True
                break
    return tuple(codes)


R1 = Word.parse("b A A b a a B A B a")


@given(st.lists(st.integers(0, 5), max_size=30))
def test_free_reduction_matches_naive(codes):
    assert tuple(free_reduce(codes)) == naive_reduce(codes)


@pytest.mark.parametrize("text", ["a^2 B c^-1", "1", "a b A B", "c^3 A^-2"])
def test_parse_print_round_trip(text):
    w = Word.parse(text)
    assert Word.parse(str(w)) == w


def test_parse_normalises():
    assert str(Word.parse("a a^-1 b")) == "b"
    assert str(Word.parse("A^-2")) == "a^2"
    with pytest.raises(ValueError):
        Word.parse("a + b")


@given(words(3), words(3))
def test_inverse_and_product(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert not (u * u.inverse())


@given(words(2, 8), words(2, 8))
def test_evaluation_is_homomorphism(u, v):
    assert evaluate(u * v, STD) == compose(evaluate(u, STD), evaluate(v, STD))
    assert evaluate(u.inverse(), STD) == evaluate(u, STD).inverse()


@given(words(2, 10), unit_dyadics)
def test_pointwise_evaluation_agrees(w, t):
    assert evaluate_at(w, STD, t) == evaluate(w, STD)(t)


def test_relator_and_conjugation():
    assert len(R1) == 10
    assert evaluate(R1, STD).is_identity()
    assert evaluate(Word.parse("A b a"), STD) == generator(2)


@given(words(3, 6), st.lists(words(2, 4), min_size=3, max_size=3))
def test_substitution_square(w, images):
    # evaluating w(images) in STD equals evaluating w in the marking of image values
    m = Marking([evaluate(im, STD) for im in images])
    assert evaluate(substitute(w, images), STD) == evaluate(w, m)


def test_substitute_rank_mismatch():
    with pytest.raises(ValueError):
        substitute(Word.parse("c"), [Word.parse("a")])


@pytest.mark.parametrize("k,length", [(1, 3), (2, 4), (3, 3)])
def test_enumeration_counts(k, length):
    got = list(enumerate_reduced(k, length, min_length=length))
    assert len(got) == count_reduced(k, length) == len(set(got))
    assert all(len(w) == length for w in got)


def test_rank_two_up_to_six():
    assert sum(1 for _ in enumerate_reduced(2, 6, min_length=0)) == 1457


def test_enumeration_is_length_lex():
    ws = list(enumerate_reduced(2, 4))
    assert ws == sorted(ws, key=lambda w: w.sort_key())


def _orbit(w):
    out = set()
    for base in (tuple(w), tuple(w.inverse())):
        for i in range(len(base)):
            out.add(base[i:] + base[:i])
    return frozenset(out)


@pytest.mark.parametrize("k,n", [(2, 6), (3, 4)])
def test_relator_candidates_match_brute_force_orbits(k, n):
    classes = set()
    for w in enumerate_reduced(k, n):
        c = cyclic_reduce(w)
        if len(c) == len(w):
            classes.add(_orbit(w))
    cands = list(enumerate_relator_candidates(k, n))
    assert len(cands) == len(classes)
    assert {_orbit(w) for w in cands} == classes


def test_rank_two_classes_up_to_four():
    assert len(list(enumerate_relator_candidates(2, 4))) == 25


@given(words(3, 10))
def test_canonical_cyclic_is_class_invariant(w):
    c = canonical_cyclic(w)
    assert canonical_cyclic(w.inverse()) == c
    if w:
        assert canonical_cyclic(Word(tuple(w[1:]) + (w[0],))) == c


def test_helpers():
    w = Word.parse("a b^2 C a")
    assert exponent_sum(w, 1) == 2
    assert delete_generator(w, 1) == Word.parse("a C a")
    assert commutator(Word.parse("a"), Word.parse("b")) == Word.parse("A B a b")


def test_marking_json_round_trip():
    m = Marking([generator(0), compose(generator(1), generator(3))], name="t", probes=[Dyadic(3, 4)])
    back = Marking.from_json(m.to_json())
    assert back == m and back.name == "t" and back.probes == m.probes
    assert Marking.from_data(m.to_list()) == m


def test_marking_rank_check():
    with pytest.raises(ValueError):
        evaluate(Word.parse("c"), standard_marking(0, 1))


def test_all_words_of_small_length_distinct_classes():
    seen = set()
    for w in itertools.islice(enumerate_relator_candidates(2, 5), 200):
        assert w not in seen
        seen.add(w)


def test_word_count_formula():
    # 2k (2k-1)^(L-1) summed over lengths 1..L
    assert sum(1 for _ in enumerate_reduced(2, 3)) == 4 * (3**3 - 1) // 2 == 52
