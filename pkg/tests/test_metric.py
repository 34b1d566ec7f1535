import pytest
from hypothesis import given, settings

from thompsonf.metric import (
    certify_girth,
    distance_to_free,
    is_trivial,
    marked_distance_bound,
    relation_ball,
    shortest_relator,
    stabilization_check,
)
from thompsonf.limits import family_xn
from thompsonf.plhomeo import generator
from thompsonf.words import Marking, Word, enumerate_reduced, evaluate, standard_marking

from conftest import STD, words


def brute_girth(m, bound):
    """Shortest length of any nonempty reduced word acting trivially."""
    for w in enumerate_reduced(m.rank, bound):
        if evaluate(w, m).is_identity():
            return len(w)
    return None


@given(words(2, 10))
def test_is_trivial_matches_full_evaluation(w):
    assert is_trivial(w, STD) == evaluate(w, STD).is_identity()


@given(words(3, 8))
def test_is_trivial_with_probes(w):
    m = Marking([generator(0), generator(1), generator(3)], probes=["1/2", "7/8"])
    assert is_trivial(w, m) == evaluate(w, m).is_identity()


def test_standard_girth_is_ten():
    w, g = shortest_relator(STD, 10)
    assert g == 10
    assert str(w) == "a^2 B A b a b A^2 B"
    assert evaluate(w, STD).is_identity()


def test_girth_agrees_with_brute_force_on_degenerate_markings():
    m = Marking([generator(1), generator(2), generator(3)])
    assert shortest_relator(m, 6)[1] == brute_girth(m, 6)
    m = Marking([generator(0), generator(0) ** 2])
    assert shortest_relator(m, 4)[1] == brute_girth(m, 4) == 3


def test_certificate():
    cert = certify_girth(STD, 6)
    assert cert.certified and cert.to_dict()["certified_no_relator_up_to"] == 6
    cert = certify_girth(STD, 10)
    assert not cert.certified and len(cert.relator) == 10


def test_relation_ball_audit_and_restrict():
    m = standard_marking(0, 1, 2)
    ball = relation_ball(m, 5)
    assert ball.audit(m)
    assert Word.parse("A b a C") in ball
    assert len(ball.restrict(3)) <= len(ball)


def test_parallel_and_serial_agree():
    m = standard_marking(0, 1, 3)
    assert relation_ball(m, 5, jobs=2).relations == relation_ball(m, 5).relations


def test_distance_bound():
    d = marked_distance_bound(standard_marking(0, 1, 2), standard_marking(0, 1, 3), 6)
    assert d.R_star == 3
    assert str(d.witness) == "a c A B"
    assert d.bound_text == "e^-3"


@pytest.mark.parametrize("pair", [((0, 1, 2), (0, 1, 3)), ((0, 1, 4), (0, 1, 3)), ((0, 2, 3), (0, 1, 5))])
def test_distance_symmetric(pair):
    m1, m2 = (standard_marking(*p) for p in pair)
    assert marked_distance_bound(m1, m2, 5).R_star == marked_distance_bound(m2, m1, 5).R_star


def test_distance_to_self_saturates():
    m = standard_marking(0, 1, 2)
    assert marked_distance_bound(m, m, 5).R_star == 5


@settings(max_examples=10)
@given(words(3, 4))
def test_ball_monotone_in_radius(w):
    m = standard_marking(0, 1, 2)
    small, big = relation_ball(m, 3), relation_ball(m, 5)
    assert small.as_set() <= big.as_set()


def test_distance_to_free():
    assert distance_to_free(STD, 10) == 9
    assert distance_to_free(STD, 6) == 6


def test_stabilization():
    s = stabilization_check(Word.parse("C A b a"), family_xn(), (3, 10))
    assert s.kind == "all-nontrivial" and s.flips == []
    s = stabilization_check(Word.parse("a B a C A b c A"), family_xn(), (1, 6))
    assert s.kind == "flips" and s.flips == [3]
