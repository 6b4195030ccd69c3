import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roadsync.automata import (
    Dfa,
    activity_trace,
    apply_word,
    cerny_automaton,
    make_dfa,
    parse_dfa,
    word_from_str,
    word_to_str,
    write_dfa,
)
from roadsync.errors import InvalidInputError
from roadsync.syncsolve import shortest_reset_word

from support import random_dfa


def test_dfa_validation():
    with pytest.raises(InvalidInputError):
        Dfa(0, 1, ())
    with pytest.raises(InvalidInputError):
        Dfa(2, 1, ((0,), (5,)))
    with pytest.raises(InvalidInputError):
        Dfa(2, 2, ((0, 1),))


def test_apply_word_empty_is_identity():
    a = cerny_automaton(4)
    s = frozenset({1, 3})
    assert apply_word(a, s, ()) == s


def test_apply_word_single_state():
    a = make_dfa([(0, 0)])
    assert apply_word(a, {0}, (1, 0, 1)) == frozenset({0})


def test_apply_word_rejects_bad_letters():
    a = cerny_automaton(3)
    with pytest.raises(InvalidInputError):
        apply_word(a, a.full_set(), (2,))


def test_apply_word_cerny_reset():
    a = cerny_automaton(4)
    w = shortest_reset_word(a)
    assert w is not None and len(w) == 9
    assert len(apply_word(a, a.full_set(), w)) == 1


def test_activity_trace_empty_word():
    a = cerny_automaton(3)
    assert activity_trace(a, ()) == [a.full_set()]


def test_activity_trace_monotone_and_ends_singleton():
    a = cerny_automaton(4)
    w = shortest_reset_word(a)
    trace = activity_trace(a, w)
    assert len(trace) == 10
    assert trace[0] == a.full_set()
    sizes = [len(s) for s in trace]
    assert all(x >= y for x, y in zip(sizes, sizes[1:]))
    assert sizes[-1] == 1


def test_activity_trace_identity_automaton_constant():
    a = make_dfa([(0, 0), (1, 1), (2, 2)])
    trace = activity_trace(a, (0, 1, 0, 1))
    assert all(s == a.full_set() for s in trace)


@pytest.mark.parametrize("n,expect", [(2, 1), (3, 4), (4, 9)])
def test_cerny_shortest_reset_lengths(n, expect):
    w = shortest_reset_word(cerny_automaton(n))
    assert w is not None and len(w) == expect


def test_cerny_rejects_small_n():
    with pytest.raises(InvalidInputError):
        cerny_automaton(1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 30), st.integers(0, 2 ** 30), st.data())
def test_extension_homomorphism(seed_u, seed_v, data):
    rng = random.Random(seed_u ^ (seed_v << 1))
    a = random_dfa(rng, rng.randint(1, 6), rng.randint(1, 3))
    u = tuple(rng.randrange(a.alphabet_size) for _ in range(rng.randint(0, 5)))
    v = tuple(rng.randrange(a.alphabet_size) for _ in range(rng.randint(0, 5)))
    s = frozenset(q for q in range(a.t) if rng.random() < 0.6) or frozenset({0})
    assert apply_word(a, s, u + v) == apply_word(a, apply_word(a, s, u), v)
    assert len(apply_word(a, s, u)) <= len(s)


def test_factor_embedding_preserves_reset():
    rng = random.Random(5)
    checked = 0
    while checked < 40:
        a = random_dfa(rng, rng.randint(2, 5), 2)
        w = shortest_reset_word(a)
        if w is None:
            continue
        checked += 1
        prefix = tuple(rng.randrange(2) for _ in range(rng.randint(0, 3)))
        suffix = tuple(rng.randrange(2) for _ in range(rng.randint(0, 3)))
        assert len(apply_word(a, a.full_set(), prefix + w + suffix)) == 1


def test_dfa_text_roundtrip():
    a = cerny_automaton(5)
    text = write_dfa(a)
    assert parse_dfa(text) == a
    commented = "# header comment\n" + text + "\n# trailing\n"
    assert parse_dfa(commented) == a


def test_dfa_text_rejects_garbage():
    with pytest.raises(InvalidInputError):
        parse_dfa("graph 2 2\n0 1\n1 0\n")
    with pytest.raises(InvalidInputError):
        parse_dfa("dfa 2 2\n0 1\n")


def test_word_rendering_roundtrip():
    assert word_to_str((0, 1, 0), 2) == "aba"
    assert word_from_str("aba", 2) == (0, 1, 0)
    assert word_from_str("0 1 0", 2) == (0, 1, 0)
    assert word_from_str("", 2) == ()
    big = word_to_str((0, 27), 30)
    assert word_from_str(big, 30) == (0, 27)
