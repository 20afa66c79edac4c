"""Tests for the DFA/NFA machinery."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regdensity import (
    Alphabet,
    Dfa,
    LanguageOracle,
    Nfa,
    census_by_enumeration,
    combine,
    dfa_from_json,
    dfa_to_json,
    equivalent,
    has_forbidden_prefix,
    has_forbidden_word,
    is_coinfinite,
    is_subset,
    language_infinite,
    mod_counter_dfa,
    random_dfa,
    reverse,
    shortlex_least_member,
    transfer_matrix,
)

AB = Alphabet("ab")
ABC = Alphabet("abc")


@st.composite
def dfas(draw, max_states=6, alphabets=("ab", "abc")):
    alphabet = Alphabet(draw(st.sampled_from(alphabets)))
    n = draw(st.integers(1, max_states))
    delta = [
        [draw(st.integers(0, n - 1)) for _ in range(len(alphabet))]
        for _ in range(n)
    ]
    accepting = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(alphabet, n, delta, 0, accepting)


def oracle_of(dfa):
    return LanguageOracle("dfa", dfa.alphabet, dfa.accepts)


def starts_with_a():
    return Dfa(AB, 3, [[1, 2], [1, 1], [2, 2]], 0, {1})


def evens():
    return Dfa(AB, 2, [[1, 1], [0, 0]], 0, {0})


def a_star():
    return Dfa(AB, 2, [[0, 1], [1, 1]], 0, {0})


def test_dfa_validation():
    with pytest.raises(ValueError):
        Dfa(AB, 2, [[0, 1]], 0, set())
    with pytest.raises(ValueError):
        Dfa(AB, 2, [[0, 1], [0]], 0, set())
    with pytest.raises(ValueError):
        Dfa(AB, 2, [[0, 2], [0, 0]], 0, set())
    with pytest.raises(ValueError):
        Dfa(AB, 2, [[0, 1], [0, 0]], 2, set())
    with pytest.raises(ValueError):
        Dfa(AB, 2, [[0, 1], [0, 0]], 0, {5})


def test_accepts():
    m = starts_with_a()
    assert m.accepts("a") and m.accepts("abba")
    assert not m.accepts("") and not m.accepts("ba")


def test_alphabet_mismatch_errors():
    with pytest.raises(ValueError):
        starts_with_a().union(Dfa(ABC, 1, [[0, 0, 0]], 0, {0}))
    with pytest.raises(ValueError):
        combine(starts_with_a(), Dfa(ABC, 1, [[0, 0, 0]], 0, {0}), "union")
    with pytest.raises(ValueError):
        combine(starts_with_a(), evens(), "xor")


@settings(max_examples=40, deadline=None)
@given(dfas())
def test_complement_involution(machine):
    assert equivalent(machine.complement().complement(), machine)


def test_minimize_examples():
    four_state_evens = Dfa(AB, 4, [[1, 3], [0, 2], [3, 1], [2, 0]], 0, {0, 2})
    assert four_state_evens.minimized().n_states == 2
    a3 = mod_counter_dfa(3)
    assert a3.intersection(a3.complement()).is_empty()


@settings(max_examples=30, deadline=None)
@given(dfas())
def test_minimize_idempotent_and_language_preserving(machine):
    minimal = machine.minimized()
    assert minimal.minimized() == minimal
    assert machine.count_words(10) == minimal.count_words(10)


@settings(max_examples=25, deadline=None)
@given(dfas(max_states=6), st.integers(0, 10))
def test_count_words_matches_enumeration(machine, max_length):
    if len(machine.alphabet) ** max_length > 2 ** 16:
        max_length = 10 if len(machine.alphabet) == 2 else 8
    by_matrix = machine.count_words(max_length)
    by_enumeration = census_by_enumeration(oracle_of(machine), max_length)
    assert by_matrix == by_enumeration


def test_count_words_examples():
    assert starts_with_a().count_words(3).counts[3] == 4
    assert mod_counter_dfa(3).count_words(1).counts[1] == 2
    assert evens().count_words(4).counts[4] == 16


@settings(max_examples=25, deadline=None)
@given(dfas(max_states=5, alphabets=("ab",)), dfas(max_states=5, alphabets=("ab",)))
def test_union_intersection_cardinalities(x, y):
    n = 8
    union = x.union(y).count_words(n).counts
    meet = x.intersection(y).count_words(n).counts
    cx = x.count_words(n).counts
    cy = y.count_words(n).counts
    for a, b, c, d in zip(union, meet, cx, cy):
        assert a + b == c + d


@settings(max_examples=40, deadline=None)
@given(dfas())
def test_transfer_matrix_row_sums(machine):
    matrix = transfer_matrix(machine)
    for row in matrix.entries:
        assert sum(row) == len(machine.alphabet)


def test_forbidden_word_examples():
    ends_c = Dfa(ABC, 3, [[0, 0, 1], [2, 2, 2], [2, 2, 2]], 0, {1})
    assert has_forbidden_word(ends_c) == "ca"
    assert has_forbidden_word(a_star()) == "b"
    assert has_forbidden_word(mod_counter_dfa(3)) is None


def test_forbidden_word_brute_cross_check():
    ends_c = Dfa(ABC, 3, [[0, 0, 1], [2, 2, 2], [2, 2, 2]], 0, {1})
    found = has_forbidden_word(ends_c)

    def is_factor_of_member(piece, machine, max_len):
        for n in range(max_len + 1):
            for tup in itertools.product(machine.alphabet.symbols, repeat=n):
                word = "".join(tup)
                if piece in word and machine.accepts(word):
                    return True
        return False

    assert not is_factor_of_member(found, ends_c, 7)
    # everything strictly shortlex-smaller of the same length is a factor
    for tup in itertools.product(ABC.symbols, repeat=len(found)):
        word = "".join(tup)
        if ABC.shortlex_key(word) < ABC.shortlex_key(found):
            assert is_factor_of_member(word, ends_c, 7)


def test_forbidden_word_empty_language_is_epsilon():
    nothing = Dfa(AB, 1, [[0, 0]], 0, frozenset())
    assert has_forbidden_word(nothing) == ""
    assert has_forbidden_prefix(nothing) == ""


def test_forbidden_prefix_examples():
    assert has_forbidden_prefix(starts_with_a()) == "b"
    assert has_forbidden_prefix(mod_counter_dfa(3)) is None


def test_dense_means_every_short_word_is_a_factor():
    rng = random.Random(11)
    checked = 0
    while checked < 5:
        machine = random_dfa(rng, rng.randint(2, 5), AB)
        if has_forbidden_word(machine) is not None:
            continue
        checked += 1
        accepted = [
            "".join(tup)
            for m in range(13)
            for tup in itertools.product("ab", repeat=m)
            if machine.accepts("".join(tup))
        ]
        for n in range(5):
            for tup in itertools.product("ab", repeat=n):
                piece = "".join(tup)
                assert any(piece in word for word in accepted)


def test_mod_counter_examples():
    a3 = mod_counter_dfa(3)
    assert a3.n_states == 3 and a3.accepting == frozenset({1, 2})
    a1 = mod_counter_dfa(1)
    assert a1.is_empty()
    looped = mod_counter_dfa(3, loops=("c",))
    assert looped.accepts("cac")
    assert not looped.accepts("cabc")


def test_mod_counter_validation():
    with pytest.raises(ValueError):
        mod_counter_dfa(0)
    with pytest.raises(ValueError):
        mod_counter_dfa(3, "a", "a")
    with pytest.raises(ValueError):
        mod_counter_dfa(3, loops=("a",))
    with pytest.raises(ValueError):
        mod_counter_dfa(3, alphabet=ABC)  # letter c has no action


def test_language_infinite_examples():
    all_words = Dfa(AB, 1, [[0, 0]], 0, {0})
    assert language_infinite(all_words) and not is_coinfinite(all_words)
    eps_only = Dfa(AB, 2, [[1, 1], [1, 1]], 0, {0})
    assert not language_infinite(eps_only) and is_coinfinite(eps_only)
    assert language_infinite(evens()) and is_coinfinite(evens())


def test_shortlex_least_member_examples():
    all_words = Dfa(AB, 1, [[0, 0]], 0, {0})
    assert shortlex_least_member(all_words, 2) == "aaa"
    starts_b = Dfa(AB, 3, [[2, 1], [1, 1], [2, 2]], 0, {1})
    assert shortlex_least_member(starts_b, 0) == "b"
    nothing = Dfa(AB, 1, [[0, 0]], 0, frozenset())
    assert shortlex_least_member(nothing, 0) is None
    assert shortlex_least_member(all_words) == ""


def test_reverse_language():
    machine = starts_with_a()
    rev = reverse(machine).determinize()
    for n in range(6):
        for tup in itertools.product("ab", repeat=n):
            word = "".join(tup)
            assert rev.accepts(word) == machine.accepts(word[::-1])


def test_epsilon_nfa_determinize():
    # (a|epsilon) b over ab
    nfa = Nfa(
        AB,
        3,
        {(0, 0): {1}, (1, 1): {2}},
        {0},
        {2},
        epsilon={0: {1}},
    )
    dfa = nfa.determinize()
    assert dfa.accepts("ab") and dfa.accepts("b")
    assert not dfa.accepts("a") and not dfa.accepts("")


def test_is_subset_and_equivalent():
    assert is_subset(starts_with_a(), Dfa(AB, 1, [[0, 0]], 0, {0}))
    assert not is_subset(Dfa(AB, 1, [[0, 0]], 0, {0}), starts_with_a())
    assert equivalent(evens(), Dfa(AB, 4, [[1, 3], [0, 2], [3, 1], [2, 0]], 0, {0, 2}))


def test_json_round_trip():
    machine = mod_counter_dfa(3, loops=("c",))
    doc = dfa_to_json(machine)
    assert dfa_from_json(doc) == machine
    assert dfa_from_json(__import__("json").dumps(doc)) == machine
    with pytest.raises(ValueError):
        dfa_from_json({"alphabet": ["a"], "states": 1})
