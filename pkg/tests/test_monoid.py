"""Tests for transition monoids, Green's relations, and witnesses."""

import itertools
import random
from fractions import Fraction

import pytest

from regdensity import (
    Alphabet,
    BudgetExceededError,
    Dfa,
    green_classes,
    idempotent_power,
    is_primitive,
    jclass_language_density,
    mod_counter_dfa,
    nonprimitive_witness,
    random_dfa,
    transition_monoid,
)
from regdensity.monoid import element_language_dfa

AB = Alphabet("ab")


def evens():
    return Dfa(AB, 2, [[1, 1], [0, 0]], 0, {0})


def all_words():
    return Dfa(AB, 1, [[0, 0]], 0, {0})


def starts_with_a():
    return Dfa(AB, 3, [[1, 2], [1, 1], [2, 2]], 0, {1})


def test_transition_monoid_examples():
    monoid, accept = transition_monoid(evens())
    assert len(monoid) == 2
    assert accept.elements == frozenset({monoid.identity})

    monoid, accept = transition_monoid(all_words())
    assert len(monoid) == 1
    assert accept.elements == frozenset({0})

    monoid, accept = transition_monoid(mod_counter_dfa(3))
    assert len(monoid) == 3
    assert accept.elements == frozenset({1, 2})
    g = monoid.generators[0]
    # cyclic of order three: g, g^2, g^3 = identity
    sq = monoid.compose(g, g)
    assert sq != g and monoid.compose(sq, g) == monoid.identity


def test_witnesses_are_shortlex_least():
    monoid, _ = transition_monoid(mod_counter_dfa(3))
    assert monoid.witnesses == ["", "a", "b"]
    monoid, _ = transition_monoid(starts_with_a())
    for i, witness in enumerate(monoid.witnesses):
        assert monoid.element_of_word(witness) == i


def test_monoid_closure_and_morphism_property():
    monoid, _ = transition_monoid(starts_with_a())
    rng = random.Random(3)
    for _ in range(60):
        u = "".join(rng.choice("ab") for _ in range(rng.randint(0, 6)))
        v = "".join(rng.choice("ab") for _ in range(rng.randint(0, 6)))
        assert monoid.element_of_word(u + v) == monoid.compose(
            monoid.element_of_word(u), monoid.element_of_word(v)
        )


def test_monoid_budget():
    with pytest.raises(BudgetExceededError):
        transition_monoid(mod_counter_dfa(5), budget=3)


def test_accept_set_preimage_is_the_language():
    rng = random.Random(41)
    machines = [starts_with_a(), mod_counter_dfa(3)] + [
        random_dfa(rng, 4, AB) for _ in range(4)
    ]
    for machine in machines:
        monoid, accept = transition_monoid(machine)
        for n in range(7):
            for tup in itertools.product("ab", repeat=n):
                word = "".join(tup)
                assert machine.accepts(word) == (
                    monoid.element_of_word(word) in accept.elements
                )


def test_j_order_is_a_partial_order():
    rng = random.Random(43)
    machines = [starts_with_a()] + [random_dfa(rng, 4, AB) for _ in range(4)]
    for machine in machines:
        monoid, _ = transition_monoid(machine)
        greens = green_classes(monoid)
        ids = range(len(greens.j_classes))
        for c1 in ids:
            assert greens.j_leq(c1, c1)
            for c2 in ids:
                if greens.j_leq(c1, c2) and greens.j_leq(c2, c1):
                    assert c1 == c2
                for c3 in ids:
                    if greens.j_leq(c1, c2) and greens.j_leq(c2, c3):
                        assert greens.j_leq(c1, c3)
        assert greens.j_minimal


def test_green_classes_cyclic_group():
    monoid, _ = transition_monoid(mod_counter_dfa(3))
    greens = green_classes(monoid)
    assert len(greens.r_classes) == 1
    assert len(greens.l_classes) == 1
    assert len(greens.j_classes) == 1
    assert len(greens.h_classes) == 1
    assert greens.j_minimal == (0,)


def test_green_classes_trivial():
    monoid, _ = transition_monoid(all_words())
    greens = green_classes(monoid)
    assert len(greens.j_classes) == 1 and greens.j_minimal == (0,)


def test_green_classes_first_letter_language():
    monoid, _ = transition_monoid(starts_with_a())
    greens = green_classes(monoid)
    assert len(monoid) == 3
    ident_class = greens.j_class[monoid.identity]
    assert greens.j_classes[ident_class] == frozenset({monoid.identity})
    assert len(greens.j_classes) == 2
    assert ident_class not in greens.j_minimal
    (minimal_id,) = greens.j_minimal
    assert len(greens.j_classes[minimal_id]) == 2
    assert greens.j_leq(minimal_id, ident_class)
    assert not greens.j_leq(ident_class, minimal_id)


def test_h_class_with_idempotent_is_a_subgroup():
    machines = [evens(), all_words(), starts_with_a(), mod_counter_dfa(3)]
    rng = random.Random(17)
    machines += [random_dfa(rng, 4, AB) for _ in range(6)]
    for machine in machines:
        monoid, _ = transition_monoid(machine)
        greens = green_classes(monoid)
        for h in greens.h_classes:
            idempotents = [e for e in h if monoid.compose(e, e) == e]
            if not idempotents:
                continue
            (e,) = idempotents  # a group H-class has exactly one idempotent
            for x in h:
                assert monoid.compose(e, x) == x and monoid.compose(x, e) == x
                assert monoid.compose(x, monoid.compose(e, e)) in h
                for y in h:
                    assert monoid.compose(x, y) in h


def test_idempotent_power_examples():
    monoid, _ = transition_monoid(mod_counter_dfa(3))
    assert idempotent_power(monoid, monoid.identity) == 1
    assert idempotent_power(monoid, monoid.generators[0]) == 3
    sa_monoid, _ = transition_monoid(starts_with_a())
    alpha = sa_monoid.generators[0]
    assert sa_monoid.compose(alpha, alpha) == alpha
    assert idempotent_power(sa_monoid, alpha) == 1


def test_jclass_density_examples():
    monoid, _ = transition_monoid(mod_counter_dfa(3))
    assert jclass_language_density(monoid, monoid.generators[0]) == Fraction(1, 3)
    sa_monoid, _ = transition_monoid(starts_with_a())
    assert jclass_language_density(sa_monoid, sa_monoid.identity) == 0
    trivial, _ = transition_monoid(all_words())
    assert jclass_language_density(trivial, trivial.identity) == 1
    with pytest.raises(ValueError):
        jclass_language_density(trivial, 5)


def test_non_j_minimal_elements_are_null():
    rng = random.Random(23)
    machines = [starts_with_a(), evens()] + [random_dfa(rng, 4, AB) for _ in range(6)]
    for machine in machines:
        monoid, _ = transition_monoid(machine)
        greens = green_classes(monoid)
        for element in range(len(monoid)):
            if greens.j_class[element] not in greens.j_minimal:
                assert jclass_language_density(monoid, element) == 0


def test_element_languages_partition_all_words():
    for machine in (starts_with_a(), mod_counter_dfa(3), evens()):
        monoid, _ = transition_monoid(machine)
        total = sum(
            (jclass_language_density(monoid, e) for e in range(len(monoid))),
            Fraction(0),
        )
        assert total == 1


def test_element_language_dfa_is_evaluation_preimage():
    monoid, _ = transition_monoid(starts_with_a())
    machine = element_language_dfa(monoid, monoid.generators[1])
    for n in range(5):
        for tup in itertools.product("ab", repeat=n):
            word = "".join(tup)
            assert machine.accepts(word) == (
                monoid.element_of_word(word) == monoid.generators[1]
            )


def test_nonprimitive_witness_examples():
    word, power = nonprimitive_witness(all_words())
    assert (word, power) == ("a", 1)
    word, power = nonprimitive_witness(mod_counter_dfa(3))
    assert (word, power) == ("a", 3)
    a3 = mod_counter_dfa(3)
    assert a3.accepts("a" * 4) and a3.accepts("a" * 7)
    with pytest.raises(ValueError):
        nonprimitive_witness(Dfa(AB, 2, [[0, 1], [1, 1]], 0, {0}))  # a*


def test_nonprimitive_witness_soundness_random():
    rng = random.Random(29)
    found = 0
    while found < 8:
        machine = random_dfa(rng, 4, AB)
        from regdensity import density

        if density(machine) == 0:
            continue
        found += 1
        word, power = nonprimitive_witness(machine)
        assert word
        for m in (1, 2, 3):
            candidate = word * (m * power + 1)
            assert machine.accepts(candidate)
            assert not is_primitive(candidate)
