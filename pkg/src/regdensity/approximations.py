"""Parameterized regular approximation families with exact densities,
containment verification against membership oracles, and gap reports.

Each family pairs a target oracle with inner (subset) and/or outer
(superset) DFA generators.  A missing inner generator contributes density 0
(the empty language) and a missing outer generator density 1 (all words);
claimed densities, where a closed form exists, must match the engine's
exact value with zero tolerance.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .automata import Dfa, mod_counter_dfa, reverse
from .core import (
    Alphabet,
    BudgetExceededError,
    DEFAULT_ENUMERATION_BUDGET,
    LengthCensus,
    census_by_enumeration,
    ratio_and_cesaro,
)
from .density import density
from .languages import (
    LanguageOracle,
    count_eq,
    goldstine,
    infix_extension,
    o3,
    o4,
    palindromes,
    prefix_extension,
    staircase_word_prefix,
    suffix_extension,
)
from .monoid import transition_monoid

DEFAULT_STATE_BUDGET = 200_000


@dataclass(frozen=True)
class ApproxFamily:
    """Inner/outer DFA generators converging to a target oracle."""

    name: str
    target: LanguageOracle
    inner: Optional[Callable[[int], Dfa]] = None
    outer: Optional[Callable[[int], Dfa]] = None
    inner_claim: Optional[Callable[[int], Optional[Fraction]]] = None
    outer_claim: Optional[Callable[[int], Optional[Fraction]]] = None


@dataclass(frozen=True)
class GapRow:
    k: int
    inner_density: Fraction
    outer_density: Fraction
    gap: Fraction
    inner_counterexample: Optional[str]
    outer_counterexample: Optional[str]

    @property
    def containment_ok(self):
        return self.inner_counterexample is None and self.outer_counterexample is None


@dataclass(frozen=True)
class GapReport:
    family: str
    rows: tuple
    target_cesaro: tuple


# -- generators ---------------------------------------------------------------

def ends_with_letter_dfa(letter, alphabet):
    """Words whose last letter is the given one."""
    rank = alphabet.rank(letter)
    delta = [
        [1 if a == rank else 0 for a in range(len(alphabet))],
        [1 if a == rank else 0 for a in range(len(alphabet))],
    ]
    return Dfa(alphabet, 2, delta, 0, {1})


def empty_language_dfa(alphabet):
    return Dfa(alphabet, 1, [[0] * len(alphabet)], 0, frozenset())


def contains_factor_dfa(pattern, alphabet):
    """Words containing the pattern as a factor (textbook matcher automaton)."""
    m = len(pattern)
    delta = []
    for j in range(m + 1):
        row = []
        for ch in alphabet.symbols:
            if j == m:
                row.append(m)
                continue
            candidate = pattern[:j] + ch
            while candidate and not pattern.startswith(candidate):
                candidate = candidate[1:]
            row.append(len(candidate))
        delta.append(row)
    return Dfa(alphabet, m + 1, delta, 0, {m})


def goldstine_inner_dfa(k):
    """Words of the block language whose first k letters already diverge
    from the staircase word and whose last letter is b."""
    if k < 1:
        raise ValueError("prefix length must be at least 1")
    alphabet = Alphabet("ab")
    prefix = staircase_word_prefix(k)
    # state j < k: j letters read, all matching the staircase prefix;
    # div[j]: j letters read, already diverged; then a 2-state last-letter
    # tail and a dead sink for words that completed the staircase prefix
    div = {j: k + j - 1 for j in range(1, k + 1)}
    tail_a = 2 * k
    tail_b = 2 * k + 1
    dead = 2 * k + 2
    delta = [[0, 0] for _ in range(2 * k + 3)]
    for j in range(k):
        for a, ch in enumerate("ab"):
            matches = ch == prefix[j]
            if j < k - 1:
                delta[j][a] = j + 1 if matches else div[j + 1]
            else:
                delta[j][a] = dead if matches else div[k]
    for j in range(1, k):
        delta[div[j]][0] = div[j + 1]
        delta[div[j]][1] = div[j + 1]
    delta[div[k]][0] = tail_a
    delta[div[k]][1] = tail_b
    for state in (tail_a, tail_b):
        delta[state][0] = tail_a
        delta[state][1] = tail_b
    delta[dead][0] = dead
    delta[dead][1] = dead
    return Dfa(alphabet, 2 * k + 3, delta, 0, {tail_b})


def nonpalindrome_window_dfa(k, alphabet=None, state_budget=DEFAULT_STATE_BUDGET):
    """Words of length >= 2k whose last k letters do not mirror the first k.

    Realised as a k-letter prefix memory, a sliding window of the last k
    letters, and a saturating counter of letters read beyond the prefix;
    the result is minimized.
    """
    if k < 1:
        raise ValueError("window length must be at least 1")
    if alphabet is None:
        alphabet = Alphabet("ab")
    s = len(alphabet)
    estimated = (s ** k - 1) // (s - 1) if s > 1 else k
    estimated += (s ** k) * (s ** k) * (k + 1)
    if estimated > state_budget:
        raise BudgetExceededError(
            "window automaton needs about %d states, budget is %d"
            % (estimated, state_budget)
        )
    index = {}
    delta = []
    accepting = set()

    def state_id(key):
        if key not in index:
            index[key] = len(delta)
            delta.append([None] * s)
        return index[key]

    start = state_id(("p", ""))
    pending = [("p", "")]
    seen = {("p", "")}
    while pending:
        key = pending.pop()
        sid = index[key]
        if key[0] == "p":
            prefix = key[1]
            for a, ch in enumerate(alphabet.symbols):
                grown = prefix + ch
                nxt = (
                    ("m", grown, grown, 0) if len(grown) == k else ("p", grown)
                )
                delta[sid][a] = state_id(nxt)
                if nxt not in seen:
                    seen.add(nxt)
                    pending.append(nxt)
        else:
            _, first, window, extra = key
            if extra == k and window != first[::-1]:
                accepting.add(sid)
            for a, ch in enumerate(alphabet.symbols):
                nxt = ("m", first, window[1:] + ch, min(extra + 1, k))
                delta[sid][a] = state_id(nxt)
                if nxt not in seen:
                    seen.add(nxt)
                    pending.append(nxt)
    raw = Dfa(alphabet, len(delta), delta, start, accepting)
    return raw.minimized()


def _word_trie_states(alphabet, max_exclusive):
    """Deterministically ordered ids for all words shorter than the bound."""
    order = [""]
    for length in range(1, max_exclusive):
        order.extend(
            "".join(p)
            for p in itertools.product(alphabet.symbols, repeat=length)
        )
    return {w: i for i, w in enumerate(order)}, order


def suffix_inner_dfa(base, letter, n, state_budget=DEFAULT_STATE_BUDGET):
    """Union of the cylinders w·letter·B* over base members w shorter than n."""
    alphabet = Alphabet(base.alphabet.symbols + (letter,))
    s = len(base.alphabet)
    trie_size = sum(s ** i for i in range(n))
    if trie_size + 2 > state_budget:
        raise BudgetExceededError("cylinder trie needs %d states" % (trie_size + 2))
    index, order = _word_trie_states(base.alphabet, n)
    accept = len(order)
    dead = len(order) + 1
    delta = []
    for word in order:
        row = []
        for ch in base.alphabet.symbols:
            grown = word + ch
            row.append(index.get(grown, dead))
        row.append(accept if base(word) else dead)
        delta.append(row)
    delta.append([accept] * (s + 1))
    delta.append([dead] * (s + 1))
    return Dfa(alphabet, len(order) + 2, delta, 0, {accept})


def suffix_outer_dfa(base, letter, n, state_budget=DEFAULT_STATE_BUDGET):
    """All words except the cylinders of base non-members shorter than n."""
    alphabet = Alphabet(base.alphabet.symbols + (letter,))
    s = len(base.alphabet)
    trie_size = sum(s ** i for i in range(n))
    if trie_size + 2 > state_budget:
        raise BudgetExceededError("cylinder trie needs %d states" % (trie_size + 2))
    index, order = _word_trie_states(base.alphabet, n)
    free = len(order)
    dead = len(order) + 1
    delta = []
    for word in order:
        row = []
        for ch in base.alphabet.symbols:
            grown = word + ch
            row.append(index.get(grown, free))
        row.append(free if base(word) else dead)
        delta.append(row)
    delta.append([free] * (s + 1))
    delta.append([dead] * (s + 1))
    accepting = frozenset(range(len(order))) | {free}
    return Dfa(alphabet, len(order) + 2, delta, 0, accepting)


def _cylinder_mass(base, letter, n, members):
    """Exact density sum of the cylinders picked below length n."""
    size = len(base.alphabet) + 1
    total = Fraction(0)
    for length in range(n):
        hits = 0
        for tup in itertools.product(base.alphabet.symbols, repeat=length):
            if base("".join(tup)) == members:
                hits += 1
        total += Fraction(hits, size ** (length + 1))
    return total


def suffix_extension_family(base, letter, state_budget=DEFAULT_STATE_BUDGET):
    """Sandwich approximations of the suffix extension of a base language."""
    target = suffix_extension(base, letter)
    return ApproxFamily(
        name="suffix-ext:%s:%s" % (base.name, letter),
        target=target,
        inner=lambda n: suffix_inner_dfa(base, letter, n, state_budget),
        outer=lambda n: suffix_outer_dfa(base, letter, n, state_budget),
        inner_claim=lambda n: _cylinder_mass(base, letter, n, True),
        outer_claim=lambda n: 1 - _cylinder_mass(base, letter, n, False),
    )


def prefix_extension_family(base, letter, state_budget=DEFAULT_STATE_BUDGET):
    """Same sandwich for the prefix extension, obtained by reversal."""
    reversed_base = LanguageOracle(
        base.name + "-reversed", base.alphabet, lambda w: base(w[::-1])
    )

    def inner(n):
        dfa = suffix_inner_dfa(reversed_base, letter, n, state_budget)
        return reverse(dfa).determinize().minimized()

    def outer(n):
        dfa = suffix_outer_dfa(reversed_base, letter, n, state_budget)
        return reverse(dfa).determinize().minimized()

    target = prefix_extension(base, letter)
    return ApproxFamily(
        name="prefix-ext:%s:%s" % (base.name, letter),
        target=target,
        inner=inner,
        outer=outer,
        inner_claim=lambda n: _cylinder_mass(base, letter, n, True),
        outer_claim=lambda n: 1 - _cylinder_mass(base, letter, n, False),
    )


def infix_extension_family(base, letter, member_search_length=12):
    """Bracketed-infix approximations: empty if the base has no member within
    the search bound, otherwise the words containing letter·w·letter for the
    shortlex-least base member w."""
    from .languages import infix_extension

    target = infix_extension(base, letter)
    alphabet = Alphabet(base.alphabet.symbols + (letter,))
    member = None
    for length in range(member_search_length + 1):
        for tup in itertools.product(base.alphabet.symbols, repeat=length):
            word = "".join(tup)
            if base(word):
                member = word
                break
        if member is not None:
            break
    if member is None:
        return ApproxFamily(
            name="infix-ext:%s:%s" % (base.name, letter),
            target=target,
            inner=lambda n: empty_language_dfa(alphabet),
            outer=lambda n: empty_language_dfa(alphabet),
            inner_claim=lambda n: Fraction(0),
            outer_claim=lambda n: Fraction(0),
        )
    pattern = letter + member + letter
    return ApproxFamily(
        name="infix-ext:%s:%s" % (base.name, letter),
        target=target,
        inner=lambda n: contains_factor_dfa(pattern, alphabet),
        outer=None,
        inner_claim=lambda n: Fraction(1),
        outer_claim=None,
    )


def family(name):
    """Named approximation family used by the command-line surface."""
    if name == "modk":
        ab = Alphabet("ab")
        return ApproxFamily(
            name="modk",
            target=count_eq(),
            inner=None,
            outer=lambda k: mod_counter_dfa(k, alphabet=ab).complement(),
            inner_claim=None,
            outer_claim=lambda k: Fraction(1, k) if k % 2 == 1 else None,
        )
    if name == "pal":
        return ApproxFamily(
            name="pal",
            target=palindromes().complement(),
            inner=lambda k: nonpalindrome_window_dfa(k),
            outer=None,
            inner_claim=lambda k: 1 - Fraction(1, 2 ** k),
            outer_claim=None,
        )
    if name == "goldstine":
        return ApproxFamily(
            name="goldstine",
            target=goldstine(),
            inner=goldstine_inner_dfa,
            outer=lambda k: ends_with_letter_dfa("b", Alphabet("ab")),
            inner_claim=lambda k: Fraction(1, 2) - Fraction(1, 2 ** (k + 1)),
            outer_claim=lambda k: Fraction(1, 2),
        )
    if name == "o3":
        abc = Alphabet("abc")

        def outer(k):
            first = mod_counter_dfa(k, "a", "b", loops=("c",), alphabet=abc)
            second = mod_counter_dfa(k, "a", "c", loops=("b",), alphabet=abc)
            return first.complement().union(second.complement())

        return ApproxFamily(name="o3", target=o3(), outer=outer)
    if name == "o4":
        quad = Alphabet("xXyY")

        def outer(k):
            first = mod_counter_dfa(k, "x", "X", loops=("y", "Y"), alphabet=quad)
            second = mod_counter_dfa(k, "y", "Y", loops=("x", "X"), alphabet=quad)
            return first.complement().union(second.complement())

        return ApproxFamily(name="o4", target=o4(), outer=outer)
    raise ValueError("unknown approximation family %r" % name)


# -- verification --------------------------------------------------------------

def verify_containment(dfa, oracle, direction, max_length, budget=None):
    """Check an inclusion claim on all words up to a length.

    ``inner`` checks L(dfa) ⊆ oracle, ``outer`` checks oracle ⊆ L(dfa).
    Returns None when the inclusion holds, else the shortlex-least
    counterexample.
    """
    if direction not in ("inner", "outer"):
        raise ValueError("direction must be 'inner' or 'outer'")
    if budget is None:
        budget = DEFAULT_ENUMERATION_BUDGET
    alphabet = dfa.alphabet
    if alphabet != oracle.alphabet:
        raise ValueError("automaton and oracle alphabets differ")
    if len(alphabet) ** max_length > budget:
        raise BudgetExceededError(
            "%d^%d containment tests exceed budget %d"
            % (len(alphabet), max_length, budget)
        )
    words = [""]
    states = [dfa.initial]
    ranks = range(len(alphabet))
    for length in range(max_length + 1):
        for word, state in zip(words, states):
            accepted = state in dfa.accepting
            if direction == "inner":
                if accepted and not oracle(word):
                    return word
            else:
                if oracle(word) and not accepted:
                    return word
        if length == max_length:
            break
        words = [w + ch for w in words for ch in alphabet.symbols]
        states = [dfa.delta[q][a] for q in states for a in ranks]
    return None


def gap_report(fam, ks, max_length, budget=None):
    """Exact inner/outer densities, gaps and containment verdicts per k."""
    rows = []
    for k in ks:
        inner_dfa = fam.inner(k) if fam.inner is not None else None
        outer_dfa = fam.outer(k) if fam.outer is not None else None
        inner_d = density(inner_dfa) if inner_dfa is not None else Fraction(0)
        outer_d = density(outer_dfa) if outer_dfa is not None else Fraction(1)
        inner_cex = (
            verify_containment(inner_dfa, fam.target, "inner", max_length, budget)
            if inner_dfa is not None
            else None
        )
        outer_cex = (
            verify_containment(outer_dfa, fam.target, "outer", max_length, budget)
            if outer_dfa is not None
            else None
        )
        rows.append(
            GapRow(
                k=k,
                inner_density=inner_d,
                outer_density=outer_d,
                gap=outer_d - inner_d,
                inner_counterexample=inner_cex,
                outer_counterexample=outer_cex,
            )
        )
    if fam.target.counter is not None:
        counts = [fam.target.counts(n) for n in range(max_length + 1)]
        census = LengthCensus(len(fam.target.alphabet), counts)
    else:
        census = census_by_enumeration(fam.target, max_length, budget)
    _, cesaro = ratio_and_cesaro(census)
    return GapReport(family=fam.name, rows=tuple(rows), target_cesaro=tuple(cesaro))


def majority_escape_witness(dfa, m=1):
    """A member of L(dfa) with at most m times as many a's as b's.

    Exists for every non-null language: density forces the all-b block of
    twice the monoid's witness radius to occur inside some member, and that
    member cannot satisfy the strict majority constraint.  Deterministic:
    monoid elements are scanned in shortlex-witness order.
    """
    if m < 1:
        raise ValueError("majority factor must be at least 1")
    if "a" not in dfa.alphabet or "b" not in dfa.alphabet:
        raise ValueError("escape witness needs letters 'a' and 'b' in the alphabet")
    if density(dfa) == 0:
        raise ValueError("no guarantee for null languages")
    monoid, accept = transition_monoid(dfa)
    radius = max(len(w) for w in monoid.witnesses)
    block = "b" * (2 * radius)
    blocked = monoid.element_of_word(block)
    size = len(monoid.elements)
    for x in range(size):
        xb = monoid.compose(x, blocked)
        for y in range(size):
            if monoid.compose(xb, y) in accept.elements:
                witness = monoid.witnesses[x] + block + monoid.witnesses[y]
                if not dfa.accepts(witness):
                    raise AssertionError("escape witness rejected by the automaton")
                if witness.count("a") > m * witness.count("b"):
                    raise AssertionError("escape witness fails the count bound")
                if len(witness) > 4 * radius:
                    raise AssertionError("escape witness exceeds the length bound")
                return witness
    raise AssertionError("dense language must absorb an all-b block")
