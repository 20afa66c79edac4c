"""Transition monoids, Green's relations, and non-primitive-word witnesses.

The syntactic monoid of a regular language is realised concretely as the
transition monoid of its minimal DFA: elements are state transformations,
composition is left-to-right ("read u, then v"), and every element carries
its shortlex-least witness word.  Green's R, L and J classes are the
strongly connected components of the right, left and two-sided Cayley
graphs, which keeps everything linear in the number of monoid elements.
"""

from dataclasses import dataclass

from .automata import Dfa, strongly_connected_components
from .core import BudgetExceededError
from .density import density
from .languages import is_primitive

DEFAULT_MONOID_BUDGET = 50_000


class Monoid:
    """Transition monoid of a minimal DFA, with witnesses and Cayley graphs."""

    __slots__ = (
        "alphabet",
        "elements",
        "index",
        "identity",
        "generators",
        "witnesses",
        "minimal_dfa",
        "_right",
        "_left",
    )

    def __init__(self, alphabet, elements, index, identity, generators, witnesses, minimal_dfa):
        self.alphabet = alphabet
        self.elements = elements
        self.index = index
        self.identity = identity
        self.generators = generators
        self.witnesses = witnesses
        self.minimal_dfa = minimal_dfa
        self._right = None
        self._left = None

    def __len__(self):
        return len(self.elements)

    def compose(self, i, j):
        """Index of the transformation 'apply element i, then element j'."""
        ei, ej = self.elements[i], self.elements[j]
        return self.index[tuple(ej[p] for p in ei)]

    def right_cayley(self):
        """right_cayley()[i][g] = index of element_i · generator_g."""
        if self._right is None:
            self._right = [
                [self.compose(i, g) for g in self.generators]
                for i in range(len(self.elements))
            ]
        return self._right

    def left_cayley(self):
        """left_cayley()[i][g] = index of generator_g · element_i."""
        if self._left is None:
            self._left = [
                [self.compose(g, i) for g in self.generators]
                for i in range(len(self.elements))
            ]
        return self._left

    def element_of_word(self, word):
        e = self.identity
        for ch in word:
            e = self.compose(e, self.generators[self.alphabet.rank(ch)])
        return e


@dataclass(frozen=True)
class AcceptSet:
    """Monoid elements whose transformation sends the initial state into the
    accepting set; their preimage under the evaluation morphism is the
    language itself."""

    elements: frozenset


def transition_monoid(dfa, budget=DEFAULT_MONOID_BUDGET):
    """Monoid of the minimal DFA plus its accept set.

    Elements are discovered breadth-first with letters in alphabet order, so
    each element's recorded witness is its shortlex-least word.
    """
    minimal = dfa.minimized()
    n = minimal.n_states
    identity = tuple(range(n))
    elements = [identity]
    index = {identity: 0}
    witnesses = [""]
    letter_maps = [
        tuple(minimal.delta[q][a] for q in range(n))
        for a in range(len(minimal.alphabet))
    ]
    frontier = 0
    while frontier < len(elements):
        current = elements[frontier]
        word = witnesses[frontier]
        for a, letter_map in enumerate(letter_maps):
            composed = tuple(letter_map[p] for p in current)
            if composed not in index:
                if len(elements) >= budget:
                    raise BudgetExceededError(
                        "transition monoid exceeds %d elements" % budget
                    )
                index[composed] = len(elements)
                elements.append(composed)
                witnesses.append(word + minimal.alphabet.symbols[a])
        frontier += 1
    generators = [index[m] for m in letter_maps]
    monoid = Monoid(
        minimal.alphabet,
        elements,
        index,
        0,
        generators,
        witnesses,
        minimal,
    )
    accept = AcceptSet(
        frozenset(
            i
            for i, el in enumerate(elements)
            if el[minimal.initial] in minimal.accepting
        )
    )
    return monoid, accept


@dataclass(frozen=True)
class GreenClasses:
    """Partitions of a monoid into R, L, J and H classes plus the J-order.

    Class ids are noncanonical ints; ``j_below[c]`` lists every J-class id
    reachable from c downwards (including c itself), so ``c1 in j_below[c2]``
    decides c1 <=_J c2.
    """

    r_class: tuple
    l_class: tuple
    j_class: tuple
    h_class: tuple
    r_classes: tuple
    l_classes: tuple
    j_classes: tuple
    h_classes: tuple
    j_below: tuple
    j_minimal: tuple

    def j_leq(self, c1, c2):
        return c1 in self.j_below[c2]


def _partition_from_sccs(n, successors):
    comps = strongly_connected_components(successors)
    comps = [sorted(c) for c in comps]
    comps.sort(key=lambda c: c[0])
    assignment = [0] * n
    for cid, comp in enumerate(comps):
        for q in comp:
            assignment[q] = cid
    return tuple(assignment), tuple(frozenset(c) for c in comps)


def green_classes(monoid):
    n = len(monoid.elements)
    right = monoid.right_cayley()
    left = monoid.left_cayley()
    r_class, r_classes = _partition_from_sccs(n, right)
    l_class, l_classes = _partition_from_sccs(n, left)
    two_sided = [right[i] + left[i] for i in range(n)]
    j_class, j_classes = _partition_from_sccs(n, two_sided)

    h_ids = {}
    h_class = []
    for i in range(n):
        key = (r_class[i], l_class[i])
        if key not in h_ids:
            h_ids[key] = len(h_ids)
        h_class.append(h_ids[key])
    h_members = [set() for _ in range(len(h_ids))]
    for i, h in enumerate(h_class):
        h_members[h].add(i)

    n_j = len(j_classes)
    edges = [set() for _ in range(n_j)]
    for i in range(n):
        for t in two_sided[i]:
            if j_class[t] != j_class[i]:
                edges[j_class[i]].add(j_class[t])
    j_below = []
    for c in range(n_j):
        seen = {c}
        stack = [c]
        while stack:
            x = stack.pop()
            for y in edges[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        j_below.append(frozenset(seen))
    j_minimal = tuple(c for c in range(n_j) if j_below[c] == frozenset([c]))

    return GreenClasses(
        r_class=tuple(r_class),
        l_class=tuple(l_class),
        j_class=tuple(j_class),
        h_class=tuple(h_class),
        r_classes=r_classes,
        l_classes=l_classes,
        j_classes=j_classes,
        h_classes=tuple(frozenset(s) for s in h_members),
        j_below=tuple(j_below),
        j_minimal=j_minimal,
    )


def idempotent_power(monoid, element):
    """Least n >= 1 such that element**n is idempotent."""
    power = element
    for n in range(1, len(monoid.elements) + 2):
        if monoid.compose(power, power) == power:
            return n
        power = monoid.compose(power, element)
    raise AssertionError("finite monoid must reach an idempotent power")


def element_language_dfa(monoid, element):
    """DFA of the words evaluating to the given monoid element."""
    return Dfa(
        monoid.alphabet,
        len(monoid.elements),
        monoid.right_cayley(),
        monoid.identity,
        frozenset([element]),
    )


def jclass_language_density(monoid, element):
    """Exact density of the set of words evaluating to the element."""
    if not 0 <= element < len(monoid.elements):
        raise ValueError("element index out of range")
    return density(element_language_dfa(monoid, element))


def nonprimitive_witness(dfa, budget=DEFAULT_MONOID_BUDGET):
    """A pair (w, n) with w**(m*n+1) accepted and non-primitive for all m >= 1.

    Requires a non-null language.  The word w evaluates to a J-minimal
    element t of the accept set (the shortlex-least such witness); n is the
    idempotent power of t.  Membership and non-primitivity of the first
    three powers are verified before returning.
    """
    if density(dfa) == 0:
        raise ValueError("language is null: no non-primitive member is guaranteed")
    monoid, accept = transition_monoid(dfa, budget=budget)
    greens = green_classes(monoid)
    minimal_ids = set(greens.j_minimal)
    candidates = [
        i for i in accept.elements if greens.j_class[i] in minimal_ids
    ]
    if not candidates:
        raise AssertionError("non-null language must meet a J-minimal element")
    t = min(candidates, key=lambda i: monoid.alphabet.shortlex_key(monoid.witnesses[i]))
    n = idempotent_power(monoid, t)
    word = monoid.witnesses[t]
    if word == "":
        # the J-minimal element is the identity; extend through a letter and
        # close the loop inside the same J-class
        letter = monoid.alphabet.symbols[0]
        stepped = monoid.compose(t, monoid.generators[0])
        size = len(monoid.elements)
        found = None
        for x in range(size):
            xs = monoid.compose(x, stepped)
            for y in range(size):
                if monoid.compose(xs, y) == t:
                    found = (x, y)
                    break
            if found:
                break
        if found is None:
            raise AssertionError("J-minimality must allow recovering the element")
        x, y = found
        word = monoid.witnesses[x] + letter + monoid.witnesses[y]
    for m in (1, 2, 3):
        power = word * (m * n + 1)
        if not dfa.accepts(power):
            raise AssertionError("witness power %r left the language" % power)
        if is_primitive(power):
            raise AssertionError("witness power %r is primitive" % power)
    return word, n
