"""Membership oracles and closed-form counters for the concrete languages
studied by this workbench: balanced-prefix words, letter-count constraints,
palindromes, block languages, primitive words, coprefix languages of
morphic words, alphabet extensions, and a staircase diagonal language that
escapes every co-infinite machine of a pinned enumeration.
"""

import itertools
import threading
from math import comb, factorial

from .automata import Dfa, is_coinfinite, shortlex_least_member
from .core import Alphabet, BudgetExceededError


class LanguageOracle:
    """Named total membership predicate with an optional exact counter."""

    __slots__ = ("name", "alphabet", "membership", "counter")

    def __init__(self, name, alphabet, membership, counter=None):
        self.name = name
        self.alphabet = alphabet
        self.membership = membership
        self.counter = counter

    def __call__(self, word):
        return self.membership(word)

    def __repr__(self):
        return "LanguageOracle(%r, %r)" % (self.name, self.alphabet)

    def counts(self, length):
        """Exact number of members of the given length, via the closed-form
        counter."""
        if self.counter is None:
            raise ValueError("oracle %r has no closed-form counter" % self.name)
        return self.counter(length)

    def complement(self):
        membership = self.membership
        return LanguageOracle(
            "not-" + self.name, self.alphabet, lambda w: not membership(w)
        )


class Morphism:
    """Letter-to-word substitution over a fixed alphabet."""

    __slots__ = ("alphabet", "images")

    def __init__(self, alphabet, images):
        for letter in alphabet:
            if letter not in images:
                raise ValueError("morphism missing image for %r" % letter)
        for letter, image in images.items():
            if letter not in alphabet:
                raise ValueError("morphism maps foreign letter %r" % letter)
            if any(ch not in alphabet for ch in image):
                raise ValueError("image %r uses letters outside %r" % (image, alphabet))
        self.alphabet = alphabet
        self.images = dict(images)

    def __call__(self, word):
        return "".join(self.images[ch] for ch in word)

    def is_prolongable_on(self, seed):
        image = self.images.get(seed, "")
        return image.startswith(seed) and len(image) >= 2


def fixed_point_prefix(morphism, seed, length):
    """Prefix (of the given length) of the infinite word obtained by
    iterating the morphism on its seed letter."""
    if not morphism.is_prolongable_on(seed):
        raise ValueError(
            "morphism is not prolongable on %r: image must start with the "
            "seed and have length at least 2" % seed
        )
    word = seed
    while len(word) < length:
        grown = morphism(word)
        if len(grown) <= len(word):
            raise ValueError("morphism iteration stalled; fixed point is finite")
        word = grown
    return word[:length]


def coprefix_prefixes(morphism, seed, max_length):
    """All prefixes, up to the given length, of the morphic fixed point."""
    word = fixed_point_prefix(morphism, seed, max_length)
    return {word[:i] for i in range(len(word) + 1)}


# -- word combinatorics ------------------------------------------------------

def is_primitive(word):
    """True iff the word is non-empty and not a proper power u**k, k >= 2."""
    n = len(word)
    if n == 0:
        return False
    for p in _prime_divisors(n):
        d = n // p
        if word == word[:d] * p:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _mobius(n):
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def primitive_count(length, alphabet_size=2):
    """Number of primitive words of a given length (divisor inclusion-exclusion)."""
    if length == 0:
        return 0
    total = 0
    for d in range(1, length + 1):
        if length % d == 0:
            total += _mobius(d) * alphabet_size ** (length // d)
    return total


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def dyck_count(length):
    return catalan(length // 2) if length % 2 == 0 else 0


def majority_count(length, m=1):
    """Words over {a, b} with strictly more than m times as many a's as b's."""
    if m == 1:
        central = comb(length, length // 2) if length % 2 == 0 else 0
        return (2 ** length - central) // 2
    return sum(comb(length, j) for j in range(length + 1) if length - j > m * j)


def _multinomial3(i, j, k):
    return factorial(i + j + k) // (factorial(i) * factorial(j) * factorial(k))


def o3_count(length):
    """Words over a 3-letter alphabet whose first letter count matches the
    second or the third."""
    eq_pairs = sum(
        _multinomial3(i, i, length - 2 * i) for i in range(length // 2 + 1)
    )
    center = _multinomial3(length // 3, length // 3, length // 3) if length % 3 == 0 else 0
    return 2 * eq_pairs - center


def o4_count(length):
    """Words over a 4-letter alphabet where one designated pair of letters
    (or the other) occurs equally often."""
    eq_one = 0
    for i in range(length // 2 + 1):
        rest = length - 2 * i
        eq_one += _multinomial3(i, i, rest) * 2 ** rest
    both = 0
    if length % 2 == 0:
        for i in range(length // 2 + 1):
            k = length // 2 - i
            both += factorial(length) // (
                factorial(i) ** 2 * factorial(k) ** 2
            )
    return 2 * eq_one - both


# -- concrete oracles --------------------------------------------------------

def semi_dyck():
    """Balanced words over {a, b} whose every prefix has at least as many
    a's as b's; counted by the Catalan numbers."""
    def member(word):
        depth = 0
        for ch in word:
            depth += 1 if ch == "a" else -1
            if depth < 0:
                return False
        return depth == 0

    return LanguageOracle("dyck", Alphabet("ab"), member, dyck_count)


def count_eq(a="a", b="b", alphabet=None):
    """Words with equally many a's and b's."""
    if alphabet is None:
        alphabet = Alphabet((a, b))
    return LanguageOracle(
        "counteq:%s,%s" % (a, b),
        alphabet,
        lambda w: w.count(a) == w.count(b),
    )


def palindromes(alphabet=None):
    if alphabet is None:
        alphabet = Alphabet("ab")
    return LanguageOracle("pal", alphabet, lambda w: w == w[::-1])


def o3():
    return LanguageOracle(
        "o3",
        Alphabet("abc"),
        lambda w: w.count("a") == w.count("b") or w.count("a") == w.count("c"),
        o3_count,
    )


def o4():
    return LanguageOracle(
        "o4",
        Alphabet("xXyY"),
        lambda w: w.count("x") == w.count("X") or w.count("y") == w.count("Y"),
        o4_count,
    )


def goldstine():
    """Block words a^{n_1} b ... a^{n_p} b (p >= 1) where some block length
    n_i differs from its index i."""
    def member(word):
        if not word or word[-1] != "b":
            return False
        blocks = []
        run = 0
        for ch in word:
            if ch == "a":
                run += 1
            else:
                blocks.append(run)
                run = 0
        return any(n != i for i, n in enumerate(blocks, start=1))

    return LanguageOracle("goldstine", Alphabet("ab"), member)


def staircase_word_prefix(length):
    """Prefix of the infinite block word a b aa b aaa b ... (blocks grow by
    one ``a`` between consecutive b's)."""
    parts = []
    total = 0
    i = 1
    while total < length:
        parts.append("a" * i)
        parts.append("b")
        total += i + 1
        i += 1
    return "".join(parts)[:length]


def _runs(word):
    return [(ch, len(list(g))) for ch, g in itertools.groupby(word)]


def _s1_member(word):
    # a (b^i a^i)*, parsed through maximal letter runs
    if not word or any(ch not in "ab" for ch in word):
        return False
    runs = _runs(word)
    if runs[0] != ("a", 1):
        return False
    if len(runs) % 2 == 0:
        return False
    for i in range(1, len(runs), 2):
        (bc, blen), (ac, alen) = runs[i], runs[i + 1]
        if bc != "b" or ac != "a" or blen != alen:
            return False
    return True


def _s2_member(word):
    # (a^i b^{2i})* a^+, parsed through maximal letter runs
    if not word or any(ch not in "ab" for ch in word):
        return False
    runs = _runs(word)
    if runs[0][0] != "a" or runs[-1][0] != "a":
        return False
    if len(runs) % 2 == 0:
        return False
    for i in range(0, len(runs) - 1, 2):
        (ac, alen), (bc, blen) = runs[i], runs[i + 1]
        if ac != "a" or bc != "b" or blen != 2 * alen:
            return False
    return True


def kemp_s1():
    return LanguageOracle("kemp-s1", Alphabet("ab"), _s1_member)


def kemp_s2():
    return LanguageOracle("kemp-s2", Alphabet("ab"), _s2_member)


def kemp_base():
    """Union of the two run-length block languages behind the kemp oracle."""
    return LanguageOracle(
        "kemp-base", Alphabet("ab"), lambda w: _s1_member(w) or _s2_member(w)
    )


def kemp():
    oracle = suffix_extension(kemp_base(), "c")
    return LanguageOracle("kemp", oracle.alphabet, oracle.membership)


def majority(m=1):
    if m < 1:
        raise ValueError("majority factor must be at least 1")
    return LanguageOracle(
        "majority:%d" % m,
        Alphabet("ab"),
        lambda w: w.count("a") > m * w.count("b"),
        lambda n: majority_count(n, m),
    )


def primitive(alphabet=None):
    if alphabet is None:
        alphabet = Alphabet("ab")
    size = len(alphabet)
    return LanguageOracle(
        "primitive", alphabet, is_primitive, lambda n: primitive_count(n, size)
    )


def coprefix(morphism, seed):
    """Complement of the prefix set of the morphic fixed point."""
    if not morphism.is_prolongable_on(seed):
        raise ValueError("morphism is not prolongable on %r" % seed)
    cache = [seed]

    def prefix_of(length):
        while len(cache[0]) < length:
            grown = morphism(cache[0])
            if len(grown) <= len(cache[0]):
                raise ValueError("morphism iteration stalled; fixed point is finite")
            cache[0] = grown
        return cache[0][:length]

    return LanguageOracle(
        "coprefix",
        morphism.alphabet,
        lambda w: w != prefix_of(len(w)),
    )


def suffix_extension(base, letter):
    """Members of the base language followed by a fresh letter and any tail."""
    _check_extension_letter(base, letter)
    alphabet = Alphabet(base.alphabet.symbols + (letter,))

    def member(word):
        i = word.find(letter)
        return i >= 0 and base(word[:i])

    return LanguageOracle("suffix-ext:%s:%s" % (base.name, letter), alphabet, member)


def prefix_extension(base, letter):
    """Any head, then a fresh letter, then a member of the base language."""
    _check_extension_letter(base, letter)
    alphabet = Alphabet(base.alphabet.symbols + (letter,))

    def member(word):
        i = word.rfind(letter)
        return i >= 0 and base(word[i + 1 :])

    return LanguageOracle("prefix-ext:%s:%s" % (base.name, letter), alphabet, member)


def infix_extension(base, letter):
    """Words containing a fresh-letter pair that brackets a base member."""
    _check_extension_letter(base, letter)
    alphabet = Alphabet(base.alphabet.symbols + (letter,))

    def member(word):
        positions = [i for i, ch in enumerate(word) if ch == letter]
        return any(
            base(word[i + 1 : j]) for i, j in zip(positions, positions[1:])
        )

    return LanguageOracle("infix-ext:%s:%s" % (base.name, letter), alphabet, member)


def _check_extension_letter(base, letter):
    if len(letter) != 1:
        raise ValueError("extension letter must be a single character")
    if letter in base.alphabet:
        raise ValueError("extension letter %r already occurs in the base alphabet" % letter)


# -- the diagonal language ---------------------------------------------------

class DiagonalLanguage:
    """Recursive language accepting at most one word per length while escaping
    every co-infinite machine of a pinned DFA enumeration.

    Machines over the alphabet are enumerated by state count s = 1, 2, ...;
    for fixed s every (accepting-set, transition-table) pair appears in
    lexicographic order of its flat encoding — the accepting bitmask (state 0
    first) followed by the row-major transition table — and state 0 is always
    initial.  Walking this list and skipping co-finite machines, the
    procedure repeatedly picks the shortlex-least word that is strictly
    longer than the previously picked one and rejected by the current
    machine.  An input is accepted iff it equals one of the picked words, so
    picked-word lengths strictly increase and each picked word witnesses
    non-containment in the machine it escaped.
    """

    def __init__(self, alphabet=None, max_machines=200_000, max_word_length=256):
        self.alphabet = alphabet if alphabet is not None else Alphabet("ab")
        if len(self.alphabet) < 2:
            raise ValueError("diagonal language needs at least two letters")
        self.max_machines = max_machines
        self.max_word_length = max_word_length
        self._lock = threading.Lock()
        self._stream = self._machine_stream()
        self._machines_examined = 0
        self._picks = []
        self._escaped_machines = []

    def _machine_stream(self):
        letters = len(self.alphabet)
        states = 1
        while True:
            for acc_bits in itertools.product((0, 1), repeat=states):
                accepting = frozenset(q for q, bit in enumerate(acc_bits) if bit)
                for flat in itertools.product(range(states), repeat=states * letters):
                    delta = [
                        flat[q * letters : (q + 1) * letters] for q in range(states)
                    ]
                    yield Dfa(self.alphabet, states, delta, 0, accepting)
            states += 1

    def _extend_picks(self):
        floor = len(self._picks[-1]) if self._picks else 0
        if floor >= self.max_word_length:
            raise BudgetExceededError(
                "diagonal-language words beyond length %d exceed the budget"
                % self.max_word_length
            )
        while True:
            if self._machines_examined >= self.max_machines:
                raise BudgetExceededError(
                    "diagonal-language enumeration exceeded %d machines"
                    % self.max_machines
                )
            machine = next(self._stream)
            self._machines_examined += 1
            if not is_coinfinite(machine):
                continue
            pick = shortlex_least_member(machine.complement(), min_length=floor)
            if pick is None:
                raise AssertionError("co-infinite machine must reject a longer word")
            self._picks.append(pick)
            self._escaped_machines.append(machine)
            return

    def accepted_words_up_to(self, length):
        """All accepted words of length <= the bound, in shortlex order."""
        with self._lock:
            while not self._picks or len(self._picks[-1]) <= length:
                self._extend_picks()
            return [w for w in self._picks if len(w) <= length]

    def escaped_machine(self, index):
        """The pinned-enumeration machine escaped by the index-th pick."""
        with self._lock:
            while len(self._picks) <= index:
                self._extend_picks()
            return self._escaped_machines[index]

    def membership(self, word):
        key = self.alphabet.shortlex_key(word)
        with self._lock:
            i = 0
            while True:
                while i >= len(self._picks):
                    self._extend_picks()
                pick_key = self.alphabet.shortlex_key(self._picks[i])
                if pick_key == key:
                    return True
                if key < pick_key:
                    return False
                i += 1


def diagonal(alphabet=None, max_machines=200_000, max_word_length=256):
    program = DiagonalLanguage(alphabet, max_machines, max_word_length)
    return LanguageOracle("diagonal", program.alphabet, program.membership)


def diagonal_membership(word, alphabet=None):
    """One-shot membership in the diagonal language (fresh program state)."""
    return DiagonalLanguage(alphabet).membership(word)


# -- closed-count dispatch ----------------------------------------------------

def closed_counts(name, length):
    """Closed-form member count at a given length for the named language."""
    if name == "dyck":
        return dyck_count(length)
    if name == "primitive":
        return primitive_count(length, 2)
    if name == "o3":
        return o3_count(length)
    if name == "o4":
        return o4_count(length)
    if name.startswith("majority:"):
        return majority_count(length, int(name.split(":", 1)[1]))
    raise ValueError("no closed-form counter for %r" % name)
