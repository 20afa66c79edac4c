"""Alphabets, shortlex word enumeration, and exact length censuses.

Words are plain Python strings; every count is an ``int`` and every ratio a
``fractions.Fraction`` in lowest terms.  No floating point is used anywhere
in this package.
"""

import itertools
from fractions import Fraction

DEFAULT_ENUMERATION_BUDGET = 2 ** 26


class BudgetExceededError(RuntimeError):
    """Raised when a computation would exceed its configured resource budget."""


class Alphabet:
    """Ordered alphabet of distinct single-character symbols.

    Declaration order fixes the letter order used by every shortlex
    comparison in this package; it is not necessarily ASCII order.
    """

    __slots__ = ("symbols", "_rank")

    def __init__(self, symbols):
        syms = tuple(symbols)
        if not syms:
            raise ValueError("alphabet must not be empty")
        if any(not isinstance(s, str) or len(s) != 1 for s in syms):
            raise ValueError("alphabet symbols must be single characters")
        if len(set(syms)) != len(syms):
            raise ValueError("alphabet symbols must be distinct")
        self.symbols = syms
        self._rank = {s: i for i, s in enumerate(syms)}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._rank

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return "Alphabet(%r)" % ("".join(self.symbols),)

    def rank(self, symbol):
        """Position of ``symbol`` in the declared letter order."""
        try:
            return self._rank[symbol]
        except KeyError:
            raise ValueError("symbol %r not in %r" % (symbol, self)) from None

    def ranks(self, word):
        return tuple(self._rank[ch] for ch in word)

    def shortlex_key(self, word):
        """Sort key realising shortlex order: length first, then letter ranks."""
        return (len(word), self.ranks(word))


def enumerate_words(alphabet, length):
    """All words of the given length, in shortlex order."""
    if length < 0:
        raise ValueError("length must be non-negative")
    return ["".join(p) for p in itertools.product(alphabet.symbols, repeat=length)]


class LengthCensus:
    """Exact per-length word counts of a language, lengths 0..N."""

    __slots__ = ("alphabet_size", "counts")

    def __init__(self, alphabet_size, counts):
        if alphabet_size < 1:
            raise ValueError("alphabet size must be positive")
        counts = list(counts)
        for n, c in enumerate(counts):
            if not 0 <= c <= alphabet_size ** n:
                raise ValueError(
                    "count %d at length %d exceeds %d^%d" % (c, n, alphabet_size, n)
                )
        self.alphabet_size = alphabet_size
        self.counts = counts

    def __len__(self):
        return len(self.counts)

    def __eq__(self, other):
        return (
            isinstance(other, LengthCensus)
            and self.alphabet_size == other.alphabet_size
            and self.counts == other.counts
        )

    def __repr__(self):
        return "LengthCensus(%d, %r)" % (self.alphabet_size, self.counts)


def ratio_and_cesaro(census):
    """Per-length acceptance ratios and their running Cesàro means, exactly.

    Returns ``(ratios, cesaro)`` where ``ratios[n] = counts[n] / s**n`` and,
    for ``n >= 1``, ``cesaro[n] = (1/n) * sum(ratios[:n])``.  There is no
    Cesàro mean of an empty prefix, so ``cesaro[0] is None``.
    """
    s = census.alphabet_size
    ratios = [Fraction(c, s ** n) for n, c in enumerate(census.counts)]
    cesaro = [None]
    acc = Fraction(0)
    for n in range(1, len(ratios)):
        acc += ratios[n - 1]
        cesaro.append(Fraction(acc, n))
    return ratios, cesaro


def census_by_enumeration(oracle, max_length, budget=None):
    """Census a language oracle by exhaustive membership tests.

    The oracle must expose ``alphabet`` and be callable on words.  Guarded:
    ``|A| ** max_length`` may not exceed the enumeration budget.
    """
    if budget is None:
        budget = DEFAULT_ENUMERATION_BUDGET
    size = len(oracle.alphabet)
    if size ** max_length > budget:
        raise BudgetExceededError(
            "%d^%d membership tests exceed budget %d" % (size, max_length, budget)
        )
    counts = []
    for n in range(max_length + 1):
        hits = 0
        for tup in itertools.product(oracle.alphabet.symbols, repeat=n):
            if oracle("".join(tup)):
                hits += 1
        counts.append(hits)
    return LengthCensus(size, counts)
