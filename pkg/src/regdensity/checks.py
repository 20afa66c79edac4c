"""The verification suite behind the `check` subcommand.

Each criterion function returns a list of CheckItem results carrying exact
values in their detail strings; a criterion passes iff all its items do.
Random inputs are drawn from fixed seeds, so every run is identical.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .approximations import (
    ends_with_letter_dfa,
    family,
    goldstine_inner_dfa,
    majority_escape_witness,
    nonpalindrome_window_dfa,
    suffix_extension_family,
    suffix_inner_dfa,
    verify_containment,
)
from .automata import Dfa, is_subset, mod_counter_dfa, random_dfa
from .core import Alphabet, census_by_enumeration, ratio_and_cesaro
from .density import density, is_dense, is_null, natural_density
from .languages import (
    DiagonalLanguage,
    LanguageOracle,
    catalan,
    count_eq,
    goldstine,
    is_primitive,
    kemp_base,
    majority,
    majority_count,
    o3,
    o3_count,
    o4,
    palindromes,
    primitive,
    primitive_count,
    semi_dyck,
    staircase_word_prefix,
)
from .monoid import nonprimitive_witness

AB = Alphabet("ab")


@dataclass(frozen=True)
class CheckItem:
    label: str
    passed: bool
    detail: str = ""


def _item(label, passed, detail=""):
    return CheckItem(label, bool(passed), detail)


def _frac(value):
    if value is None:
        return "BOT"
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def _cached(oracle):
    memo = {}
    membership = oracle.membership

    def member(word):
        hit = memo.get(word)
        if hit is None:
            hit = membership(word)
            memo[word] = hit
        return hit

    return LanguageOracle(oracle.name, oracle.alphabet, member, oracle.counter)


def _starts_with_dfa(letter, alphabet):
    rank = alphabet.rank(letter)
    size = len(alphabet)
    delta = [
        [1 if a == rank else 2 for a in range(size)],
        [1] * size,
        [2] * size,
    ]
    return Dfa(alphabet, 3, delta, 0, {1})


def _evens_dfa(alphabet=AB):
    size = len(alphabet)
    return Dfa(alphabet, 2, [[1] * size, [0] * size], 0, {0})


# -- criteria -----------------------------------------------------------------

def check_textbook():
    items = []
    d2 = density(_starts_with_dfa("a", AB))
    items.append(_item("first-letter-density-binary", d2 == Fraction(1, 2), _frac(d2)))
    d3 = density(_starts_with_dfa("a", Alphabet("abc")))
    items.append(_item("first-letter-density-ternary", d3 == Fraction(1, 3), _frac(d3)))
    report = natural_density(_evens_dfa())
    items.append(
        _item(
            "even-lengths-density",
            report.density == Fraction(1, 2),
            _frac(report.density),
        )
    )
    items.append(
        _item(
            "even-lengths-natural-bot",
            report.natural_density is None,
            _frac(report.natural_density),
        )
    )
    items.append(
        _item(
            "even-lengths-accumulation",
            report.modulus == 2
            and report.accumulation_points == (Fraction(1), Fraction(0)),
            "c=%d acc=%s" % (report.modulus, [_frac(v) for v in report.accumulation_points]),
        )
    )
    return items


def check_modk():
    items = []
    target = count_eq().complement()
    for k in (3, 5, 7, 9):
        machine = mod_counter_dfa(k)
        d = density(machine)
        items.append(
            _item(
                "modk-density-k%d" % k,
                d == Fraction(k - 1, k),
                "%s expected %s" % (_frac(d), _frac(Fraction(k - 1, k))),
            )
        )
        cex = verify_containment(machine, target, "inner", 12)
        items.append(
            _item("modk-containment-k%d" % k, cex is None, cex or "ok")
        )
    return items


def check_dyck():
    items = []
    census = census_by_enumeration(semi_dyck(), 20)
    catalan_ok = all(census.counts[2 * n] == catalan(n) for n in range(11))
    odd_ok = all(census.counts[n] == 0 for n in range(1, 21, 2))
    items.append(
        _item(
            "dyck-catalan-counts",
            catalan_ok and odd_ok,
            "counts[0..8]=%s" % census.counts[:9],
        )
    )
    _, cesaro = ratio_and_cesaro(census)
    items.append(
        _item(
            "dyck-cesaro-20",
            cesaro[20] <= Fraction(1, 10),
            "%s <= 1/10" % _frac(cesaro[20]),
        )
    )
    return items


def check_palindromes():
    items = []
    target = palindromes().complement()
    target = _cached(target)
    for k in range(1, 7):
        machine = nonpalindrome_window_dfa(k)
        d = density(machine)
        claim = 1 - Fraction(1, 2 ** k)
        items.append(
            _item(
                "pal-inner-density-k%d" % k,
                d == claim,
                "%s expected %s" % (_frac(d), _frac(claim)),
            )
        )
        cex = verify_containment(machine, target, "inner", 14)
        items.append(_item("pal-inner-containment-k%d" % k, cex is None, cex or "ok"))
    return items


def check_goldstine():
    items = []
    target = _cached(goldstine())
    for k in range(1, 11):
        machine = goldstine_inner_dfa(k)
        d = density(machine)
        claim = Fraction(1, 2) - Fraction(1, 2 ** (k + 1))
        items.append(
            _item(
                "goldstine-inner-density-k%d" % k,
                d == claim,
                "%s expected %s" % (_frac(d), _frac(claim)),
            )
        )
        cex = verify_containment(machine, target, "inner", 16)
        items.append(
            _item("goldstine-inner-containment-k%d" % k, cex is None, cex or "ok")
        )
    outer_cex = verify_containment(
        ends_with_letter_dfa("b", AB), target, "outer", 16
    )
    items.append(_item("goldstine-outer-containment", outer_cex is None, outer_cex or "ok"))

    staircase = staircase_word_prefix(12)
    prefixes = {staircase[:i] for i in range(13)}
    mismatch = None
    for n in range(13):
        for word in _all_words(AB, n):
            via_copref = word not in prefixes and word.endswith("b")
            if via_copref != target(word):
                mismatch = word
                break
        if mismatch:
            break
    items.append(
        _item("goldstine-coprefix-identity", mismatch is None, mismatch or "ok")
    )
    return items


def check_o3o4():
    items = []
    for name, counter in (("o3", o3_count), ("o4", None)):
        fam = family(name)
        for k in (3, 5, 9):
            machine = fam.outer(k)
            d = density(machine)
            exact = Fraction(2 * k - 1, k * k)
            items.append(
                _item(
                    "%s-outer-density-k%d" % (name, k),
                    d == exact and d <= Fraction(2, k),
                    "%s (= (2k-1)/k^2, <= 2/k)" % _frac(d),
                )
            )
    brute = census_by_enumeration(o3(), 12)
    closed = [o3_count(n) for n in range(13)]
    items.append(
        _item(
            "o3-counter-vs-brute-force",
            brute.counts == closed,
            "counts[0..6]=%s" % closed[:7],
        )
    )
    ratio18 = Fraction(o3_count(18), 3 ** 18)
    # exact value 71152482/387420489 ~ 0.1837: the stated 1/10 bound is not
    # attainable at length 18, so this item reports honestly red
    items.append(
        _item(
            "o3-null-spotcheck-n18",
            ratio18 < Fraction(1, 10),
            "ratio(18)=%s ~ %.4f, required < 1/10" % (_frac(ratio18), float(ratio18)),
        )
    )
    return items


def check_suffix_extension():
    items = []
    unary = LanguageOracle("a-star", Alphabet("a"), lambda w: True)
    for n in range(1, 11):
        d = density(suffix_inner_dfa(unary, "c", n))
        claim = 1 - Fraction(1, 2 ** n)
        items.append(
            _item(
                "suffix-unary-inner-n%d" % n,
                d == claim,
                "%s expected %s" % (_frac(d), _frac(claim)),
            )
        )
    fam = suffix_extension_family(_cached(kemp_base()), "c")
    inners = []
    outers = []
    gaps_ok = True
    for n in range(1, 13):
        di = density(fam.inner(n))
        do = density(fam.outer(n))
        inners.append(di)
        outers.append(do)
        if do - di != Fraction(2, 3) ** n:
            gaps_ok = False
    items.append(
        _item(
            "suffix-kemp-gap-closed-form",
            gaps_ok,
            "gap(n) = (2/3)^n for n=1..12",
        )
    )
    items.append(
        _item(
            "suffix-kemp-monotone",
            all(a <= b for a, b in zip(inners, inners[1:]))
            and all(a >= b for a, b in zip(outers, outers[1:])),
            "inner nondecreasing, outer nonincreasing",
        )
    )
    gap12 = outers[-1] - inners[-1]
    items.append(
        _item(
            "suffix-kemp-gap-12",
            gap12 < Fraction(1, 100),
            "%s < 1/100" % _frac(gap12),
        )
    )
    return items


def check_majority():
    items = []
    brute = census_by_enumeration(majority(1), 16)
    closed = [majority_count(n, 1) for n in range(17)]
    items.append(
        _item(
            "majority1-counter-vs-brute-force",
            brute.counts == closed,
            "counts[0..8]=%s" % closed[:9],
        )
    )
    ratio20 = Fraction(majority_count(20, 1), 2 ** 20)
    formula = (1 - Fraction(comb(20, 10), 2 ** 20)) / 2
    items.append(
        _item(
            "majority1-ratio-20",
            ratio20 == formula and Fraction(2, 5) < ratio20 < Fraction(1, 2),
            "%s in (2/5, 1/2)" % _frac(ratio20),
        )
    )
    ratio24 = Fraction(majority_count(24, 2), 2 ** 24)
    # exact value 536155/16777216 ~ 0.0320: the stated 1/50 bound is not
    # attainable at length 24, so this item reports honestly red
    items.append(
        _item(
            "majority2-ratio-24",
            ratio24 <= Fraction(1, 50),
            "ratio(24)=%s ~ %.4f, required <= 1/50" % (_frac(ratio24), float(ratio24)),
        )
    )
    rng = random.Random(0x5EED)
    non_null = []
    null = []
    while len(non_null) < 10 or len(null) < 5:
        machine = random_dfa(rng, 4, AB)
        if is_null(machine):
            if len(null) < 5:
                null.append(machine)
        elif len(non_null) < 10:
            non_null.append(machine)
    escapes_ok = True
    for machine in non_null:
        witness = majority_escape_witness(machine, 1)
        if not machine.accepts(witness) or witness.count("a") > witness.count("b"):
            escapes_ok = False
    items.append(
        _item("majority-escape-on-non-null", escapes_ok, "10 witnesses verified")
    )
    errors_ok = True
    for machine in null:
        try:
            majority_escape_witness(machine, 1)
            errors_ok = False
        except ValueError:
            pass
    items.append(_item("majority-escape-null-errors", errors_ok, "5 null machines refused"))
    return items


def check_primitive():
    items = []
    brute = census_by_enumeration(primitive(), 16)
    closed = [primitive_count(n, 2) for n in range(17)]
    items.append(
        _item(
            "primitive-counter-vs-brute-force",
            brute.counts == closed,
            "counts[0..8]=%s" % closed[:9],
        )
    )
    bound_ok = True
    for n in range(4, 17):
        deficit = 2 ** n - primitive_count(n, 2)
        if deficit ** 2 > n * 2 ** (n + 4):
            bound_ok = False
    items.append(
        _item(
            "primitive-ratio-lower-bound",
            bound_ok,
            "(2^n - p_n)^2 <= n*2^(n+4) for 4 <= n <= 16",
        )
    )
    word, power = nonprimitive_witness(mod_counter_dfa(3))
    items.append(
        _item(
            "nonprimitive-witness-mod3",
            word == "a" and power == 3,
            "(%s, %d)" % (word, power),
        )
    )
    rng = random.Random(0xBEEF)
    found = 0
    verified = True
    while found < 10:
        machine = random_dfa(rng, 4, AB)
        if is_null(machine):
            continue
        found += 1
        w, n = nonprimitive_witness(machine)
        for m in (1, 2):
            p = w * (m * n + 1)
            if is_primitive(p) or not machine.accepts(p):
                verified = False
    items.append(
        _item("nonprimitive-witness-random", verified, "10 witnesses verified")
    )
    square_identity_ok = True
    for length in range(1, 11):
        for word in _all_words(AB, length):
            splits = any(
                is_primitive(word[:i]) and is_primitive(word[i:])
                for i in range(1, length)
            )
            unary = len(set(word)) == 1
            expected = (length == 2) if unary else length >= 2
            if splits != expected:
                square_identity_ok = False
    items.append(
        _item(
            "primitive-square-identity",
            square_identity_ok,
            "two-primitive products = non-powers plus squares, lengths <= 10",
        )
    )
    return items


def check_density_algebra():
    rng = random.Random(0xDA7A)
    machines = [random_dfa(rng, rng.randint(1, 8), AB) for _ in range(200)]
    complement_ok = True
    null_dense_ok = True
    monotone_ok = True
    additive_ok = True
    for machine in machines:
        d = density(machine)
        if d + density(machine.complement()) != 1:
            complement_ok = False
        if (d == 0) != (not is_dense(machine)):
            null_dense_ok = False
    for x, y in zip(machines[0::2], machines[1::2]):
        meet = x.intersection(y)
        if not is_subset(meet, x):
            monotone_ok = False
        if not (density(meet) <= density(x) and density(meet) <= density(y)):
            monotone_ok = False
        rest = x.difference(y)
        if density(rest.union(y)) != density(rest) + density(y):
            additive_ok = False
    return [
        _item("complement-law", complement_ok, "200 machines"),
        _item("null-iff-not-dense", null_dense_ok, "two independent algorithms agree"),
        _item("inclusion-monotonicity", monotone_ok, "100 pairs"),
        _item("disjoint-additivity", additive_ok, "100 pairs"),
    ]


def check_diagonal():
    items = []
    program = DiagonalLanguage()
    accepted = program.accepted_words_up_to(5)
    by_length = {}
    for word in accepted:
        by_length[len(word)] = by_length.get(len(word), 0) + 1
    items.append(
        _item(
            "diagonal-at-most-one-per-length",
            all(v <= 1 for v in by_length.values()),
            "accepted=%s" % accepted,
        )
    )
    lengths = [len(w) for w in accepted]
    items.append(
        _item(
            "diagonal-lengths-strictly-increase",
            lengths == sorted(set(lengths)),
            "lengths=%s" % lengths,
        )
    )
    consistent = True
    for n in range(6):
        for word in _all_words(AB, n):
            if program.membership(word) != (word in accepted):
                consistent = False
    items.append(_item("diagonal-membership-consistent", consistent, "all words <= 5"))
    first = accepted[0]
    escaped = program.escaped_machine(0)
    items.append(
        _item(
            "diagonal-first-pick-escapes",
            first == "a" and not escaped.accepts(first),
            "pick=%r, escaped machine has %d state(s)" % (first, escaped.n_states),
        )
    )
    return items


def _all_words(alphabet, length):
    import itertools

    return ("".join(p) for p in itertools.product(alphabet.symbols, repeat=length))


CRITERIA = (
    ("textbook-densities", ("textbook",), check_textbook),
    ("modk-family", ("modk", "counteq"), check_modk),
    ("dyck-census", ("dyck", "catalan"), check_dyck),
    ("palindrome-family", ("pal",), check_palindromes),
    ("goldstine-family", ("goldstine",), check_goldstine),
    ("o3o4-families", ("o3", "o4"), check_o3o4),
    ("suffix-extension", ("suffix", "kemp"), check_suffix_extension),
    ("majority", ("majority",), check_majority),
    ("primitive-words", ("prim", "primitive"), check_primitive),
    ("density-algebra", ("algebra", "random"), check_density_algebra),
    ("diagonal-language", ("diagonal",), check_diagonal),
)


def run_criteria(only=None):
    """Run (a filtered subset of) the verification suite.

    Returns a list of (criterion name, [CheckItem]) pairs in fixed order.
    """
    results = []
    for name, tags, function in CRITERIA:
        if only is not None and only not in name and only not in tags:
            continue
        results.append((name, function()))
    return results
