"""Exact densities of regular languages via the uniform-letter Markov chain.

Reading uniformly random letters turns a total DFA into a finite Markov
chain on its states.  The density of the language is the Cesàro limit of
the probability of sitting in an accepting state; it is computed exactly by
decomposing the chain into bottom strongly-connected classes, solving for
their stationary distributions, and propagating absorption values through
the transient part.  All linear systems are solved in exact rational
arithmetic (fraction-free elimination on integer-scaled rows).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .automata import has_forbidden_word, strongly_connected_components
from .core import BudgetExceededError

_POWER_STATE_LIMIT = 512
_PHASE_WORK_LIMIT = 50_000_000


@dataclass(frozen=True)
class DensityReport:
    """Exact density data of a regular language.

    ``natural_density`` is None when the plain limit of acceptance ratios
    does not exist; ``accumulation_points[d]`` is the limit of the ratios
    along lengths congruent to d modulo ``modulus``.
    """

    density: Fraction
    natural_density: Fraction | None
    modulus: int
    accumulation_points: tuple[Fraction, ...]


class UniformChain:
    """Row-stochastic chain on the reachable states of a DFA."""

    __slots__ = (
        "n",
        "initial",
        "accepting",
        "count_rows",
        "prob_rows",
        "alphabet_size",
        "original",
    )

    def __init__(self, dfa):
        order = [dfa.initial]
        index = {dfa.initial: 0}
        for q in order:
            for t in dfa.delta[q]:
                if t not in index:
                    index[t] = len(order)
                    order.append(t)
        s = len(dfa.alphabet)
        count_rows = []
        for q in order:
            row = {}
            for t in dfa.delta[q]:
                j = index[t]
                row[j] = row.get(j, 0) + 1
            count_rows.append(row)
        self.n = len(order)
        self.initial = 0
        self.accepting = frozenset(index[q] for q in dfa.accepting if q in index)
        self.count_rows = count_rows
        self.prob_rows = [
            {j: Fraction(c, s) for j, c in row.items()} for row in count_rows
        ]
        self.alphabet_size = s
        self.original = order
        for row in self.prob_rows:
            if sum(row.values()) != 1:
                raise AssertionError("chain row is not stochastic")

    def successors(self):
        return [list(row.keys()) for row in self.count_rows]


@dataclass(frozen=True)
class RecurrentClass:
    """A bottom strongly-connected class with its period and stationary law."""

    states: tuple[int, ...]
    period: int
    stationary: dict

    def __post_init__(self):
        if sum(self.stationary.values()) != 1:
            raise AssertionError("stationary distribution does not sum to 1")


def solve_exact(rows, rhs):
    """Solve the square rational system rows·x = rhs exactly.

    Rows are scaled to integers, reduced by fraction-free (Bareiss)
    elimination, and back-substituted with Fractions.  Raises
    ArithmeticError on a singular system.
    """
    n = len(rows)
    m = []
    for i in range(n):
        entries = [Fraction(v) for v in rows[i]] + [Fraction(rhs[i])]
        scale = lcm(*(e.denominator for e in entries))
        m.append([int(e * scale) for e in entries])
    prev = 1
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if m[r][k]), None)
        if pivot_row is None:
            raise ArithmeticError("singular linear system")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
        for i in range(k + 1, n):
            mk = m[k]
            mi = m[i]
            factor = mi[k]
            for j in range(k + 1, n + 1):
                mi[j] = (mk[k] * mi[j] - factor * mk[j]) // prev
            mi[k] = 0
        prev = m[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n])
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return x


def _recurrent_components(chain):
    """SCCs with no outgoing edges, in the chain's state numbering."""
    succ = chain.successors()
    sccs = strongly_connected_components(succ)
    recurrent = []
    for comp in sccs:
        comp_set = set(comp)
        if all(t in comp_set for q in comp for t in succ[q]):
            recurrent.append(comp)
    return sccs, recurrent


def _class_period_and_levels(comp, count_rows):
    """Period (gcd of BFS-level differences over internal edges) and levels."""
    comp_set = set(comp)
    root = comp[0]
    level = {root: 0}
    queue = [root]
    while queue:
        nxt = []
        for q in queue:
            for t in count_rows[q]:
                if t in comp_set and t not in level:
                    level[t] = level[q] + 1
                    nxt.append(t)
        queue = nxt
    g = 0
    for q in comp:
        for t in count_rows[q]:
            if t in comp_set:
                g = gcd(g, level[q] + 1 - level[t])
    return (abs(g) if g else 1), level


def _stationary(comp, count_rows, s):
    """Exact stationary distribution of the chain restricted to a closed class."""
    comp = list(comp)
    comp_set = set(comp)
    col = {q: 0 for q in comp}
    for p in comp:
        for t, c in count_rows[p].items():
            if t in comp_set:
                col[t] += c
    if all(v == s for v in col.values()):
        # doubly stochastic on an irreducible class: uniform is stationary
        share = Fraction(1, len(comp))
        return {q: share for q in comp}
    pos = {q: i for i, q in enumerate(comp)}
    n = len(comp)
    rows = [[0] * n for _ in range(n)]
    rhs = [0] * n
    for eq, q in enumerate(comp[1:], start=1):
        for p in comp:
            rows[eq][pos[p]] += count_rows[p].get(q, 0)
        rows[eq][pos[q]] -= s
    rows[0] = [1] * n
    rhs[0] = 1
    solution = solve_exact(rows, rhs)
    pi = {q: solution[pos[q]] for q in comp}
    if any(v < 0 for v in pi.values()) or sum(pi.values()) != 1:
        raise ArithmeticError("stationary solve produced an invalid distribution")
    return pi


def _limit_vector(n, prob_rows, fixed):
    """Harmonic extension of ``fixed``: f = P·f on non-fixed states.

    ``fixed`` must cover every recurrent state of the row graph; transient
    strongly-connected components are solved exactly in reverse topological
    order, so each system only involves one component.
    """
    succ = [list(row.keys()) for row in prob_rows]
    f = dict(fixed)
    for comp in strongly_connected_components(succ):
        if comp[0] in f:
            continue
        comp_set = set(comp)
        if len(comp) == 1:
            p = comp[0]
            loop = prob_rows[p].get(p, Fraction(0))
            acc = Fraction(0)
            for q, w in prob_rows[p].items():
                if q != p:
                    acc += w * f[q]
            f[p] = acc / (1 - loop)
            continue
        pos = {q: i for i, q in enumerate(comp)}
        rows = []
        rhs = []
        for p in comp:
            row = [Fraction(0)] * len(comp)
            row[pos[p]] = Fraction(1)
            acc = Fraction(0)
            for q, w in prob_rows[p].items():
                if q in comp_set:
                    row[pos[q]] -= w
                else:
                    acc += w * f[q]
            rows.append(row)
            rhs.append(acc)
        solution = solve_exact(rows, rhs)
        for q, v in zip(comp, solution):
            f[q] = v
    return f


def _cesaro_value_vector(chain):
    """Per-state Cesàro limit of acceptance probability."""
    _, recurrent = _recurrent_components(chain)
    fixed = {}
    for comp in recurrent:
        pi = _stationary(comp, chain.count_rows, chain.alphabet_size)
        value = sum((pi[q] for q in comp if q in chain.accepting), Fraction(0))
        for q in comp:
            fixed[q] = value
    return _limit_vector(chain.n, chain.prob_rows, fixed)


def density(dfa):
    """Exact Cesàro density of the language of a total DFA."""
    chain = UniformChain(dfa)
    return _cesaro_value_vector(chain)[chain.initial]


def recurrent_classes(dfa):
    """Bottom strongly-connected classes of the uniform chain, with their
    periods and stationary distributions, in the DFA's own state numbering."""
    chain = UniformChain(dfa)
    _, recurrent = _recurrent_components(chain)
    classes = []
    for comp in recurrent:
        pi = _stationary(comp, chain.count_rows, chain.alphabet_size)
        period, _ = _class_period_and_levels(comp, chain.count_rows)
        classes.append(
            RecurrentClass(
                states=tuple(sorted(chain.original[q] for q in comp)),
                period=period,
                stationary={chain.original[q]: v for q, v in pi.items()},
            )
        )
    classes.sort(key=lambda c: c.states)
    return classes


def _transient_power_rows(chain, transients, c):
    """Rows of the c-step chain, computed only for transient states."""
    if chain.n > _POWER_STATE_LIMIT:
        raise BudgetExceededError(
            "c-step chain on %d states exceeds the supported size" % chain.n
        )
    rows = []
    for p in transients:
        vec = {p: Fraction(1)}
        for _ in range(c):
            nxt = {}
            for q, w in vec.items():
                for t, pw in chain.prob_rows[q].items():
                    nxt[t] = nxt.get(t, Fraction(0)) + w * pw
            vec = nxt
        rows.append(vec)
    return rows


def natural_density(dfa):
    """Density report with per-residue accumulation points.

    The modulus c is the least common multiple of the periods of the
    reachable recurrent classes; the natural density exists if and only if
    the c residue limits coincide.
    """
    chain = UniformChain(dfa)
    _, recurrent = _recurrent_components(chain)

    cesaro_fixed = {}
    phase_fixed = {}
    periods = []
    for comp in recurrent:
        pi = _stationary(comp, chain.count_rows, chain.alphabet_size)
        period, level = _class_period_and_levels(comp, chain.count_rows)
        periods.append(period)
        value = sum((pi[q] for q in comp if q in chain.accepting), Fraction(0))
        mass_by_phase = [Fraction(0)] * period
        for q in comp:
            if q in chain.accepting:
                mass_by_phase[level[q] % period] += pi[q]
        for q in comp:
            cesaro_fixed[q] = value
            phase_fixed[q] = period * mass_by_phase[level[q] % period]
    c = lcm(*periods)

    f_cesaro = _limit_vector(chain.n, chain.prob_rows, cesaro_fixed)
    dens = f_cesaro[chain.initial]

    recurrent_states = set(phase_fixed)
    transients = [q for q in range(chain.n) if q not in recurrent_states]
    if c > 1 and c * chain.n * (len(transients) + 1) > _PHASE_WORK_LIMIT:
        raise BudgetExceededError(
            "residue-limit computation with modulus %d on %d states exceeds "
            "the supported work bound" % (c, chain.n)
        )
    if c == 1:
        step_rows = chain.prob_rows
    else:
        power = dict(zip(transients, _transient_power_rows(chain, transients, c)))
        step_rows = [power.get(q, {}) for q in range(chain.n)]
    f_phase = _limit_vector(chain.n, step_rows, phase_fixed)

    vec = {chain.initial: Fraction(1)}
    limits = []
    for _ in range(c):
        limits.append(sum((w * f_phase[q] for q, w in vec.items()), Fraction(0)))
        nxt = {}
        for q, w in vec.items():
            for t, pw in chain.prob_rows[q].items():
                nxt[t] = nxt.get(t, Fraction(0)) + w * pw
        vec = nxt

    if sum(limits, Fraction(0)) != c * dens:
        raise ArithmeticError("residue limits inconsistent with Cesàro density")
    natural = limits[0] if all(v == limits[0] for v in limits) else None
    return DensityReport(
        density=dens,
        natural_density=natural,
        modulus=c,
        accumulation_points=tuple(limits),
    )


def is_null(dfa):
    """Does the language have density zero?"""
    return density(dfa) == 0


def is_dense(dfa):
    """Does every word occur as a factor of some member?"""
    return has_forbidden_word(dfa) is None
