"""Exact active learning of weighted automata from membership and equivalence queries.

The learner keeps a prefix-closed set ``S`` of access words and a set ``E`` of
test suffixes with ``|S| == |E|`` such that ``F[s, e] = f(se)`` is invertible.
Each hypothesis expresses the shifted rows ``F_sigma[s, e] = f(s sigma e)`` in
the basis of the rows of ``F``.  A counterexample is located by binary search
and yields one new access word and one new suffix, growing the rank of ``F``
by exactly one; so at most ``rank(H_f)`` equivalence queries are needed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .errors import NoViolatingState, NotACounterexample, RankNotIncreased, SingularBasis
from .field import Field, Matrix, rank, solve_rows, vec_mat
from .hankel import oracle_from_wa
from .wautomaton import WeightedAutomaton, combine, constant_automaton, equivalent
from .words import Word, as_word, show

log = logging.getLogger(__name__)


class Teacher:
    """Answers membership queries (raw field values) and equivalence queries.

    ``equivalence`` returns ``None`` for CORRECT, otherwise a counterexample
    word.  ``membership_queries`` counts distinct words asked.
    """

    field: Field
    alphabet: tuple

    def __init__(self):
        self.equivalence_queries = 0

    def membership(self, w: Word):
        raise NotImplementedError

    def equivalence(self, hypothesis: WeightedAutomaton) -> Word | None:
        raise NotImplementedError

    @property
    def membership_queries(self) -> int:
        raise NotImplementedError


class SimulatedTeacher(Teacher):
    """Teacher backed by a known target; counterexamples are length-lex least."""

    def __init__(self, target: WeightedAutomaton):
        super().__init__()
        self.target = target
        self.field = target.field
        self.alphabet = target.alphabet
        self._oracle = oracle_from_wa(target, "target")

    def membership(self, w):
        return self._oracle(w)

    @property
    def membership_queries(self) -> int:
        return self._oracle.queries

    def equivalence(self, hypothesis):
        self.equivalence_queries += 1
        return equivalent(hypothesis, self.target).witness


def simulated_teacher(target: WeightedAutomaton) -> SimulatedTeacher:
    return SimulatedTeacher(target)


class ShiftedTeacher(Teacher):
    """Presents ``f + 1`` on top of a teacher for ``f``.

    A hypothesis ``h`` for ``f + 1`` is checked by asking the inner teacher
    about ``h - 1``; both functions differ from their targets on the same words.
    """

    def __init__(self, inner: Teacher):
        self.inner = inner
        self.field = inner.field
        self.alphabet = inner.alphabet
        self._one = constant_automaton(inner.field, inner.alphabet, 1)

    def membership(self, w):
        return self.field.add(self.inner.membership(w), self.field.one)

    def equivalence(self, hypothesis):
        return self.inner.equivalence(combine(hypothesis, self._one, (1, -1)))

    @property
    def equivalence_queries(self) -> int:
        return self.inner.equivalence_queries

    @property
    def membership_queries(self) -> int:
        return self.inner.membership_queries


@dataclass(frozen=True)
class LearnerState:
    """Access words ``S``, suffixes ``E``, ``F = H(S, E)`` and the fitted ``T_sigma``.

    ``S[0]`` and ``E[0]`` are the empty word.
    """

    S: tuple
    E: tuple
    Fmat: Matrix
    Tmats: dict

    @property
    def size(self) -> int:
        return len(self.S)

    def check(self):
        """Assert the structural invariants; raise on breach."""
        assert len(self.S) == len(self.E), "|S| != |E|"
        assert self.S[0] == () and self.E[0] == (), "empty word missing from S or E"
        members = set(self.S)
        assert len(members) == len(self.S) and len(set(self.E)) == len(self.E), "duplicates in S or E"
        assert all(s[:-1] in members for s in self.S if s), "S is not prefix-closed"
        if rank(self.Fmat) != len(self.S):
            raise SingularBasis("F lost full rank")


@dataclass(frozen=True)
class CexAnalysis:
    """Bookkeeping of one counterexample: split index ``k`` (1-based) and the violating state."""

    z: Word
    k: int
    sigma_k: str
    suffix: Word
    s_star: Word
    f_k: object
    f_k1: object
    probes: tuple = ()


def _query_block(g, rows, cols, f: Field) -> Matrix:
    return Matrix._raw(f, [[g(r + c) for c in cols] for r in rows], len(cols))


def make_state(S, E, g: Callable, f: Field, alphabet) -> LearnerState:
    """Fill ``F`` and solve for every ``T_sigma``.

    When ``s sigma`` is itself in ``S`` the row ``T_sigma[s]`` must be the unit
    vector at ``s sigma`` (rows of ``F`` are independent); this is asserted.
    """
    S, E = tuple(S), tuple(E)
    F = _query_block(g, S, E, f)
    index = {s: i for i, s in enumerate(S)}
    T = {}
    for a in alphabet:
        Fa = _query_block(g, [s + (a,) for s in S], E, f)
        Ta = solve_rows(F, Fa)
        for i, s in enumerate(S):
            j = index.get(s + (a,))
            if j is not None:
                unit = tuple(f.one if c == j else f.zero for c in range(len(S)))
                assert Ta.data[i] == unit, f"T_{a} row for {show(s)} is not a unit vector"
        T[a] = Ta
    return LearnerState(S, E, F, T)


def hypothesis_of(st: LearnerState, f: Field, alphabet) -> WeightedAutomaton:
    """Start at ``e_epsilon``, measure with column ``F[., epsilon]``, move by ``T_sigma``."""
    n = st.size
    alpha = [f.one] + [f.zero] * (n - 1)
    omega = [row[0] for row in st.Fmat.data]
    return WeightedAutomaton(f, alphabet, alpha, omega, st.Tmats)


def hypothesis_run(st: LearnerState, prefix, f: Field) -> tuple:
    """Coordinates over ``S`` of the hypothesis state after reading ``prefix``."""
    v = tuple([f.one] + [f.zero] * (st.size - 1))
    for a in as_word(prefix):
        v = vec_mat(f, v, st.Tmats[a])
    return v


@dataclass
class LearnRun:
    automaton: WeightedAutomaton
    hypothesis: WeightedAutomaton
    state: LearnerState
    shifted: bool
    equivalence_queries: int
    membership_queries: int
    counterexamples: list = dc_field(default_factory=list)
    ranks: list = dc_field(default_factory=list)


class Learner:
    """One learning session against a teacher.

    ``transcript`` receives one line per distinct membership query and per
    equivalence query.
    """

    def __init__(self, teacher: Teacher, transcript: Callable[[str], None] | None = None):
        self.original = teacher
        self.teacher = teacher
        self.field = teacher.field
        self.alphabet = tuple(teacher.alphabet)
        self.transcript = transcript
        self.shifted = False
        self.state: LearnerState | None = None
        self._memo: dict = {}
        self.analyses: list[CexAnalysis] = []
        self.ranks: list[int] = []

    def _emit(self, line: str):
        if self.transcript is not None:
            self.transcript(line)

    def _status(self) -> str:
        k = self.state.size if self.state is not None else 0
        return f"|S|={k}\trank={k}"

    def g(self, w) -> object:
        """Membership value of the (possibly shifted) target, memoized."""
        w = as_word(w)
        if w not in self._memo:
            self._memo[w] = self.teacher.membership(w)
            self._emit(f"MQ\t{show(w)}\t{self.field.format(self._memo[w])}\t{self._status()}")
        return self._memo[w]

    def initialize(self) -> tuple[LearnerState, bool]:
        """Start from ``S = E = {epsilon}``, shifting to ``f + 1`` if ``f(epsilon) = 0``."""
        if not self.teacher.membership(()):
            self.teacher = ShiftedTeacher(self.original)
            self.shifted = True
            self._emit("SHIFT\tf(ε)=0, learning f+1")
        self.state = make_state([()], [()], self.g, self.field, self.alphabet)
        self.state.check()
        self.ranks.append(1)
        return self.state, self.shifted

    def build_hypothesis(self) -> WeightedAutomaton:
        return hypothesis_of(self.state, self.field, self.alphabet)

    def _f_i(self, z: Word, i: int, memo: dict):
        """``sum_s Z_i(s) g(s z_{>=i})`` for 1-based ``i`` in ``1..|z|+1``."""
        if i not in memo:
            f = self.field
            Z = hypothesis_run(self.state, z[: i - 1], f)
            rest = z[i - 1:]
            total = f.zero
            for coeff, s in zip(Z, self.state.S):
                if coeff:
                    total = f.add(total, f.mul(coeff, self.g(s + rest)))
            memo[i] = total
        return memo[i]

    def analyse(self, z) -> CexAnalysis:
        """Locate ``k`` with ``f_k != f_{k+1}`` and a violating state ``s*``."""
        z = as_word(z)
        f = self.field
        st = self.state
        memo: dict = {}
        lo, hi = 1, len(z) + 1
        if self._f_i(z, lo, memo) == self._f_i(z, hi, memo):
            raise NotACounterexample(f"hypothesis agrees with the target on {show(z)}")
        probes = []
        while hi - lo > 1:
            mid = (lo + hi) // 2
            probes.append(mid)
            if self._f_i(z, mid, memo) != self._f_i(z, lo, memo):
                hi = mid
            else:
                lo = mid
            assert self._f_i(z, lo, memo) != self._f_i(z, hi, memo), "binary search lost f_lo != f_hi"
        k = lo
        sigma = z[k - 1]
        suffix = z[k:]
        T = st.Tmats[sigma]
        base = [self.g(s2 + suffix) for s2 in st.S]
        for i, s in enumerate(st.S):
            predicted = f.dot(T.data[i], base)
            if self.g(s + (sigma,) + suffix) != predicted:
                return CexAnalysis(z, k, sigma, suffix, s, memo[k], memo[k + 1], tuple(probes))
        raise NoViolatingState(f"no state violates the T_{sigma} prediction on suffix {show(suffix)}")

    def process_counterexample(self, z) -> LearnerState:
        cex = self.analyse(z)
        st = self.state
        new_s = cex.s_star + (cex.sigma_k,)
        assert new_s not in st.S, "new access word already in S"
        assert cex.suffix not in st.E, "new suffix already in E"
        new = make_state(st.S + (new_s,), st.E + (cex.suffix,), self.g, self.field, self.alphabet)
        r = rank(new.Fmat)
        if r != st.size + 1:
            raise RankNotIncreased(f"rank {r} after extending a rank-{st.size} table")
        new.check()
        self.state = new
        self.analyses.append(cex)
        self.ranks.append(r)
        return new

    def run(self) -> LearnRun:
        if self.state is None:
            self.initialize()
        while True:
            h = self.build_hypothesis()
            z = self.teacher.equivalence(h)
            if z is None:
                self._emit(f"EQ\tdim={h.dim}\tCORRECT\t{self._status()}")
                break
            self._emit(f"EQ\tdim={h.dim}\tcex={show(z)}\t{self._status()}")
            log.debug("counterexample %s at |S|=%d", show(z), self.state.size)
            self.process_counterexample(z)
        out = h
        if self.shifted:
            out = combine(h, constant_automaton(self.field, self.alphabet, 1), (1, -1))
        return LearnRun(
            automaton=out,
            hypothesis=h,
            state=self.state,
            shifted=self.shifted,
            equivalence_queries=self.teacher.equivalence_queries,
            membership_queries=self.teacher.membership_queries,
            counterexamples=[c.z for c in self.analyses],
            ranks=list(self.ranks),
        )


def learn(t: Teacher, transcript: Callable[[str], None] | None = None) -> WeightedAutomaton:
    return Learner(t, transcript).run().automaton


def learn_run(t: Teacher, transcript: Callable[[str], None] | None = None) -> LearnRun:
    """Like :func:`learn` but returns counters, counterexamples and the rank history."""
    return Learner(t, transcript).run()
