"""Generic finite-state automata with path-count semantics.

One transition structure, three acceptance rules: WA2 (odd number of accepting
paths), NFA (at least one) and DFA (exactly one, on a deterministic
structure).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import NotDeterministic, UnknownState, UnknownSymbol
from .field import Field, Matrix
from .wautomaton import WeightedAutomaton
from .words import Word, as_word, sort_words, words_of_length


class Semantics(enum.Enum):
    WA2 = "wa2"
    NFA = "nfa"
    DFA = "dfa"


@dataclass(frozen=True, eq=False)
class Fsa:
    """``(Q, Sigma, delta, S, F)``; ``delta`` is total, missing pairs map to the empty set."""

    states: tuple
    alphabet: tuple
    delta: Mapping[tuple, frozenset]
    start: frozenset
    final: frozenset

    def __post_init__(self):
        states = tuple(self.states)
        alphabet = tuple(self.alphabet)
        if len(set(states)) != len(states):
            raise ValueError("repeated state names")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("repeated symbols in alphabet")
        qs = set(states)
        delta = {}
        for (q, a), targets in self.delta.items():
            if q not in qs:
                raise UnknownState(f"transition from unknown state {q!r}")
            if a not in alphabet:
                raise UnknownSymbol(f"transition on unknown symbol {a!r}")
            targets = frozenset(targets)
            if not targets <= qs:
                raise UnknownState(f"transition into unknown states {sorted(map(str, targets - qs))}")
            delta[(q, a)] = targets
        for q in states:
            for a in alphabet:
                delta.setdefault((q, a), frozenset())
        start, final = frozenset(self.start), frozenset(self.final)
        if not start <= qs or not final <= qs:
            raise UnknownState("start/final states must be states")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "final", final)

    @classmethod
    def from_triples(cls, states, alphabet, triples: Iterable[Sequence], start, final) -> "Fsa":
        delta: dict = {}
        for q, a, r in triples:
            delta.setdefault((q, a), set()).add(r)
        return cls(states, alphabet, delta, start, final)

    def triples(self) -> list:
        """Transitions as ``(q, a, r)`` in state/alphabet/state order."""
        return [
            (q, a, r)
            for q in self.states
            for a in self.alphabet
            for r in self.states
            if r in self.delta[(q, a)]
        ]

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        return (
            isinstance(other, Fsa)
            and self.states == other.states
            and self.alphabet == other.alphabet
            and self.delta == other.delta
            and self.start == other.start
            and self.final == other.final
        )

    __hash__ = None

    def __repr__(self):
        return f"Fsa(states={len(self.states)}, alphabet={list(self.alphabet)})"

    def _step(self, q, a):
        if a not in self.alphabet:
            raise UnknownSymbol(f"symbol {a!r} not in alphabet {list(self.alphabet)}")
        return self.delta[(q, a)]

    def _check_state(self, q):
        if q not in self.states:
            raise UnknownState(f"no state {q!r}")


def count_accepting_paths(a: Fsa, w) -> int:
    """``|apaths(w)|`` as ``1_S^T A_{w_1} ... A_{w_m} 1_F`` over the naturals."""
    counts = {q: 1 for q in a.start}
    for s in as_word(w):
        nxt: dict = {}
        for q, c in counts.items():
            for r in a._step(q, s):
                nxt[r] = nxt.get(r, 0) + c
        counts = nxt
    return sum(c for q, c in counts.items() if q in a.final)


def is_dfa(a: Fsa) -> bool:
    return len(a.start) == 1 and all(len(a.delta[(q, s)]) == 1 for q in a.states for s in a.alphabet)


def accepts(a: Fsa, w, sem: Semantics | str = Semantics.NFA) -> bool:
    sem = Semantics(sem)
    if sem is Semantics.DFA and not is_dfa(a):
        raise NotDeterministic("DFA semantics need one start state and exactly one successor per (state, symbol)")
    n = count_accepting_paths(a, w)
    if sem is Semantics.WA2:
        return n % 2 == 1
    if sem is Semantics.NFA:
        return n >= 1
    return n == 1


def fsa_to_wa(a: Fsa, field: Field) -> WeightedAutomaton:
    """Weighted automaton whose basis is the state set (0/1 transition matrices)."""
    idx = {q: i for i, q in enumerate(a.states)}
    n = len(a.states)
    o, z = field.one, field.zero
    alpha = [o if q in a.start else z for q in a.states]
    omega = [o if q in a.final else z for q in a.states]
    trans = {}
    for s in a.alphabet:
        rows = [[z] * n for _ in range(n)]
        for q in a.states:
            for r in a.delta[(q, s)]:
                rows[idx[q]][idx[r]] = o
        trans[s] = Matrix._raw(field, rows, n)
    return WeightedAutomaton(field, a.alphabet, alpha, omega, trans)


def _reachable(a: Fsa) -> set:
    seen = set(a.start)
    stack = list(a.start)
    while stack:
        q = stack.pop()
        for s in a.alphabet:
            for r in a.delta[(q, s)]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
    return seen


def _words_between(a: Fsa, sources: frozenset, accept, max_len: int) -> frozenset:
    """Words of length <= max_len whose reachable set from ``sources`` satisfies ``accept``.

    Depth-first over words, pruning branches whose state set is empty.
    """
    out = set()

    def walk(w: Word, current: frozenset):
        if accept(current):
            out.add(w)
        if len(w) == max_len:
            return
        for s in a.alphabet:
            nxt = frozenset(r for q in current for r in a.delta[(q, s)])
            if nxt:
                walk(w + (s,), nxt)

    if sources:
        walk((), frozenset(sources))
    return frozenset(out)


def past(a: Fsa, q, max_len: int) -> frozenset:
    """Words of length <= max_len with some path from a start state to ``q``."""
    a._check_state(q)
    return _words_between(a, a.start, lambda cur: q in cur, max_len)


def future(a: Fsa, q, max_len: int) -> frozenset:
    """Words of length <= max_len leading from ``q`` into ``F``.

    Empty when ``q`` is unreachable: ``w`` must extend some word of ``past(q)``.
    """
    a._check_state(q)
    if q not in _reachable(a):
        return frozenset()
    return _words_between(a, frozenset([q]), lambda cur: bool(cur & a.final), max_len)


@dataclass(frozen=True)
class Rectangle:
    """A combinatorial rectangle ``rows x cols`` of words, tagged with its state."""

    state: object
    rows: tuple
    cols: tuple

    def __bool__(self):
        return bool(self.rows) and bool(self.cols)


def nfa_rectangle_cover(a: Fsa, n: int) -> list[Rectangle]:
    """One rectangle ``(past(q), future(q))`` restricted to length-``n`` words, per state.

    Under NFA semantics each rectangle lies inside the language's restricted
    Hankel ones and together they cover every one, so ``|Q|`` bounds the cover
    number from above.
    """
    level = set(words_of_length(a.alphabet, n))
    out = []
    for q in a.states:
        rows = sort_words(past(a, q, n) & level, a.alphabet)
        cols = sort_words(future(a, q, n) & level, a.alphabet)
        out.append(Rectangle(q, tuple(rows), tuple(cols)))
    return out

