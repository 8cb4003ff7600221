"""Finite Hankel blocks ``H(u, v) = f(uv)`` built from a membership oracle."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Sequence

from .field import GF2, Field, Matrix, rank
from .fsa import Fsa, Semantics, accepts
from .wautomaton import WeightedAutomaton
from .words import Word, as_word, show, words_of_length


class MembershipOracle:
    """Memoizing wrapper around a total function ``word -> field element``.

    ``calls`` counts every lookup, ``queries`` counts distinct words actually
    sent to the wrapped function.
    """

    def __init__(self, fn: Callable[[Word], object], field: Field, alphabet: Sequence[str], name: str = "oracle"):
        self._fn = fn
        self.field = field
        self.alphabet = tuple(alphabet)
        self.name = name
        self.calls = 0
        self._memo: dict = {}
        self._lock = threading.RLock()

    @property
    def queries(self) -> int:
        return len(self._memo)

    def __call__(self, w) -> object:
        """Raw field value at ``w``."""
        w = as_word(w)
        with self._lock:
            self.calls += 1
            if w not in self._memo:
                self._memo[w] = self.field.coerce(self._fn(w))
            return self._memo[w]

    def __repr__(self):
        return f"MembershipOracle({self.name}, {self.field.name})"


def oracle_from_wa(a: WeightedAutomaton, name: str = "wa") -> MembershipOracle:
    return MembershipOracle(lambda w: a.field.dot(a.state_after(w), a.omega), a.field, a.alphabet, name)


def oracle_from_fsa(a: Fsa, sem: Semantics | str = Semantics.NFA, field: Field = GF2, name: str = "fsa") -> MembershipOracle:
    """0/1-valued oracle for the language of ``a`` under ``sem``."""
    sem = Semantics(sem)
    return MembershipOracle(lambda w: 1 if accepts(a, w, sem) else 0, field, a.alphabet, name)


@dataclass(frozen=True)
class HankelBlock:
    rows: tuple
    cols: tuple
    entries: Matrix

    @property
    def field(self) -> Field:
        return self.entries.field

    def value(self, i: int, j: int):
        return self.entries.data[i][j]

    def ones(self) -> int:
        return sum(1 for row in self.entries.data for x in row if x)

    def format_grid(self, sep: str = "") -> str:
        """Plain-text grid, one labelled row per line, preceded by a column-label header."""
        f = self.field
        labels = [show(r, sep) for r in self.rows]
        width = max([len(x) for x in labels] + [1])
        lines = [" " * width + " | " + " ".join(show(c, sep) for c in self.cols)]
        for lab, row in zip(labels, self.entries.data):
            lines.append(lab.rjust(width) + " | " + " ".join(f.format(x) for x in row))
        return "\n".join(lines)


def build_block(o: MembershipOracle, rows: Sequence, cols: Sequence) -> HankelBlock:
    rows = tuple(as_word(r) for r in rows)
    cols = tuple(as_word(c) for c in cols)
    data = [[o(r + c) for c in cols] for r in rows]
    return HankelBlock(rows, cols, Matrix._raw(o.field, data, len(cols)))


def restricted_hankel(o: MembershipOracle, n: int) -> HankelBlock:
    """Block on all length-``n`` prefixes and suffixes, lexicographically ordered."""
    level = words_of_length(o.alphabet, n)
    return build_block(o, level, level)


def hankel_rank(b: HankelBlock) -> int:
    return rank(b.entries)
