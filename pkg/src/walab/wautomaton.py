"""Weighted automata over a field.

An automaton of dimension ``n`` is a triple ``(alpha, omega, {M_sigma})`` and
computes ``f(w) = alpha^T M_{w_1} ... M_{w_m} omega``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .errors import AlphabetMismatch, FieldMismatch, UnknownSymbol
from .field import GF2, EchelonSpan, Field, Matrix, Scalar, coordinates, mat_vec, vec_mat
from .words import Word, as_word


@dataclass(frozen=True, eq=False)
class WeightedAutomaton:
    field: Field
    alphabet: tuple
    alpha: tuple
    omega: tuple
    transitions: Mapping[str, Matrix]

    def __post_init__(self):
        f = self.field
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ValueError(f"repeated symbols in alphabet {alphabet}")
        alpha = tuple(f.coerce(x) for x in self.alpha)
        omega = tuple(f.coerce(x) for x in self.omega)
        n = len(alpha)
        if len(omega) != n:
            raise ValueError(f"alpha has length {n} but omega has length {len(omega)}")
        trans = {}
        for a in alphabet:
            if a not in self.transitions:
                raise ValueError(f"no transition matrix for symbol {a!r}")
            m = self.transitions[a]
            if not isinstance(m, Matrix):
                m = Matrix(f, m, n)
            if m.field != f:
                raise FieldMismatch(f"matrix for {a!r} is over {m.field.name}, automaton over {f.name}")
            if m.shape != (n, n):
                raise ValueError(f"matrix for {a!r} has shape {m.shape}, expected {(n, n)}")
            trans[a] = m
        extra = set(self.transitions) - set(alphabet)
        if extra:
            raise ValueError(f"transition matrices for symbols outside the alphabet: {sorted(extra)}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "transitions", trans)

    @property
    def dim(self) -> int:
        return len(self.alpha)

    def __eq__(self, other):
        """Structural equality of all components (not functional equivalence)."""
        return (
            isinstance(other, WeightedAutomaton)
            and self.field == other.field
            and self.alphabet == other.alphabet
            and self.alpha == other.alpha
            and self.omega == other.omega
            and self.transitions == other.transitions
        )

    __hash__ = None

    def __repr__(self):
        return f"WeightedAutomaton({self.field.name}, alphabet={list(self.alphabet)}, dim={self.dim})"

    def state_after(self, w) -> tuple:
        """Row vector ``alpha^T M_w``."""
        v = self.alpha
        for a in as_word(w):
            try:
                m = self.transitions[a]
            except KeyError:
                raise UnknownSymbol(f"symbol {a!r} not in alphabet {list(self.alphabet)}") from None
            v = vec_mat(self.field, v, m)
        return v

    def __call__(self, w) -> Scalar:
        return evaluate(self, w)

    def transpose(self) -> "WeightedAutomaton":
        """Automaton computing ``f`` on reversed words."""
        return WeightedAutomaton(
            self.field, self.alphabet, self.omega, self.alpha,
            {a: m.transpose() for a, m in self.transitions.items()},
        )


def evaluate(a: WeightedAutomaton, w) -> Scalar:
    return Scalar(a.field.dot(a.state_after(w), a.omega), a.field)


def wa2_accepts(a: WeightedAutomaton, w) -> bool:
    if a.field != GF2:
        raise FieldMismatch(f"WA2 acceptance needs a GF(2) automaton, got {a.field.name}")
    return evaluate(a, w).value == 1


def _check_compatible(a: WeightedAutomaton, b: WeightedAutomaton):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.name} vs {b.field.name}")
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"{list(a.alphabet)} vs {list(b.alphabet)}")


def combine(a: WeightedAutomaton, b: WeightedAutomaton, coeffs=(1, 1)) -> WeightedAutomaton:
    """Direct sum computing ``c_a * f_a + c_b * f_b``.

    The coefficients scale the initial vectors.
    """
    _check_compatible(a, b)
    f = a.field
    ca, cb = (f.coerce(c) for c in coeffs)
    na, nb = a.dim, b.dim
    z = f.zero
    alpha = [f.mul(ca, x) for x in a.alpha] + [f.mul(cb, x) for x in b.alpha]
    omega = list(a.omega) + list(b.omega)
    trans = {}
    for s in a.alphabet:
        ma, mb = a.transitions[s].data, b.transitions[s].data
        rows = [list(r) + [z] * nb for r in ma] + [[z] * na + list(r) for r in mb]
        trans[s] = Matrix._raw(f, rows, na + nb)
    return WeightedAutomaton(f, a.alphabet, alpha, omega, trans)


def constant_automaton(field: Field, alphabet: Sequence[str], c) -> WeightedAutomaton:
    one = Matrix.identity(field, 1)
    return WeightedAutomaton(field, tuple(alphabet), [field.one], [field.coerce(c)], {s: one for s in alphabet})


def zero_automaton(field: Field, alphabet: Sequence[str], dim: int = 0) -> WeightedAutomaton:
    z = Matrix.zeros(field, dim, dim)
    return WeightedAutomaton(field, tuple(alphabet), [field.zero] * dim, [field.zero] * dim, {s: z for s in alphabet})


class Verdict(NamedTuple):
    """Outcome of a zeroness/equivalence test; truthy iff the test holds.

    ``witness`` is the length-lexicographically least word on which the test
    fails, or ``None``.
    """

    holds: bool
    witness: Word | None = None

    def __bool__(self):
        return self.holds


def _reachable_span(a: WeightedAutomaton):
    """Breadth-first span of ``{alpha^T M_w}``; yields (word, vector) as kept."""
    f = a.field
    span = EchelonSpan(f, a.dim)
    queue = deque()
    if span.add(a.alpha):
        queue.append(((), a.alpha))
        yield (), a.alpha
    while queue:
        w, v = queue.popleft()
        for s in a.alphabet:
            u = vec_mat(f, v, a.transitions[s])
            if span.add(u):
                ws = w + (s,)
                queue.append((ws, u))
                yield ws, u


def is_zero_function(a: WeightedAutomaton) -> Verdict:
    """Decide whether ``a`` computes the zero function.

    A vector is kept only when it is independent of those found earlier, so at
    most ``dim`` vectors are explored.  The first kept vector not orthogonal to
    ``omega`` belongs to the length-lex least nonzero word: any earlier word's
    vector lies in the span of kept vectors, all of which evaluate to zero.
    """
    f = a.field
    for w, v in _reachable_span(a):
        if f.dot(v, a.omega):
            return Verdict(False, w)
    return Verdict(True, None)


def equivalent(a: WeightedAutomaton, b: WeightedAutomaton) -> Verdict:
    return is_zero_function(combine(a, b, (1, -1)))


def _forward_reduce(a: WeightedAutomaton) -> WeightedAutomaton:
    """Restrict ``a`` to the span of its reachable row vectors."""
    f = a.field
    basis = [v for _, v in _reachable_span(a)]
    k = len(basis)
    if k == 0:
        return zero_automaton(f, a.alphabet)
    alpha = [f.one] + [f.zero] * (k - 1)
    omega = [f.dot(v, a.omega) for v in basis]
    trans = {}
    for s in a.alphabet:
        images = [vec_mat(f, v, a.transitions[s]) for v in basis]
        trans[s] = Matrix._raw(f, coordinates(f, basis, images), k)
    return WeightedAutomaton(f, a.alphabet, alpha, omega, trans)


def minimize(a: WeightedAutomaton) -> WeightedAutomaton:
    """Equivalent automaton of minimal dimension.

    Forward reduction to reachable vectors, then the same on the transposed
    automaton (co-reachable column vectors).
    """
    return _forward_reduce(_forward_reduce(a).transpose()).transpose()


def permute_states(a: WeightedAutomaton, perm: Sequence[int]) -> WeightedAutomaton:
    """Relabel states: new state ``i`` is old state ``perm[i]``."""
    trans = {
        s: Matrix._raw(a.field, [[m.data[pi][pj] for pj in perm] for pi in perm], a.dim)
        for s, m in a.transitions.items()
    }
    return WeightedAutomaton(
        a.field, a.alphabet, [a.alpha[i] for i in perm], [a.omega[i] for i in perm], trans
    )


def run_column(a: WeightedAutomaton, w) -> tuple:
    """Column vector ``M_w omega``."""
    v = a.omega
    for s in reversed(as_word(w)):
        v = mat_vec(a.field, a.transitions[s], v)
    return v
