"""The concrete automata and language families of the separation results.

All families live over the alphabet ``("0", "1")``.  Kernel oracles are 0 on
every word whose length is not ``2n``.
"""

from __future__ import annotations

from .commtools import inner_product
from .field import GF2
from .fsa import Fsa, Semantics
from .hankel import MembershipOracle, oracle_from_fsa

BINARY = ("0", "1")


def _check_n(n: int):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"family index must be an integer >= 1, got {n!r}")


def waprod_fsa(n: int) -> Fsa:
    """``n + 2`` states ``s, m1..mn, f``; accepting paths mark two 1s exactly ``n`` apart.

    Read as a WA2 the language on ``xy`` (``|x| = |y| = n``) is the inner
    product of ``x`` and ``y``: each ``i`` with ``x_i = y_i = 1`` contributes
    one accepting path.
    """
    _check_n(n)
    mids = [f"m{i}" for i in range(1, n + 1)]
    states = ["s", *mids, "f"]
    t = [("s", "0", "s"), ("s", "1", "s"), ("s", "1", "m1")]
    for a, b in zip(mids, mids[1:]):
        t += [(a, "0", b), (a, "1", b)]
    t += [(mids[-1], "1", "f"), ("f", "0", "f"), ("f", "1", "f")]
    return Fsa.from_triples(states, BINARY, t, ["s"], ["f"])


def neq_nfa(n: int) -> Fsa:
    """``2n + 2`` states; on ``uv`` with ``|u| = |v| = n`` accepts iff ``u != v``.

    The left branch guesses a position where ``u`` has 0 and ``v`` has 1, the
    right branch the opposite.
    """
    _check_n(n)
    left = [f"l{i}" for i in range(1, n + 1)]
    right = [f"r{i}" for i in range(1, n + 1)]
    states = ["s", *left, *right, "f"]
    t = [("s", "0", "s"), ("s", "1", "s"), ("s", "0", "l1"), ("s", "1", "r1")]
    for chain in (left, right):
        for a, b in zip(chain, chain[1:]):
            t += [(a, "0", b), (a, "1", b)]
    t += [(left[-1], "1", "f"), (right[-1], "0", "f"), ("f", "0", "f"), ("f", "1", "f")]
    return Fsa.from_triples(states, BINARY, t, ["s"], ["f"])


class KernelOracle(MembershipOracle):
    """Membership oracle for a language defined on ``{0,1}^n x {0,1}^n``.

    ``family`` and ``n`` identify it (``"ip"`` or ``"neq"``).
    """

    def __init__(self, family: str, n: int, kernel):
        _check_n(n)
        self.family = family
        self.n = n

        def fn(w):
            if len(w) != 2 * n:
                return 0
            return kernel("".join(w[:n]), "".join(w[n:]))

        super().__init__(fn, GF2, BINARY, f"{family}:{n}")


def ip_kernel_oracle(n: int) -> KernelOracle:
    return KernelOracle("ip", n, inner_product)


def neq_oracle(n: int) -> KernelOracle:
    return KernelOracle("neq", n, lambda u, v: int(u != v))


def waprod_oracle(n: int) -> MembershipOracle:
    """The full WA2 language of :func:`waprod_fsa`, off-kernel words included."""
    return oracle_from_fsa(waprod_fsa(n), Semantics.WA2, GF2, f"waprod:{n}")


def parse_family(name: str) -> tuple[str, int]:
    """Split ``"waprod:3"`` into ``("waprod", 3)``."""
    kind, sep, n = name.partition(":")
    if not sep or kind not in ("waprod", "neq", "ip") or not n.isdigit() or int(n) < 1:
        raise ValueError(f"unknown family {name!r}; expected waprod:N, neq:N or ip:N")
    return kind, int(n)


def family_oracle(name: str) -> MembershipOracle:
    kind, n = parse_family(name)
    return {"waprod": waprod_oracle, "neq": neq_oracle, "ip": ip_kernel_oracle}[kind](n)


def family_fsa(name: str) -> Fsa:
    kind, n = parse_family(name)
    if kind == "ip":
        raise ValueError("ip:N is an oracle, not an automaton; use waprod:N for its WA2 realization")
    return waprod_fsa(n) if kind == "waprod" else neq_nfa(n)
