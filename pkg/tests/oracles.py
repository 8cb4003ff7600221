"""Independent brute-force oracles used only by the tests."""

from fractions import Fraction
from itertools import combinations, product
import random

from walab.field import GF2, RATIONAL, GFp, Matrix
from walab.wautomaton import WeightedAutomaton


def det(rows, f):
    """Leibniz-free determinant by cofactor expansion (tiny matrices only)."""
    n = len(rows)
    if n == 0:
        return f.one
    total = f.zero
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = f.mul(rows[0][j], det(minor, f))
        total = f.add(total, term) if j % 2 == 0 else f.sub(total, term)
    return total


def brute_rank(m: Matrix) -> int:
    """Size of the largest square submatrix with nonzero determinant."""
    f = m.field
    for k in range(min(m.rows, m.cols), 0, -1):
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                if det([[m.data[i][j] for j in cs] for i in rs], f):
                    return k
    return 0


def enumerate_accepting_paths(a, w, cap=10**6):
    """Accepting paths built by the recursive path definition; raises past ``cap``."""
    paths = [(q,) for q in a.states if q in a.start]
    for s in w:
        if s not in a.alphabet:
            raise KeyError(s)
        paths = [p + (r,) for p in paths for r in a.states if r in a.delta[(p[-1], s)]]
        if len(paths) > cap:
            raise OverflowError(f"more than {cap} paths")
    return [p for p in paths if p[-1] in a.final]


def direct_eval(a: WeightedAutomaton, w):
    """f(w) as a sum over all state sequences (no matrix products)."""
    f = a.field
    n = a.dim
    total = f.zero
    for seq in product(range(n), repeat=len(w) + 1):
        term = f.mul(a.alpha[seq[0]], a.omega[seq[-1]])
        for k, s in enumerate(w):
            if not term:
                break
            term = f.mul(term, a.transitions[s].data[seq[k]][seq[k + 1]])
        total = f.add(total, term)
    return total


def all_words(alphabet, n):
    for k in range(n + 1):
        yield from product(alphabet, repeat=k)


def first_nonzero_word(a, max_len):
    for w in all_words(a.alphabet, max_len):
        if direct_eval(a, w):
            return w
    return None


def brute_discrepancy(rows):
    """Max over all row and column subsets, no greedy step."""
    r, c = len(rows), len(rows[0])
    best = 0
    for A in range(1 << r):
        for B in range(1 << c):
            s = sum(
                1 - 2 * rows[i][j] for i in range(r) if A >> i & 1 for j in range(c) if B >> j & 1
            )
            best = max(best, abs(s))
    return Fraction(best, r * c)


def brute_chi1(rows):
    """Smallest number of arbitrary 1-monochromatic rectangles covering all ones."""
    r, c = len(rows), len(rows[0])
    ones = {(i, j) for i in range(r) for j in range(c) if rows[i][j]}
    if not ones:
        return 0
    rects = []
    for A in range(1, 1 << r):
        for B in range(1, 1 << c):
            cells = {(i, j) for i in range(r) if A >> i & 1 for j in range(c) if B >> j & 1}
            if cells <= ones:
                rects.append(frozenset(cells))
    rects = list(set(rects))
    for k in range(1, len(ones) + 1):
        for combo in combinations(rects, k):
            if frozenset().union(*combo) == ones:
                return k
    raise AssertionError("unreachable")


FIELDS = {"gf2": GF2, "gf5": GFp(5), "rational": RATIONAL}


def random_element(field, rng):
    if field.p is not None:
        return rng.randrange(field.p)
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def random_wa(field, dim, k, rng, density=0.6):
    alphabet = [str(i) for i in range(k)]

    def el():
        return random_element(field, rng) if rng.random() < density else 0

    return WeightedAutomaton(
        field,
        alphabet,
        [el() for _ in range(dim)],
        [el() for _ in range(dim)],
        {a: [[el() for _ in range(dim)] for _ in range(dim)] for a in alphabet},
    )


def random_matrix(field, rows, cols, rng):
    return Matrix(field, [[random_element(field, rng) for _ in range(cols)] for _ in range(rows)])


def random_fsa(n_states, k, rng, p=0.35):
    from walab.fsa import Fsa

    states = [f"q{i}" for i in range(n_states)]
    alphabet = [str(i) for i in range(k)]
    triples = [(q, a, r) for q in states for a in alphabet for r in states if rng.random() < p]
    start = [q for q in states if rng.random() < 0.4] or [states[0]]
    final = [q for q in states if rng.random() < 0.4]
    return Fsa.from_triples(states, alphabet, triples, start, final)


def random_dfa(n_states, k, rng):
    from walab.fsa import Fsa

    states = [f"q{i}" for i in range(n_states)]
    alphabet = [str(i) for i in range(k)]
    triples = [(q, a, rng.choice(states)) for q in states for a in alphabet]
    final = [q for q in states if rng.random() < 0.5]
    return Fsa.from_triples(states, alphabet, triples, [states[0]], final)
