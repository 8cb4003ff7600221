import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from walab.errors import AlphabetMismatch, FieldMismatch, UnknownSymbol
from walab.families import waprod_fsa
from walab.field import GF2, RATIONAL, GFp
from walab.fsa import fsa_to_wa
from walab.hankel import build_block, hankel_rank, oracle_from_wa
from walab.wautomaton import (
    WeightedAutomaton,
    combine,
    constant_automaton,
    equivalent,
    evaluate,
    is_zero_function,
    minimize,
    permute_states,
    wa2_accepts,
    zero_automaton,
)
from walab.words import words_up_to

from oracles import FIELDS, all_words, direct_eval, first_nonzero_word, random_wa

BIN = ("0", "1")


def waprod_wa(n):
    return fsa_to_wa(waprod_fsa(n), GF2)


def test_evaluate_examples():
    zero = zero_automaton(GF2, BIN, 2)
    assert evaluate(zero, "0110") == 0
    assert evaluate(waprod_wa(2), "1010") == 1
    assert evaluate(waprod_wa(2), "1111") == 0


def test_evaluate_empty_word_is_alpha_dot_omega():
    a = WeightedAutomaton(RATIONAL, BIN, ["1/2", 3], [2, "1/3"], {s: [[0, 0], [0, 0]] for s in BIN})
    assert evaluate(a, "") == 2


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        evaluate(waprod_wa(2), "102")


def test_construction_validation():
    with pytest.raises(ValueError):
        WeightedAutomaton(GF2, BIN, [1], [1], {"0": [[1]]})
    with pytest.raises(ValueError):
        WeightedAutomaton(GF2, ("0", "0"), [1], [1], {"0": [[1]]})
    with pytest.raises(ValueError):
        WeightedAutomaton(GF2, BIN, [1, 0], [1], {s: [[1]] for s in BIN})


@pytest.mark.parametrize("name", sorted(FIELDS))
def test_evaluate_matches_path_sum(name):
    rng = random.Random(f"eval-{name}")
    for _ in range(15):
        a = random_wa(FIELDS[name], rng.randint(1, 3), 2, rng)
        for w in all_words(a.alphabet, 4):
            assert evaluate(a, w).value == direct_eval(a, w)


def test_constant_automaton():
    assert evaluate(constant_automaton(GF2, BIN, 0), "0110") == 0
    assert evaluate(constant_automaton(GF2, BIN, 1), "0110") == 1
    assert evaluate(constant_automaton(RATIONAL, BIN, Fraction(3, 7)), "") == Fraction(3, 7)


def test_combine_examples():
    a = waprod_wa(2)
    z = zero_automaton(GF2, BIN)
    s = combine(a, z, (1, 1))
    d = combine(a, a, (1, -1))
    for w in words_up_to(BIN, 6):
        assert evaluate(s, w) == evaluate(a, w)
        assert evaluate(d, w) == 0


def test_combine_recovers_shifted_function():
    rng = random.Random(7)
    f = random_wa(GFp(5), 3, 2, rng)
    g = combine(f, constant_automaton(GFp(5), f.alphabet, 1), (1, 1))
    back = combine(g, constant_automaton(GFp(5), f.alphabet, 1), (1, -1))
    for _ in range(100):
        w = tuple(rng.choice(f.alphabet) for _ in range(rng.randint(0, 6)))
        assert evaluate(back, w).value == direct_eval(f, w)


def test_combine_mismatch():
    with pytest.raises(FieldMismatch):
        combine(zero_automaton(GF2, BIN), zero_automaton(RATIONAL, BIN))
    with pytest.raises(AlphabetMismatch):
        combine(zero_automaton(GF2, BIN), zero_automaton(GF2, ("a",)))


@pytest.mark.parametrize("name", sorted(FIELDS))
def test_combine_linearity(name):
    f = FIELDS[name]
    rng = random.Random(f"lin-{name}")
    for _ in range(10):
        a = random_wa(f, rng.randint(1, 3), 2, rng)
        b = random_wa(f, rng.randint(1, 3), 2, rng)
        ca, cb = (f.coerce(v) for v in (rng.randint(-3, 3), rng.randint(-3, 3)))
        c = combine(a, b, (ca, cb))
        for w in all_words(BIN, 8 if f.p == 2 else 5):
            expected = f.add(f.mul(ca, evaluate(a, w).value), f.mul(cb, evaluate(b, w).value))
            assert evaluate(c, w).value == expected


def test_zeroness_examples():
    assert is_zero_function(zero_automaton(GF2, BIN, 3)) == (True, None)
    assert is_zero_function(combine(waprod_wa(2), waprod_wa(2), (1, -1)))
    verdict = is_zero_function(waprod_wa(2))
    expected = first_nonzero_word(waprod_wa(2), 4)
    assert expected == ("1", "0", "1")
    assert not verdict and verdict.witness == expected
    assert evaluate(waprod_wa(2), verdict.witness) == 1


def test_equivalent_examples():
    a = waprod_wa(2)
    assert equivalent(a, a)
    assert equivalent(a, permute_states(a, [3, 1, 0, 2]))
    v = equivalent(a, zero_automaton(GF2, BIN))
    assert not v
    assert evaluate(a, v.witness) != 0


@pytest.mark.parametrize("name", sorted(FIELDS))
def test_zeroness_witness_is_length_lex_least(name):
    f = FIELDS[name]
    rng = random.Random(f"wit-{name}")
    for _ in range(40):
        a = random_wa(f, rng.randint(1, 4), 2, rng, density=0.35)
        v = is_zero_function(a)
        # nonzero functions have a witness of length < dim
        assert v.witness == first_nonzero_word(a, a.dim)


@pytest.mark.parametrize("name", sorted(FIELDS))
def test_equivalence_agrees_with_bounded_enumeration(name):
    f = FIELDS[name]
    rng = random.Random(f"eq-{name}")
    for _ in range(30):
        a = random_wa(f, rng.randint(1, 3), 2, rng)
        b = a if rng.random() < 0.3 else random_wa(f, rng.randint(1, 3), 2, rng)
        if rng.random() < 0.3:
            b = permute_states(a, list(reversed(range(a.dim))))
        bound = a.dim + b.dim
        brute = all(evaluate(a, w) == evaluate(b, w) for w in all_words(BIN, bound))
        assert bool(equivalent(a, b)) == brute


def test_wa2_accepts():
    assert not wa2_accepts(zero_automaton(GF2, BIN, 1), "0101")
    assert wa2_accepts(waprod_wa(2), "1010")
    # x = y = 101: two positions with x_i = y_i = 1
    assert not wa2_accepts(waprod_wa(3), "101101")
    with pytest.raises(FieldMismatch):
        wa2_accepts(zero_automaton(RATIONAL, BIN), "")


def _hankel_dim(a, length):
    words = list(words_up_to(a.alphabet, length))
    return hankel_rank(build_block(oracle_from_wa(a), words, words))


def test_minimize_examples():
    a = waprod_wa(2)
    m = minimize(a)
    assert minimize(m).dim == m.dim
    for n in range(1, 5):
        assert minimize(waprod_wa(n)).dim <= n + 2
    rng = random.Random(3)
    base = minimize(random_wa(RATIONAL, 3, 2, rng))
    doubled = combine(base, base, (1, 1))
    mm = minimize(doubled)
    assert mm.dim == base.dim == _hankel_dim(doubled, doubled.dim)
    assert equivalent(mm, doubled)


def test_minimize_zero_function():
    m = minimize(combine(waprod_wa(2), waprod_wa(2), (1, -1)))
    assert m.dim == 0
    assert evaluate(m, "0101") == 0


@pytest.mark.parametrize("name", sorted(FIELDS))
def test_minimize_properties(name):
    f = FIELDS[name]
    rng = random.Random(f"min-{name}")
    for _ in range(25):
        a = random_wa(f, rng.randint(1, 4), rng.randint(1, 2), rng, density=0.5)
        m = minimize(a)
        assert m.dim <= a.dim
        assert equivalent(a, m)
        assert minimize(m).dim == m.dim
        assert m.dim == _hankel_dim(a, a.dim)


@given(st.integers(1, 4), st.integers(0, 2**31))
def test_hankel_rank_lower_bounds_dimension(dim, seed):
    rng = random.Random(seed)
    a = random_wa(GFp(5), dim, 2, rng)
    assert _hankel_dim(a, 3) <= dim


def test_run_column_matches_evaluation():
    from walab.wautomaton import run_column

    rng = random.Random(7)
    a = random_wa(GFp(5), 3, 2, rng)
    for w in all_words(a.alphabet, 4):
        assert a.field.dot(a.alpha, run_column(a, w)) == a(w)
