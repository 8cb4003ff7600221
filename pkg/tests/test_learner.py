import random

import pytest

from walab.errors import NotACounterexample
from walab.families import waprod_fsa
from walab.field import GF2, RATIONAL, GFp, Matrix, rank
from walab.fsa import fsa_to_wa
from walab.learner import (
    Learner,
    ShiftedTeacher,
    hypothesis_run,
    learn,
    learn_run,
    simulated_teacher,
)
from walab.wautomaton import (
    WeightedAutomaton,
    combine,
    constant_automaton,
    equivalent,
    evaluate,
    minimize,
    zero_automaton,
)
from walab.words import words_up_to

from oracles import FIELDS, random_wa

BIN = ("0", "1")


def parity():
    """f(w) = 1 iff w has an even number of 1s."""
    return WeightedAutomaton(
        GF2, BIN, [1, 0], [1, 0], {"0": [[1, 0], [0, 1]], "1": [[0, 1], [1, 0]]}
    )


def test_initialize_without_shift():
    lr = Learner(simulated_teacher(parity()))
    st, shifted = lr.initialize()
    assert not shifted
    assert st.Fmat.data == ((1,),)


def test_initialize_with_shift():
    lr = Learner(simulated_teacher(fsa_to_wa(waprod_fsa(2), GF2)))
    st, shifted = lr.initialize()
    assert shifted and isinstance(lr.teacher, ShiftedTeacher)
    assert st.Fmat.data == ((1,),)


def test_initial_hypothesis_is_single_state_loop():
    rng = random.Random(1)
    target = random_wa(RATIONAL, 3, 2, rng)
    while evaluate(target, "") == 0:
        target = random_wa(RATIONAL, 3, 2, rng)
    lr = Learner(simulated_teacher(target))
    lr.initialize()
    h = lr.build_hypothesis()
    fe = evaluate(target, "")
    assert h.dim == 1
    assert h.omega == (fe.value,)
    for s in BIN:
        assert h.transitions[s].data == (((evaluate(target, s) / fe).value,),)


def test_gf2_one_by_one_hypothesis():
    lr = Learner(simulated_teacher(parity()))
    lr.initialize()
    h = lr.build_hypothesis()
    assert h.transitions["0"] == Matrix(GF2, [[1]])
    assert h.transitions["1"] == Matrix(GF2, [[0]])


def test_parity_trace():
    t = simulated_teacher(parity())
    lr = Learner(t)
    lr.initialize()
    h = lr.build_hypothesis()
    z = t.equivalence(h)
    assert z == ("1", "1")
    cex = lr.analyse(z)
    assert (cex.k, cex.sigma_k, cex.suffix, cex.s_star) == (1, "1", ("1",), ())
    st = lr.process_counterexample(z)
    assert st.S == ((), ("1",)) and st.E == ((), ("1",))
    assert rank(st.Fmat) == 2
    assert equivalent(lr.build_hypothesis(), parity())


def test_hypothesis_reproduces_f_on_access_words():
    rng = random.Random(2)
    for name, f in sorted(FIELDS.items()):
        for _ in range(10):
            target = random_wa(f, rng.randint(2, 4), 2, rng)
            lr = Learner(simulated_teacher(target))
            lr.initialize()
            while True:
                h = lr.build_hypothesis()
                for i, s in enumerate(lr.state.S):
                    z = hypothesis_run(lr.state, s, f)
                    assert z == tuple(f.one if j == i else f.zero for j in range(lr.state.size))
                    assert evaluate(h, s).value == lr.g(s)
                z = lr.teacher.equivalence(h)
                if z is None:
                    break
                lr.process_counterexample(z)


def test_hypothesis_run_matches_matrix_products():
    target = fsa_to_wa(waprod_fsa(3), GF2)
    lr = Learner(simulated_teacher(target))
    run = lr.run()
    h = run.hypothesis
    for w in words_up_to(BIN, 4):
        assert hypothesis_run(run.state, w, GF2) == h.state_after(w)


def test_not_a_counterexample():
    lr = Learner(simulated_teacher(parity()))
    lr.initialize()
    with pytest.raises(NotACounterexample):
        lr.process_counterexample("0")


@pytest.mark.parametrize("name", ["gf5", "rational"])
def test_rank_grows_by_one(name):
    rng = random.Random(f"grow-{name}")
    for _ in range(100):
        target = random_wa(FIELDS[name], rng.randint(1, 4), rng.randint(1, 3), rng)
        lr = Learner(simulated_teacher(target))
        run = lr.run()
        assert run.ranks == list(range(1, len(run.ranks) + 1))
        # each counterexample contributed a fresh access word and a fresh suffix
        assert [a.s_star + (a.sigma_k,) for a in lr.analyses] == list(run.state.S[1:])
        assert [a.suffix for a in lr.analyses] == list(run.state.E[1:])
        assert equivalent(run.automaton, target)


def test_learn_constant_one():
    t = simulated_teacher(constant_automaton(GFp(5), BIN, 1))
    run = learn_run(t)
    assert run.equivalence_queries == 1 and not run.counterexamples
    assert run.automaton.dim == 1


def test_learn_waprod3():
    target = fsa_to_wa(waprod_fsa(3), GF2)
    run = learn_run(simulated_teacher(target))
    assert equivalent(run.automaton, target)
    assert run.equivalence_queries <= 3 + 3


def test_learn_random_dim4_gf5():
    rng = random.Random(5)
    for _ in range(10):
        target = random_wa(GFp(5), 4, 2, rng)
        while evaluate(target, "") == 0:
            target = random_wa(GFp(5), 4, 2, rng)
        learned = learn(simulated_teacher(target))
        assert equivalent(learned, target)
        assert learned.dim == minimize(target).dim


def test_learn_zero_function():
    run = learn_run(simulated_teacher(zero_automaton(RATIONAL, BIN, 2)))
    assert run.shifted and equivalent(run.automaton, zero_automaton(RATIONAL, BIN))


def test_simulated_teacher():
    target = fsa_to_wa(waprod_fsa(2), GF2)
    t = simulated_teacher(target)
    assert t.membership(tuple("1010")) == 1
    assert t.equivalence(target) is None
    z = t.equivalence(zero_automaton(GF2, BIN))
    assert z is not None and evaluate(target, z) != 0
    assert t.equivalence_queries == 2


def test_transcript_is_deterministic():
    target = fsa_to_wa(waprod_fsa(2), GF2)
    first, second = [], []
    learn(simulated_teacher(target), first.append)
    learn(simulated_teacher(target), second.append)
    assert first == second
    assert first[0].startswith("SHIFT")
    assert first[-1].startswith("EQ\tdim=4\tCORRECT")
    assert all(line.split("\t")[0] in {"SHIFT", "MQ", "EQ"} for line in first)


def test_agreement_on_table_records():
    """The hypothesis need not reproduce every F entry; record how often it does."""
    rng = random.Random(6)
    agree = total = 0
    for name, f in sorted(FIELDS.items()):
        for _ in range(20):
            target = random_wa(f, rng.randint(2, 5), 2, rng)
            lr = Learner(simulated_teacher(target))
            lr.initialize()
            while True:
                h = lr.build_hypothesis()
                st = lr.state
                for s in st.S:
                    for e in st.E:
                        total += 1
                        agree += evaluate(h, s + e).value == lr.g(s + e)
                    assert evaluate(h, s).value == lr.g(s)
                z = lr.teacher.equivalence(h)
                if z is None:
                    break
                lr.process_counterexample(z)
    print(f"hypothesis agreement on S.E: {agree}/{total}")
    assert agree <= total
