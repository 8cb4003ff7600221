"""Exact weighted automata, Hankel ranks, active learning and rectangle-cover bounds."""

from .field import GF2, RATIONAL, Field, GFp, Matrix, Scalar, rank, solve_rows
from .fsa import Fsa, Semantics, accepts, count_accepting_paths, fsa_to_wa, is_dfa
from .hankel import MembershipOracle, build_block, hankel_rank, restricted_hankel
from .learner import learn, learn_run, simulated_teacher
from .wautomaton import (
    WeightedAutomaton,
    combine,
    constant_automaton,
    equivalent,
    evaluate,
    is_zero_function,
    minimize,
    wa2_accepts,
)

__version__ = "0.1.0"
