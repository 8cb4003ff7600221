"""Command-line interface: ``walab <command> ...``.

Exit status is 0 on success, 1 on domain errors (bad files, unknown symbols,
searches that are too large) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import commtools, formats
from .errors import WalabError
from .families import family_fsa, family_oracle, ip_kernel_oracle, neq_nfa, neq_oracle, waprod_fsa
from .field import GF2, RATIONAL, Field
from .fsa import Fsa, Semantics, accepts, count_accepting_paths, fsa_to_wa
from .hankel import hankel_rank, oracle_from_fsa, oracle_from_wa, restricted_hankel
from .learner import learn_run, simulated_teacher
from .wautomaton import WeightedAutomaton, equivalent, evaluate, minimize, wa2_accepts
from .words import show


class UsageError(Exception):
    pass


def _parse_word(text: str, sep: str | None) -> tuple:
    if text in ("", "ε"):
        return ()
    return tuple(text.split(sep)) if sep else tuple(text)


def _parse_field(text: str) -> Field:
    t = text.lower()
    if t == "gf2":
        return GF2
    if t == "rational":
        return RATIONAL
    if t.startswith("gf") and t[2:].isdigit():
        return Field(int(t[2:]))
    raise UsageError(f"unknown field {text!r}; use gf2, gfP or rational")


def _as_wa(a, field: Field) -> WeightedAutomaton:
    return fsa_to_wa(a, field) if isinstance(a, Fsa) else a


def _write(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_eval(args) -> int:
    a = formats.load(args.automaton)
    w = _parse_word(args.word, args.sep)
    sem = args.semantics
    if isinstance(a, Fsa):
        if sem == "count":
            print(count_accepting_paths(a, w))
        else:
            print("accept" if accepts(a, w, Semantics(sem or "nfa")) else "reject")
        return 0
    if sem in (None, "count"):
        print(evaluate(a, w))
    elif sem == "wa2":
        print("accept" if wa2_accepts(a, w) else "reject")
    else:
        raise WalabError(f"{sem} semantics apply to fsa files only")
    return 0


def cmd_learn(args) -> int:
    target = _as_wa(formats.load(args.target), _parse_field(args.field))
    lines = [] if args.transcript else None
    run = learn_run(simulated_teacher(target), lines.append if lines is not None else None)
    if lines:
        for line in lines:
            print(line)
    print(
        f"CORRECT after {run.equivalence_queries} equivalence queries, "
        f"{run.membership_queries} membership queries"
    )
    print(f"learned dim: {run.automaton.dim} (shifted: {'yes' if run.shifted else 'no'})")
    if args.output:
        formats.save(run.automaton, args.output)
    return 0


def _oracle(name: str, semantics: str, field: Field):
    if name.startswith("file:"):
        a = formats.load(name[5:])
        if isinstance(a, Fsa):
            return oracle_from_fsa(a, Semantics(semantics), field, name)
        return oracle_from_wa(a, name)
    return family_oracle(name)


def cmd_rank(args) -> int:
    o = _oracle(args.oracle, args.semantics, _parse_field(args.field))
    block = restricted_hankel(o, args.length)
    if args.dump:
        print(block.format_grid())
    print(f"Hankel rank ({o.field.name.upper()}, len {args.length}): {hankel_rank(block)}")
    return 0


def cmd_minimize(args) -> int:
    a = _as_wa(formats.load(args.automaton), _parse_field(args.field))
    m = minimize(a)
    print(f"dim {a.dim} -> {m.dim}", file=sys.stderr)
    _write(formats.dumps(m), args.output)
    return 0


def cmd_equiv(args) -> int:
    field = _parse_field(args.field)
    a = _as_wa(formats.load(args.a), field)
    b = _as_wa(formats.load(args.b), field)
    v = equivalent(a, b)
    print("CORRECT" if v else f"witness: {show(v.witness, args.sep or '')}")
    return 0


def cmd_family(args) -> int:
    _write(formats.dumps(family_fsa(args.name)), args.output)
    return 0


def cmd_commc(args) -> int:
    o = family_oracle(args.fn)
    n = int(args.fn.split(":")[1])
    if args.what == "disc":
        d = commtools.discrepancy_exact(restricted_hankel(o, n))
        print(f"disc({o.name}) = {commtools.fmt_fraction(d)}")
    elif args.what == "chi1":
        print(f"chi1({o.name}) = {commtools.chi1_exact(restricted_hankel(o, n))}")
    else:
        row = commtools.bound_row(o, n, with_chi1=n <= 2)
        print(commtools.BOUNDS_HEADER)
        print(commtools.format_bound_row(row))
    return 0


def separation_report(n: int) -> list[str]:
    """Lines of the separation demo for family index ``n``."""
    fr = commtools.fmt_fraction
    lines = [f"separation demo, n={n}", "", f"[inner-product kernel ip:{n}: small WA2, large NFA]"]
    fsa = waprod_fsa(n)
    wa = fsa_to_wa(fsa, GF2)
    ip = ip_kernel_oracle(n)
    lines.append(f"WA2 states: {len(fsa)}")
    lines.append(f"minimized WA2 dim: {minimize(wa).dim}")
    lines.append(f"Hankel rank (GF2, len {n}): {hankel_rank(restricted_hankel(ip, n))}")
    row = commtools.bound_row(ip, n, with_chi1=n <= 2)
    lines.append(f"ones(ip:{n}): {row.ones}")
    lines.append(f"disc(ip:{n}) = {fr(row.disc)}")
    tag = " [from disc <= 2^(-n/2)]" if row.disc_bound_from_upper else ""
    lines.append(f"discrepancy bound on chi1: {fr(row.disc_bound)}{tag}")
    lines.append(f"chi1(ip:{n}) = {'n/a' if row.chi1 is None else row.chi1}")
    vacuous = " [vacuous: < 1]" if row.closed_form < 1 else ""
    lines.append(f"closed form 2^(n/2-2): {fr(row.closed_form)}{vacuous}")
    lines.append(f"NFA size lower bound: {fr(row.bound)}")
    lines += ["", f"[neq:{n}: small NFA, large WA2]"]
    lines.append(f"NFA states: {len(neq_nfa(n))}")
    neq_rank = hankel_rank(restricted_hankel(neq_oracle(n), n))
    lines.append(f"Hankel rank (GF2, len {n}, neq:{n}): {neq_rank} (2^n = {2 ** n})")
    return lines


def cmd_demo(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    print("\n".join(separation_report(args.n)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="walab", description="Exact weighted-automata laboratory.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate an automaton on a word")
    e.add_argument("--automaton", required=True)
    e.add_argument("--word", required=True)
    e.add_argument("--semantics", choices=["wa2", "nfa", "dfa", "count"])
    e.add_argument("--sep", help="symbol separator for multi-character symbols")
    e.set_defaults(func=cmd_eval)

    lr = sub.add_parser("learn", help="learn a target through a simulated teacher")
    lr.add_argument("--target", required=True)
    lr.add_argument("--transcript", action="store_true")
    lr.add_argument("--field", default="gf2", help="field used when the target is an fsa file")
    lr.add_argument("-o", "--output")
    lr.set_defaults(func=cmd_learn)

    r = sub.add_parser("rank", help="rank of a restricted Hankel block")
    r.add_argument("--oracle", required=True, help="waprod:N, neq:N, ip:N or file:PATH")
    r.add_argument("--length", required=True, type=int)
    r.add_argument("--semantics", default="wa2", choices=["wa2", "nfa", "dfa"])
    r.add_argument("--field", default="gf2", help="field for fsa-file oracles")
    r.add_argument("--dump", action="store_true", help="print the block")
    r.set_defaults(func=cmd_rank)

    m = sub.add_parser("minimize", help="minimize a weighted automaton")
    m.add_argument("--automaton", required=True)
    m.add_argument("--field", default="gf2")
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_minimize)

    q = sub.add_parser("equiv", help="equivalence test with witness")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--field", default="gf2")
    q.add_argument("--sep")
    q.set_defaults(func=cmd_equiv)

    f = sub.add_parser("family", help="write a family automaton (waprod:N, neq:N)")
    f.add_argument("name")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_family)

    c = sub.add_parser("commc", help="communication-complexity quantities")
    c.add_argument("--fn", required=True, help="ip:N, neq:N or waprod:N")
    c.add_argument("what", choices=["disc", "chi1", "bounds"])
    c.set_defaults(func=cmd_commc)

    d = sub.add_parser("demo", help="demonstrations")
    d.add_argument("which", choices=["separation"])
    d.add_argument("--n", type=int, default=2)
    d.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))
    except (WalabError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
