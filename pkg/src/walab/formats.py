"""JSON automaton files.

Weighted automaton::

    {"kind": "wa", "field": "gf2" | {"gfp": 5} | "rational",
     "alphabet": ["0", "1"], "dim": 2,
     "alpha": ["1", "0"], "omega": ["0", "1/2"],
     "transitions": {"0": [["1", "0"], ["0", "1"]], "1": ...}}

Finite-state automaton::

    {"kind": "fsa", "alphabet": ["0", "1"], "states": ["s", "f"],
     "start": ["s"], "final": ["f"], "delta": [["s", "1", "f"], ...]}

Field elements are strings so that rationals stay exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import FormatError
from .field import GF2, RATIONAL, Field
from .fsa import Fsa
from .wautomaton import WeightedAutomaton


def field_to_json(f: Field):
    if f.p is None:
        return "rational"
    return "gf2" if f.p == 2 else {"gfp": f.p}


def field_from_json(x, where="$.field") -> Field:
    if x == "gf2":
        return GF2
    if x == "rational":
        return RATIONAL
    if isinstance(x, dict) and set(x) == {"gfp"} and isinstance(x["gfp"], int):
        try:
            return Field(x["gfp"])
        except ValueError as e:
            raise FormatError(str(e), where) from None
    raise FormatError(f'expected "gf2", "rational" or {{"gfp": p}}, got {json.dumps(x)}', where)


def _element(f: Field, x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FormatError(f"field element must be a string like \"3\" or \"1/2\", got {json.dumps(x)}", where)
    try:
        return f.coerce(Fraction(x) if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad field element {x!r}: {e}", where) from None


def _vector(f, xs, n, where):
    if not isinstance(xs, list) or len(xs) != n:
        raise FormatError(f"expected a list of {n} elements", where)
    return [_element(f, x, f"{where}[{i}]") for i, x in enumerate(xs)]


def _require(doc, key, where="$"):
    if key not in doc:
        raise FormatError(f"missing key {key!r}", where)
    return doc[key]


def _alphabet(doc):
    al = _require(doc, "alphabet")
    if not isinstance(al, list) or not all(isinstance(a, str) and a for a in al):
        raise FormatError("alphabet must be a list of non-empty strings", "$.alphabet")
    if len(set(al)) != len(al):
        raise FormatError("alphabet symbols must be distinct", "$.alphabet")
    return al


def automaton_from_json(doc):
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object", "$")
    kind = _require(doc, "kind")
    if kind == "wa":
        return _wa_from_json(doc)
    if kind == "fsa":
        return _fsa_from_json(doc)
    raise FormatError(f'kind must be "wa" or "fsa", got {json.dumps(kind)}', "$.kind")


def _wa_from_json(doc) -> WeightedAutomaton:
    f = field_from_json(_require(doc, "field"))
    al = _alphabet(doc)
    n = _require(doc, "dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("dim must be a non-negative integer", "$.dim")
    alpha = _vector(f, _require(doc, "alpha"), n, "$.alpha")
    omega = _vector(f, _require(doc, "omega"), n, "$.omega")
    trans_doc = _require(doc, "transitions")
    if not isinstance(trans_doc, dict):
        raise FormatError("transitions must map symbols to matrices", "$.transitions")
    trans = {}
    for a in al:
        where = f"$.transitions.{a}"
        if a not in trans_doc:
            raise FormatError(f"no matrix for symbol {a!r}", "$.transitions")
        rows = trans_doc[a]
        if not isinstance(rows, list) or len(rows) != n:
            raise FormatError(f"expected {n} rows", where)
        trans[a] = [_vector(f, r, n, f"{where}[{i}]") for i, r in enumerate(rows)]
    extra = sorted(set(trans_doc) - set(al))
    if extra:
        raise FormatError(f"matrices for symbols outside the alphabet: {extra}", "$.transitions")
    return WeightedAutomaton(f, al, alpha, omega, trans)


def _fsa_from_json(doc) -> Fsa:
    al = _alphabet(doc)
    states = _require(doc, "states")
    if not isinstance(states, list) or not all(isinstance(q, str) for q in states) or len(set(states)) != len(states):
        raise FormatError("states must be a list of distinct strings", "$.states")
    qs = set(states)
    sets = {}
    for key in ("start", "final"):
        xs = _require(doc, key)
        if not isinstance(xs, list):
            raise FormatError("expected a list of state names", f"$.{key}")
        for i, q in enumerate(xs):
            if q not in qs:
                raise FormatError(f"unknown state {json.dumps(q)}", f"$.{key}[{i}]")
        sets[key] = xs
    triples = _require(doc, "delta")
    if not isinstance(triples, list):
        raise FormatError("delta must be a list of [state, symbol, state] triples", "$.delta")
    for i, t in enumerate(triples):
        where = f"$.delta[{i}]"
        if not isinstance(t, list) or len(t) != 3:
            raise FormatError("expected [state, symbol, state]", where)
        if t[0] not in qs or t[2] not in qs:
            raise FormatError(f"unknown state in {json.dumps(t)}", where)
        if t[1] not in al:
            raise FormatError(f"unknown symbol {json.dumps(t[1])}", where)
    return Fsa.from_triples(states, al, triples, sets["start"], sets["final"])


def automaton_to_json(a) -> dict:
    if isinstance(a, WeightedAutomaton):
        fmt = a.field.format
        return {
            "kind": "wa",
            "field": field_to_json(a.field),
            "alphabet": list(a.alphabet),
            "dim": a.dim,
            "alpha": [fmt(x) for x in a.alpha],
            "omega": [fmt(x) for x in a.omega],
            "transitions": {s: [[fmt(x) for x in row] for row in a.transitions[s].data] for s in a.alphabet},
        }
    if isinstance(a, Fsa):
        return {
            "kind": "fsa",
            "alphabet": list(a.alphabet),
            "states": list(a.states),
            "start": [q for q in a.states if q in a.start],
            "final": [q for q in a.states if q in a.final],
            "delta": [list(t) for t in a.triples()],
        }
    raise TypeError(f"cannot serialize {type(a).__name__}")


def dumps(a) -> str:
    return json.dumps(automaton_to_json(a), indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, f"line {e.lineno} column {e.colno}") from None
    return automaton_from_json(doc)


def load(path) -> WeightedAutomaton | Fsa:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(e.strerror or str(e), str(path)) from None
    try:
        return loads(text)
    except FormatError as e:
        raise FormatError(str(e), str(path)) from None


def save(a, path):
    Path(path).write_text(dumps(a), encoding="utf-8")
