"""Words over explicit ordered alphabets.

A word is a tuple of symbols; the empty tuple is the empty word.  Strings are
accepted wherever every symbol is a single character.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

Word = tuple

EPSILON: Word = ()


def as_word(w) -> Word:
    return tuple(w)


def show(w: Word, sep: str = "") -> str:
    """Printable form; the empty word prints as ``ε``."""
    return sep.join(w) if w else "ε"


def words_of_length(alphabet: Sequence[str], n: int) -> list[Word]:
    """All words of length ``n`` in lexicographic order of ``alphabet``."""
    return list(product(alphabet, repeat=n))


def words_up_to(alphabet: Sequence[str], n: int) -> Iterator[Word]:
    """All words of length ``<= n`` in length-lexicographic order."""
    for k in range(n + 1):
        yield from product(alphabet, repeat=k)


def length_lex_key(alphabet: Sequence[str]):
    rank = {a: i for i, a in enumerate(alphabet)}
    return lambda w: (len(w), [rank[a] for a in w])


def sort_words(words: Iterable[Word], alphabet: Sequence[str]) -> list[Word]:
    return sorted(words, key=length_lex_key(alphabet))
