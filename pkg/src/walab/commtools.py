"""Exact communication-complexity quantities for small 0/1 matrices.

Everything here is brute force and meant for matrices of side at most 8
(rectangle searches) or 64 one-entries (cover search).  Bounds are returned as
exact :class:`~fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import LengthMismatch, TooLarge
from .hankel import restricted_hankel

MAX_DISC_SIDE = 8
MAX_COVER_ONES = 64


def inner_product(x: str, y: str) -> int:
    """``sum x_i y_i mod 2`` for equal-length bit strings."""
    if len(x) != len(y):
        raise LengthMismatch(f"bit strings of lengths {len(x)} and {len(y)}")
    return sum(1 for a, b in zip(x, y) if a == "1" and b == "1") % 2


def ones_count(n: int) -> int:
    """Number of pairs in ``{0,1}^n x {0,1}^n`` with inner product 1, by enumeration.

    Raises ``AssertionError`` if it disagrees with ``2^(n-1) (2^n - 1)``.
    """
    bits = ["".join(b) for b in product("01", repeat=n)]
    count = sum(inner_product(x, y) for x in bits for y in bits)
    assert count == ones_closed_form(n), (n, count)
    return count


def ones_closed_form(n: int) -> int:
    return 2 ** (n - 1) * (2**n - 1) if n >= 1 else 0


def as_01(m) -> tuple:
    """Normalize a HankelBlock, Matrix or nested sequence into a tuple of 0/1 rows."""
    if hasattr(m, "entries"):
        m = m.entries
    if hasattr(m, "data"):
        m = m.data
    rows = tuple(tuple(1 if x else 0 for x in row) for row in m)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def ip_matrix(n: int) -> tuple:
    bits = ["".join(b) for b in product("01", repeat=n)]
    return tuple(tuple(inner_product(x, y) for y in bits) for x in bits)


# -- discrepancy ---------------------------------------------------------------


def discrepancy_exact(m) -> Fraction:
    """``max_{A,B} |sum_{A x B} (-1)^m| / (rows * cols)``.

    Exhausts the row subsets ``A`` (of the shorter side); for a fixed ``A`` the
    best ``B`` takes all columns whose signed sum over ``A`` is positive, or all
    that are negative, whichever totals more in absolute value.
    """
    rows = as_01(m)
    if not rows or not rows[0]:
        raise ValueError("empty matrix")
    if len(rows) > len(rows[0]):
        rows = tuple(zip(*rows))
    r, c = len(rows), len(rows[0])
    if r > MAX_DISC_SIDE:
        raise TooLarge(f"discrepancy search over 2^{r} row subsets is capped at side {MAX_DISC_SIDE}")
    signs = [[1 - 2 * x for x in row] for row in rows]
    best = 0
    for mask in range(1, 1 << r):
        col = [0] * c
        for i in range(r):
            if mask >> i & 1:
                for j, s in enumerate(signs[i]):
                    col[j] += s
        pos = sum(x for x in col if x > 0)
        neg = -sum(x for x in col if x < 0)
        best = max(best, pos, neg)
    return Fraction(best, r * c)


# -- rectangle covers ----------------------------------------------------------


@dataclass(frozen=True)
class BoolRect:
    rowset: tuple
    colset: tuple

    def __bool__(self):
        return bool(self.rowset) and bool(self.colset)

    def size(self) -> int:
        return len(self.rowset) * len(self.colset)


def is_one_monochromatic(m, rect: BoolRect) -> bool:
    rows = as_01(m)
    return all(rows[i][j] for i in rect.rowset for j in rect.colset)


def maximal_rectangles(m) -> list[BoolRect]:
    """All maximal 1-monochromatic rectangles, ordered by rowset then colset.

    Column sets of maximal rectangles are exactly the nonempty intersections of
    row supports; the rowset is every row whose support contains it.
    """
    rows = as_01(m)
    supports = [frozenset(j for j, x in enumerate(row) if x) for row in rows]
    closed = {s for s in supports if s}
    frontier = set(closed)
    while frontier:
        new = set()
        for b in frontier:
            for s in supports:
                cut = b & s
                if cut and cut not in closed:
                    new.add(cut)
        closed |= new
        frontier = new
    rects = []
    for b in closed:
        a = tuple(i for i, s in enumerate(supports) if b <= s)
        rects.append(BoolRect(a, tuple(sorted(b))))
    rects.sort(key=lambda r: (r.rowset, r.colset))
    return rects


def chi1_cover(m) -> list[BoolRect]:
    """A minimum cover of the 1-entries by 1-monochromatic rectangles.

    Branch and bound over maximal rectangles: always branch on the
    lowest-index uncovered one, trying rectangles that cover most of what is
    still uncovered first (ties by rowset), and prune with
    ``|uncovered| / largest rectangle``.
    """
    rows = as_01(m)
    ones = [(i, j) for i, row in enumerate(rows) for j, x in enumerate(row) if x]
    if len(ones) > MAX_COVER_ONES:
        raise TooLarge(f"{len(ones)} one-entries; exact cover search is capped at {MAX_COVER_ONES}")
    if not ones:
        return []
    index = {e: k for k, e in enumerate(ones)}
    rects = maximal_rectangles(rows)
    masks = []
    for r in rects:
        mask = 0
        for i in r.rowset:
            for j in r.colset:
                mask |= 1 << index[(i, j)]
        masks.append(mask)
    by_one = [[k for k, mk in enumerate(masks) if mk >> e & 1] for e in range(len(ones))]
    biggest = max(bin(mk).count("1") for mk in masks)
    full = (1 << len(ones)) - 1

    best: list = [list(range(len(rects)))]  # trivially a cover

    def search(uncovered: int, chosen: list):
        if not uncovered:
            if len(chosen) < len(best[0]):
                best[0] = list(chosen)
            return
        left = bin(uncovered).count("1")
        if len(chosen) + -(-left // biggest) >= len(best[0]):
            return
        low = (uncovered & -uncovered).bit_length() - 1
        options = sorted(by_one[low], key=lambda k: (-bin(masks[k] & uncovered).count("1"), k))
        for k in options:
            chosen.append(k)
            search(uncovered & ~masks[k], chosen)
            chosen.pop()

    search(full, [])
    return [rects[k] for k in sorted(best[0])]


def chi1_exact(m) -> int:
    return len(chi1_cover(m))


def chi1_lower_bound(m) -> Fraction:
    """``|ones| / (rows * cols * disc)``: the discrepancy bound on the cover number."""
    rows = as_01(m)
    ones = sum(map(sum, rows))
    total = len(rows) * len(rows[0])
    return Fraction(ones, 1) / (total * discrepancy_exact(rows))


def ip_closed_form(n: int) -> Fraction:
    """``2^(n/2 - 2)`` when ``n`` is even, else the rational ``2^((n-1)/2 - 2)`` below it."""
    return Fraction(2) ** (n // 2 - 2)


def ip_disc_upper(n: int) -> Fraction:
    """Rational upper bound on ``disc`` of the ``n``-bit inner product: ``2^(-n/2)``, rounded up for odd ``n``."""
    return Fraction(1, 2 ** (n // 2))


@dataclass(frozen=True)
class BoundRow:
    """One line of the bounds table; ``None`` marks an entry too costly to compute."""

    name: str
    n: int
    ones: int
    disc: Fraction | None
    disc_bound: Fraction | None
    disc_bound_from_upper: bool
    chi1: int | None
    closed_form: Fraction | None

    @property
    def bound(self) -> Fraction:
        vals = [v for v in (self.disc_bound, self.closed_form) if v is not None]
        return max(vals) if vals else Fraction(0)


def _is_ip(o) -> bool:
    return getattr(o, "family", None) == "ip"


def bound_row(o, n: int, with_chi1: bool = False) -> BoundRow:
    """Compute the NFA lower-bound evidence for oracle ``o`` at length ``n``.

    The exact cover number is only attempted when ``with_chi1`` is set.  For inner-product oracles whose block is too big
    for the exact discrepancy, the discrepancy bound is computed from the known
    discrepancy upper bound instead (``disc_bound_from_upper``).
    """
    block = restricted_hankel(o, n)
    rows = as_01(block)
    ones = sum(map(sum, rows))
    side = min(len(rows), len(rows[0]))
    total = len(rows) * len(rows[0])
    disc = disc_bound = None
    from_upper = False
    if side <= MAX_DISC_SIDE:
        disc = discrepancy_exact(rows)
        disc_bound = Fraction(ones) / (total * disc)
    elif _is_ip(o):
        disc_bound = Fraction(ones) / (total * ip_disc_upper(n))
        from_upper = True
    chi1 = chi1_exact(rows) if with_chi1 else None
    closed = ip_closed_form(n) if _is_ip(o) else None
    return BoundRow(o.name, n, ones, disc, disc_bound, from_upper, chi1, closed)


def nfa_size_lower_bound(o, n: int) -> Fraction:
    """Lower bound on the states of any NFA for ``o``'s language, from its length-``n`` block."""
    return bound_row(o, n).bound


def fmt_fraction(x: Fraction | None, digits: int = 6) -> str:
    if x is None:
        return "n/a"
    exact = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    q = round(x * 10**digits)
    return f"{exact} ({q // 10**digits}.{q % 10**digits:0{digits}d})"


BOUNDS_HEADER = "fn\tn\tones\tdisc\tdisc_bound\tchi1\tclosed_form"


def format_bound_row(row: BoundRow) -> str:
    db = fmt_fraction(row.disc_bound)
    if row.disc_bound_from_upper:
        db += " [disc<=2^(-n/2)]"
    closed = fmt_fraction(row.closed_form)
    if row.closed_form is not None and row.closed_form < 1:
        closed += " [vacuous<1]"
    chi1 = "n/a" if row.chi1 is None else str(row.chi1)
    return "\t".join([row.name, str(row.n), str(row.ones), fmt_fraction(row.disc), db, chi1, closed])
