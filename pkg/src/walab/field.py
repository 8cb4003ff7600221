"""Exact field arithmetic and dense linear algebra.

Two kinds of field are supported: prime fields GF(p) (GF(2) included) and the
rationals.  Matrices and vectors store *raw* canonical values (``int`` residues
for GF(p), :class:`fractions.Fraction` for the rationals) and carry their
:class:`Field`; :class:`Scalar` is the boxed, operator-friendly element handed
out at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DivisionByZero, FieldMismatch, SingularBasis


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """A prime field GF(p) (``p`` set) or the rationals (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"GF(p) needs a prime p, got {self.p}")

    @classmethod
    def gfp(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def name(self) -> str:
        if self.p is None:
            return "rational"
        return "gf2" if self.p == 2 else f"gf{self.p}"

    def __repr__(self):
        return f"Field({self.name})"

    # raw-value arithmetic; inputs are assumed canonical

    def coerce(self, x):
        """Canonical raw value for an int, Fraction, Scalar or string like "3/7"."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field.name} element used in {self.name}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no value in {self.name}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"inverse of zero in {self.name}")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def dot(self, u: Sequence, v: Sequence):
        s = sum(a * b for a, b in zip(u, v))
        return Fraction(s) if self.p is None else s % self.p

    def format(self, a) -> str:
        return str(a)

    def scalar(self, x) -> "Scalar":
        return Scalar(self.coerce(x), self)

    def elements(self) -> Iterable:
        """All elements of a finite field (in residue order)."""
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return range(self.p)


GF2 = Field(2)
RATIONAL = Field(None)


def GFp(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Scalar:
    value: object
    field: Field

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot mix {self.field.name} and {other.field.name}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return Scalar(self.field.sub(self._other(other), self.value), self.field)

    def __mul__(self, other):
        return Scalar(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field.div(self.value, self._other(other)), self.field)

    def __rtruediv__(self, other):
        return Scalar(self.field.div(self._other(other), self.value), self.field)

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def inv(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.value}, {self.field.name})"


class Matrix:
    """Immutable dense matrix of raw field values, row-major."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Sequence[Sequence], cols: int | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, field, data, cols):
        m = object.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", len(data))
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "data", tuple(tuple(r) for r in data))
        return m

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls._raw(field, [[field.zero] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.data[i][j], self.field)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.field.name}, {[list(map(str, r)) for r in self.data]})"

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, list(zip(*self.data)) if self.rows else [], self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_field(self.field, other.field)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols_t = list(zip(*other.data)) if other.rows else [()] * other.cols
        f = self.field
        return Matrix._raw(f, [[f.dot(r, c) for c in cols_t] for r in self.data], other.cols)

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "Matrix":
        return inverse(self)


def _same_field(a: Field, b: Field):
    if a != b:
        raise FieldMismatch(f"cannot mix {a.name} and {b.name}")


def vec_mat(field: Field, v: Sequence, m: Matrix) -> tuple:
    """Row vector times matrix."""
    n = m.cols
    out = [0] * n
    for vi, row in zip(v, m.data):
        if vi:
            for j, x in enumerate(row):
                if x:
                    out[j] += vi * x
    if field.p is None:
        return tuple(Fraction(x) for x in out)
    return tuple(x % field.p for x in out)


def mat_vec(field: Field, m: Matrix, v: Sequence) -> tuple:
    return tuple(field.dot(row, v) for row in m.data)


# -- elimination ---------------------------------------------------------------


def _gf2_rank(data) -> int:
    # rows packed into ints; pivots keyed by leading bit
    pivots = {}
    for r in data:
        row = int("".join("1" if x else "0" for x in r), 2)
        while row:
            lead = row.bit_length()
            if lead not in pivots:
                pivots[lead] = row
                break
            row ^= pivots[lead]
    return len(pivots)


def row_echelon(m: Matrix):
    """Gaussian elimination with first-nonzero pivoting.

    Returns the reduced row echelon rows (list of lists) and the pivot columns.
    """
    f = m.field
    a = [list(r) for r in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                k = a[i][c]
                a[i] = [f.sub(x, f.mul(k, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.p == 2:
        return _gf2_rank(m.data)
    return len(row_echelon(m)[1])


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise SingularBasis(f"non-square {m.shape} matrix has no inverse")
    n = m.rows
    f = m.field
    aug = Matrix._raw(
        f, [list(row) + [f.one if i == j else f.zero for j in range(n)] for i, row in enumerate(m.data)], 2 * n
    )
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise SingularBasis("basis matrix is not full rank")
    return Matrix._raw(f, [row[n:] for row in red], n)


def solve_rows(basis: Matrix, targets: Matrix) -> Matrix:
    """Return ``T`` with ``T @ basis == targets``.

    ``basis`` must be square and invertible; each target row is expressed as a
    combination of the basis rows.
    """
    _same_field(basis.field, targets.field)
    if basis.rows != basis.cols:
        raise SingularBasis(f"basis must be square, got {basis.shape}")
    if targets.cols != basis.cols:
        raise ValueError("targets and basis differ in column count")
    return targets @ inverse(basis)


class EchelonSpan:
    """Incrementally maintained span of row vectors.

    ``add`` reduces a vector against the current basis and keeps it when it is
    independent; used for reachability spans (zeroness, minimization).
    """

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self._reduced = []  # (pivot column, normalized reduced row)
        self.vectors = []  # original vectors, in insertion order

    def __len__(self):
        return len(self.vectors)

    def reduce(self, v):
        f = self.field
        v = list(v)
        for c, row in self._reduced:
            if v[c]:
                k = v[c]
                v = [f.sub(x, f.mul(k, y)) for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        red = self.reduce(v)
        c = next((i for i, x in enumerate(red) if x), None)
        if c is None:
            return False
        inv = self.field.inv(red[c])
        self._reduced.append((c, [self.field.mul(inv, x) for x in red]))
        self.vectors.append(tuple(v))
        return True


def coordinates(field: Field, basis_rows: Sequence[Sequence], targets: Sequence[Sequence]) -> list:
    """Coordinates of each target row in terms of independent ``basis_rows``.

    The basis may be rectangular (k x n with k <= n); targets must lie in its
    row space.  A k x k invertible column selection reduces this to
    :func:`solve_rows`.
    """
    k = len(basis_rows)
    if k == 0:
        return [[] for _ in targets]
    b = Matrix._raw(field, basis_rows, len(basis_rows[0]))
    _, cols = row_echelon(b)
    if len(cols) != k:
        raise SingularBasis("basis rows are dependent")
    sq = Matrix._raw(field, [[row[c] for c in cols] for row in basis_rows], k)
    tg = Matrix._raw(field, [[row[c] for c in cols] for row in targets], k)
    return [list(r) for r in solve_rows(sq, tg).data]
