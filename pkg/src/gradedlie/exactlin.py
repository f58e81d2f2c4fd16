"""Exact rational scalars and linear algebra.

Everything here works over the rationals.  Scalars are
:class:`fractions.Fraction` values, which are always stored reduced
with a positive denominator.  Two elimination routes are provided:

* a dense ``Fraction`` reduced-row-echelon routine used for kernels
  and solving, where the actual rational coordinates matter, and
* :class:`Span`, an incremental fraction-free echelon basis over the
  integers, used wherever only the span (and hence the dimension) of a
  set of vectors is needed.  Rational vectors are rescaled to primitive
  integer vectors before insertion, which leaves the span unchanged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

Scalar = Fraction
Vector = tuple  # tuple of Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                n, d = int(num), int(den)
                if d == 0:
                    raise InputError(f"zero denominator in {value!r}")
                return Fraction(n, d)
            return Fraction(int(num))
        except ValueError:
            raise InputError(f"not a rational number: {value!r}") from None
    raise InputError(f"not a rational number: {value!r}")


def format_scalar(q: Fraction) -> str:
    """Print ``q`` as ``"p"`` or ``"p/q"`` (reduced)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> tuple:
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> tuple:
    """The 1-based ``i``-th standard basis vector of length ``n``."""
    if not 1 <= i <= n:
        raise InputError(f"basis index {i} outside 1..{n}")
    return tuple(ONE if k == i - 1 else ZERO for k in range(n))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def primitive(v: Sequence) -> list[int]:
    """Smallest integer multiple of the rational vector ``v`` (first nonzero positive)."""
    dens = [x.denominator for x in v if x]
    if not dens:
        return [0] * len(v)
    lcm = math.lcm(*dens)
    ints = [int(x * lcm) for x in v]
    return _normalise(ints)


def _normalise(row: list[int]) -> list[int]:
    g = 0
    lead = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if not lead:
                lead = x
    if g == 0:
        return row
    if lead < 0:
        g = -g
    if g != 1:
        row = [x // g for x in row]
    return row


class Span:
    """Incrementally grown subspace of Q^n held as an integer echelon basis.

    Each stored row is a primitive integer vector whose first nonzero
    entry (its pivot) is positive and distinct from every other row's
    pivot.
    """

    __slots__ = ("n", "_rows")

    def __init__(self, n: int, vectors: Iterable[Sequence] = ()):
        self.n = n
        self._rows: dict[int, list[int]] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, row: list[int]) -> list[int]:
        for p in sorted(self._rows):
            x = row[p]
            if x:
                basis = self._rows[p]
                b = basis[p]
                g = math.gcd(x, b)
                f, h = b // g, x // g
                row = [f * r - h * s for r, s in zip(row, basis)]
        return row

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True when the dimension grew."""
        row = self._as_int(v)
        row = self._reduce(row)
        for i, x in enumerate(row):
            if x:
                self._rows[i] = _normalise(row)
                return True
        return False

    def add_int(self, row: list[int]) -> bool:
        """Like :meth:`add` for a vector that is already a list of ints."""
        row = self._reduce(row)
        for i, x in enumerate(row):
            if x:
                self._rows[i] = _normalise(row)
                return True
        return False

    def contains(self, v: Sequence) -> bool:
        return not any(self._reduce(self._as_int(v)))

    def rows(self) -> list[list[int]]:
        """Integer basis rows, ordered by ascending pivot."""
        return [self._rows[p] for p in sorted(self._rows)]

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[tuple]:
        """Reduced-row-echelon basis as Fraction tuples, pivots ascending."""
        return [tuple(r) for r in rref([[Fraction(x) for x in row] for row in self.rows()])[0]]

    def copy(self) -> "Span":
        other = Span(self.n)
        other._rows = dict(self._rows)
        return other

    def _as_int(self, v: Sequence) -> list[int]:
        if len(v) != self.n:
            raise InputError(f"vector of length {len(v)} in a space of dimension {self.n}")
        if all(type(x) is int for x in v):
            return list(v)
        return primitive([scalar(x) for x in v])


@dataclass(frozen=True)
class Mat:
    """Dense immutable matrix of Fractions."""

    rows: tuple
    nrows: int
    ncols: int

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise InputError("inconsistent matrix dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "Mat":
        data = tuple(tuple(scalar(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(data, len(data), ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Mat":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        rows = [[scalar(c[i]) for c in cols] for i in range(nrows)]
        return cls(tuple(tuple(r) for r in rows), nrows, len(cols))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls(tuple((ZERO,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(tuple(unit_vector(n, i + 1) for i in range(n)), n, n)

    @classmethod
    def diagonal(cls, values: Sequence) -> "Mat":
        n = len(values)
        return cls(
            tuple(tuple(scalar(values[i]) if i == j else ZERO for j in range(n)) for i in range(n)),
            n,
            n,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Mat":
        return Mat(tuple(self.column(j) for j in range(self.ncols)), self.ncols, self.nrows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise InputError(f"vector of length {len(v)} for a matrix with {self.ncols} columns")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise InputError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.ncols)]
            rows = tuple(
                tuple(sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in cols)
                for r in self.rows
            )
            return Mat(rows, self.nrows, other.ncols)
        return self.apply(other)

    def __pow__(self, k: int) -> "Mat":
        if self.nrows != self.ncols:
            raise InputError("power of a non-square matrix")
        result = Mat.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __neg__(self) -> "Mat":
        return Mat(tuple(tuple(-x for x in r) for r in self.rows), self.nrows, self.ncols)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(nonzero_rows, pivot_columns)``; pivots ascend.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(m: Mat) -> int:
    """Row rank over Q by fraction-free integer elimination."""
    span = Span(m.ncols)
    for row in m.rows:
        if any(row):
            span.add(row)
    return span.dim


def kernel_basis(m: Mat) -> list[tuple]:
    """Basis of the right null space, one vector per free column (ascending)."""
    reduced, pivots = rref(m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(a: Mat, b: Sequence) -> tuple | None:
    """Some ``x`` with ``a @ x == b``, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    if len(b) != a.nrows:
        raise InputError(f"right-hand side of length {len(b)} for {a.nrows} equations")
    aug = [tuple(r) + (scalar(bi),) for r, bi in zip(a.rows, b)]
    reduced, pivots = rref(aug, a.ncols + 1)
    if pivots and pivots[-1] == a.ncols:
        return None
    x = [ZERO] * a.ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[a.ncols]
    return tuple(x)


def inverse(m: Mat) -> Mat:
    if m.nrows != m.ncols:
        raise InputError("inverse of a non-square matrix")
    n = m.nrows
    aug = [tuple(r) + unit_vector(n, i + 1) for i, r in enumerate(m.rows)]
    reduced, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise InputError("matrix is singular")
    return Mat(tuple(tuple(r[n:]) for r in reduced), n, n)


def span_contains(basis: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` lies in the span of ``basis`` (all rational)."""
    n = len(v)
    span = Span(n, basis)
    return span.contains(v)
