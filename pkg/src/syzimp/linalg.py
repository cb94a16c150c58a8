"""Exact dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries.  Internally the
elimination loops rescale rows to integers so the inner arithmetic runs on
Python ints; results are always returned as exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import ShapeError

Vector = tuple  # tuple of Fraction


_ZERO = Fraction(0)


class Matrix:
    """Immutable dense matrix with :class:`Fraction` entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(e if type(e) is Fraction else Fraction(e) for e in entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged rows")
            flat.extend(r)
        return cls(len(rows), cols, flat)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = list(columns)
        for c in columns:
            if len(c) != rows:
                raise ShapeError("ragged columns")
        return cls(rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError("inner dimensions differ")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum((a * b for a, b in zip(r, c) if a), Fraction(0)) for c in cols)
        return Matrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ShapeError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                     for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}, {self.cols}, {self.to_rows()!r})"


def _integer_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [e if type(e) is Fraction else Fraction(e) for e in r]
        den = 1
        for e in r:
            if e.denominator != 1:
                den = lcm(den, e.denominator)
        if den == 1:
            out.append([e.numerator for e in r])
        else:
            out.append([e.numerator * (den // e.denominator) for e in r])
    return out


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for e in row:
        if e:
            g = gcd(g, e)
            if g == 1:
                return row
    if g > 1:
        return [e // g for e in row]
    return row


def _echelon(rows: list[list[int]], ncols: int, reduced: bool) -> tuple[list[list[int]], list[int]]:
    """Fraction-free elimination on integer rows.

    Returns echelon rows (only the nonzero ones, each with its pivot entry
    positive) and the pivot columns.  With ``reduced`` every pivot column is
    also cleared above its pivot.
    """
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        if prow[c] < 0:
            prow = [-e for e in prow]
        prow = _primitive(prow)
        rows[r] = prow
        pv = prow[c]
        targets = range(nrows) if reduced else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            g = gcd(pv, f)
            a, b = pv // g, f // g
            rows[i] = _primitive([a * x - b * y for x, y in zip(row, prow)])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form of ``m`` and its pivot columns.

    Pivots are chosen leftmost-column first, topmost nonzero row first, so
    the result is unique and reproducible.

    >>> rref(Matrix.from_rows([[1, 1], [1, 1]]))[1]
    [0]
    """
    rows, pivots = _echelon(_integer_rows(m.to_rows()), m.cols, reduced=True)
    out = []
    for row, c in zip(rows, pivots):
        pv = row[c]
        out.extend(Fraction(e, pv) if e else _ZERO for e in row)
    out.extend([_ZERO] * ((m.rows - len(rows)) * m.cols))
    return Matrix(m.rows, m.cols, out), pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_echelon(_integer_rows(m.to_rows()), m.cols, reduced=False)[1])


def rank_of_vectors(vectors: Sequence[Sequence], dim: int) -> int:
    """Rank of the span of ``vectors``, each of length ``dim``."""
    vectors = [v for v in vectors]
    if not vectors:
        return 0
    return len(_echelon(_integer_rows(vectors), dim, reduced=False)[1])


def kernel_basis(m: Matrix) -> list[Vector]:
    """Canonical basis of the right kernel of ``m``.

    One vector per free column of the rref, in ascending free-column order,
    with that free coordinate set to 1.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r, f]
        basis.append(tuple(v))
    return basis


def left_kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of ``{y : y^T m = 0}``: linear functionals vanishing on the column span."""
    return kernel_basis(m.transpose())


def row_space_basis(vectors: Sequence[Sequence], dim: int) -> list[Vector]:
    """Reduced echelon basis of the span of ``vectors``."""
    if not vectors:
        return []
    red, pivots = rref(Matrix.from_rows(vectors, dim))
    return [red.row(i) for i in range(len(pivots))]


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """A particular solution of ``m x = b``, or ``None`` when inconsistent.

    Free variables are set to zero, so the answer is the canonical rref
    particular solution.
    """
    if len(b) != m.rows:
        raise ShapeError("right-hand side length does not match row count")
    aug = Matrix(m.rows, m.cols + 1, [e for i in range(m.rows) for e in (*m.row(i), b[i])])
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, c in enumerate(pivots):
        x[c] = red[r, m.cols]
    return tuple(x)


def in_span(vectors: Sequence[Sequence], v: Sequence, dim: int) -> bool:
    base = rank_of_vectors(vectors, dim)
    return rank_of_vectors([*vectors, v], dim) == base


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination.

    Rows are first scaled to integers; the pivot is the topmost nonzero entry
    in the current column and each row swap flips the sign.
    """
    if m.rows != m.cols:
        raise ShapeError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = 1
    rows = []
    for r in m.to_rows():
        den = 1
        for e in r:
            den = lcm(den, e.denominator)
        scale *= den
        rows.append([int(e * den) for e in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not rows[k][k]:
            p = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if p is None:
                return Fraction(0)
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pk = rows[k]
        pv = pk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pv * ri[j] - f * pk[j]) // prev
            ri[k] = 0
        prev = pv
    return Fraction(sign * rows[n - 1][n - 1], scale)
