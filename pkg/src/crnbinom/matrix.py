"""Labeled dense matrices over the rationals and Gauss-Jordan elimination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .polynomial import Polynomial


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable row-major matrix of ``Fraction`` entries.

    ``row_labels`` name the generators, ``col_labels`` the columns
    (reaction binomials or irreversible flux terms).
    """

    entries: tuple[tuple[Fraction, ...], ...]
    n_cols: int
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.row_labels) != len(self.entries):
            raise DimensionError("row label count does not match row count")
        if len(self.col_labels) != self.n_cols:
            raise DimensionError("column label count does not match column count")
        if any(len(row) != self.n_cols for row in self.entries):
            raise DimensionError("ragged matrix")

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence],
        row_labels: Optional[Sequence[str]] = None,
        col_labels: Optional[Sequence[str]] = None,
        n_cols: Optional[int] = None,
    ) -> "RationalMatrix":
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if n_cols is None:
            n_cols = len(entries[0]) if entries else (len(col_labels) if col_labels is not None else 0)
        if row_labels is None:
            row_labels = [f"p{i + 1}" for i in range(len(entries))]
        if col_labels is None:
            col_labels = [f"c{j + 1}" for j in range(n_cols)]
        return cls(entries, n_cols, tuple(row_labels), tuple(col_labels))

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "RationalMatrix":
        cols = [tuple(self.entries[i][j] for i in range(self.n_rows)) for j in range(self.n_cols)]
        return RationalMatrix(tuple(cols), self.n_rows, self.col_labels, self.row_labels)

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.n_cols != other.n_rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for row in self.entries:
            acc = [Fraction(0)] * other.n_cols
            for a, orow in zip(row, other.entries):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return RationalMatrix(tuple(out), other.n_cols, self.row_labels, other.col_labels)

    def to_lists(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

    def render(self) -> str:
        """Aligned text table with labels and exact fractions."""
        header = [""] + list(self.col_labels)
        body = [[lab] + [str(x) for x in row] for lab, row in zip(self.row_labels, self.entries)]
        table = [header] + body
        widths = [max(len(r[j]) for r in table) for j in range(len(header))]
        return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in table)


@dataclass(frozen=True)
class RrefResult:
    matrix: RationalMatrix
    rank: int
    pivot_cols: tuple[int, ...]
    transform: Optional[RationalMatrix] = None  # E with E @ original == matrix


def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rref(m: RationalMatrix, with_transform: bool = False) -> RrefResult:
    """Reduced row echelon form by exact Gauss-Jordan elimination.

    Columns are scanned left to right; the pivot is the first nonzero entry
    at or below the current row.  With ``with_transform`` the invertible
    matrix ``E`` recording the row operations is returned as well.
    """
    a = [list(row) for row in m.entries]
    n_rows, n_cols = m.n_rows, m.n_cols
    e = _identity(n_rows) if with_transform else None
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
            if e is not None:
                e[p], e[r] = e[r], e[p]
        prow = a[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(c, n_cols):
                if prow[j]:
                    prow[j] *= inv
            if e is not None:
                e[r] = [x * inv for x in e[r]]
        nz = [j for j in range(c, n_cols) if prow[j]]
        enz = [j for j, x in enumerate(e[r]) if x] if e is not None else ()
        for i in range(n_rows):
            f = a[i][c]
            if i == r or not f:
                continue
            row = a[i]
            for j in nz:
                row[j] -= f * prow[j]
            if e is not None:
                erow, epiv = e[i], e[r]
                for j in enz:
                    erow[j] -= f * epiv[j]
        pivots.append(c)
        r += 1
    out = RationalMatrix(tuple(tuple(row) for row in a), n_cols, m.row_labels, m.col_labels)
    transform = None
    if e is not None:
        transform = RationalMatrix(tuple(tuple(row) for row in e), n_rows, m.row_labels, m.row_labels)
    return RrefResult(out, len(pivots), tuple(pivots), transform)


def hstack(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.n_rows != b.n_rows:
        raise DimensionError(f"row counts differ: {a.n_rows} vs {b.n_rows}")
    if a.row_labels != b.row_labels:
        raise DimensionError("row labels differ")
    entries = tuple(ra + rb for ra, rb in zip(a.entries, b.entries))
    return RationalMatrix(entries, a.n_cols + b.n_cols, a.row_labels, a.col_labels + b.col_labels)


def row_support(m: RationalMatrix, row: int) -> list[int]:
    if not 0 <= row < m.n_rows:
        raise IndexError(f"row {row} out of range for {m.n_rows} rows")
    return [j for j, x in enumerate(m.entries[row]) if x]


def combine(result: RrefResult, vector: Sequence[Polynomial]) -> list[Polynomial]:
    """Multiply each nonzero RREF row into a column vector of polynomials."""
    m = result.matrix
    if len(vector) != m.n_cols:
        raise DimensionError(f"{m.n_cols} columns but {len(vector)} polynomials")
    out = []
    for row in m.entries:
        if not any(row):
            continue
        total = None
        for x, poly in zip(row, vector):
            if x:
                term = x * poly
                total = term if total is None else total + term
        out.append(total)
    return out
