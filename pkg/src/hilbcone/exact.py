"""Exact rational scalars, vectors and dense matrices.

Everything downstream of this module computes over arbitrary-precision
rationals; no operation here ever constructs a float.  Scalars are
``fractions.Fraction`` values (always in lowest terms, positive
denominator), vectors and matrices are immutable and hashable, and
elimination is fraction-free (Bareiss) so intermediate values stay
integral whenever the input is integral.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, SingularMatrixError

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction, rejecting floats outright."""
    if isinstance(value, bool) or isinstance(value, (float, complex)):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse the serialized form ``"p/q"`` or ``"p"`` (no whitespace)."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational literal {text!r}")
    return Fraction(text)


def rational_to_str(value: Fraction) -> str:
    """Serialize with the sign on the numerator and no ``/1`` suffix."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class QVector:
    """Immutable vector of rationals with a fixed length."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable):
        self._entries = tuple(as_rational(e) for e in entries)
        if not self._entries:
            raise DimensionError("vectors must have positive length")

    @property
    def entries(self):
        return self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __getitem__(self, i):
        return self._entries[i]

    def __eq__(self, other):
        return isinstance(other, QVector) and self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return "QVector([" + ", ".join(rational_to_str(e) for e in self) + "])"

    def __add__(self, other):
        self._check_len(other)
        return QVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check_len(other)
        return QVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return QVector(-a for a in self)

    def scale(self, c) -> "QVector":
        c = as_rational(c)
        return QVector(c * a for a in self)

    def dot(self, other) -> Fraction:
        self._check_len(other)
        return sum((a * b for a, b in zip(self, other)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def _check_len(self, other):
        if len(self) != len(other):
            raise DimensionError(f"length mismatch: {len(self)} vs {len(other)}")

    @staticmethod
    def zero(n: int) -> "QVector":
        return QVector([0] * n)

    @staticmethod
    def unit(n: int, i: int) -> "QVector":
        return QVector([1 if j == i else 0 for j in range(n)])

    def to_strings(self):
        return [rational_to_str(e) for e in self]


class QMatrix:
    """Immutable dense matrix of rationals (row-major)."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Sequence[Sequence]):
        grid = tuple(tuple(as_rational(e) for e in row) for row in rows)
        if not grid or not grid[0]:
            raise DimensionError("matrices must have positive dimensions")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise DimensionError("ragged rows in matrix literal")
        self._rows = grid
        self.rows = len(grid)
        self.cols = width

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "QMatrix":
        return QMatrix([[0] * cols for _ in range(rows)])

    @staticmethod
    def from_columns(columns: Sequence[Sequence]) -> "QMatrix":
        return QMatrix(columns).transpose()

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def row(self, i: int) -> QVector:
        return QVector(self._rows[i])

    def column(self, j: int) -> QVector:
        return QVector(row[j] for row in self._rows)

    def row_list(self):
        return [list(r) for r in self._rows]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(
            " ".join(rational_to_str(e) for e in row) for row in self._rows
        )
        return f"QMatrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in matrix addition")
        return QMatrix(
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self._rows, other._rows)
        )

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in matrix subtraction")
        return QMatrix(
            [a - b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self._rows, other._rows)
        )

    def scale(self, c) -> "QMatrix":
        c = as_rational(c)
        return QMatrix([c * e for e in row] for row in self._rows)

    def __matmul__(self, other):
        if isinstance(other, QVector):
            if self.cols != len(other):
                raise DimensionError(
                    f"cannot apply {self.rows}x{self.cols} to length-{len(other)}"
                )
            return QVector(QVector(row).dot(other) for row in self._rows)
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = [other.column(j) for j in range(other.cols)]
        return QMatrix(
            [QVector(row).dot(col) for col in cols] for row in self._rows
        )

    def transpose(self) -> "QMatrix":
        return QMatrix(
            [self._rows[i][j] for i in range(self.rows)] for j in range(self.cols)
        )

    def apply_to_vector(self, v: QVector) -> QVector:
        return self @ v

    # -- elimination-backed queries ------------------------------------

    def _integerized(self):
        """Clear denominators row by row; rank and row space are unchanged."""
        out = []
        for row in self._rows:
            scale = math.lcm(*(e.denominator for e in row))
            out.append([int(e * scale) for e in row])
        return out

    def rank(self) -> int:
        """Exact rank via fraction-free (Bareiss) elimination."""
        m = self._integerized()
        nrows, ncols = self.rows, self.cols
        prev_pivot = 1
        r = 0
        for c in range(ncols):
            pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            for i in range(r + 1, nrows):
                for j in range(c + 1, ncols):
                    m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev_pivot
                m[i][c] = 0
            prev_pivot = m[r][c]
            r += 1
            if r == nrows:
                break
        return r

    def solve_matrix(self, rhs: "QMatrix") -> "QMatrix":
        """Solve ``self @ X = rhs`` exactly for a square nonsingular matrix.

        Forward elimination is fraction-free on the integerized augmented
        system; back substitution divides out exactly.
        """
        if self.rows != self.cols:
            raise DimensionError("solve requires a square matrix")
        if rhs.rows != self.rows:
            raise DimensionError("right-hand side has wrong height")
        n = self.rows
        width = rhs.cols
        aug = []
        for i in range(n):
            row = list(self._rows[i]) + list(rhs._rows[i])
            scale = math.lcm(*(e.denominator for e in row))
            aug.append([int(e * scale) for e in row])

        prev_pivot = 1
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if pivot_row is None:
                raise SingularMatrixError("matrix is singular", self.rank())
            aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
            for i in range(c + 1, n):
                for j in range(c + 1, n + width):
                    aug[i][j] = (
                        aug[c][c] * aug[i][j] - aug[i][c] * aug[c][j]
                    ) // prev_pivot
                aug[i][c] = 0
            prev_pivot = aug[c][c]

        solution = [[Fraction(0)] * width for _ in range(n)]
        for k in range(width):
            for i in range(n - 1, -1, -1):
                acc = Fraction(aug[i][n + k])
                for j in range(i + 1, n):
                    acc -= aug[i][j] * solution[j][k]
                solution[i][k] = acc / aug[i][i]
        return QMatrix(solution)

    def solve(self, b: QVector) -> QVector:
        """Solve ``self @ x = b`` exactly."""
        if len(b) != self.rows:
            raise DimensionError("right-hand side has wrong length")
        col = self.solve_matrix(QMatrix([[e] for e in b]))
        return col.column(0)

    def inverse(self) -> "QMatrix":
        """Exact inverse; raises SingularMatrixError (with rank) otherwise."""
        return self.solve_matrix(QMatrix.identity(self.rows))

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self._rows[i][j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def to_strings(self):
        return [[rational_to_str(e) for e in row] for row in self._rows]
