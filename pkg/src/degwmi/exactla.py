"""Exact linear algebra over the rationals.

Dense matrices with ``fractions.Fraction`` entries, exact rank, and column
diagonalization with a recorded row-operation log.  Everything here is
deterministic: pivots are chosen by first nonzero entry in column order,
ties broken by smallest row index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction


class DependentColumnsError(ValueError):
    """Raised when a column set expected to be independent is not."""


def parse_scalar(text: str) -> Fraction:
    """Parse a rational literal, either ``p/q`` or the integer shorthand ``p``."""
    return Fraction(text.strip())


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RowOp:
    """One elementary row operation.

    kind ``swap``:   exchange rows ``target`` and ``source``.
    kind ``scale``:  multiply row ``target`` by ``coeff`` (nonzero).
    kind ``addmul``: row ``target`` += ``coeff`` * row ``source``.
    """

    kind: str
    target: int
    source: int = -1
    coeff: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("swap", "scale", "addmul"):
            raise ValueError(f"unknown row op kind {self.kind!r}")
        if self.kind == "scale" and self.coeff == 0:
            raise ValueError("scale coefficient must be nonzero")


RowOpLog = list  # list[RowOp]


class ExactMatrix:
    """Dense matrix over the rationals with bounds-checked access."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: list[list[Fraction]]):
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        data = [[Fraction(x) for x in row] for row in rows]
        n = len(data)
        m = len(data[0]) if data else 0
        if any(len(row) != m for row in data):
            raise ValueError("ragged rows")
        return cls(n, m, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m._data[i][i] = Fraction(1)
        return m

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i},{j}) out of bounds for {self.rows}x{self.cols}")

    def get(self, i: int, j: int) -> Fraction:
        self._check(i, j)
        return self._data[i][j]

    def set(self, i: int, j: int, value) -> None:
        self._check(i, j)
        self._data[i][j] = Fraction(value)

    def row(self, i: int) -> list[Fraction]:
        return list(self._data[i])

    def column(self, j: int) -> list[Fraction]:
        return [self._data[i][j] for i in range(self.rows)]

    def column_support(self, j: int) -> list[int]:
        return [i for i in range(self.rows) if self._data[i][j] != 0]

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "ExactMatrix":
        ri = list(row_idx)
        ci = list(col_idx)
        for i in ri:
            if not 0 <= i < self.rows:
                raise IndexError(f"row {i} out of bounds")
        for j in ci:
            if not 0 <= j < self.cols:
                raise IndexError(f"column {j} out of bounds")
        return ExactMatrix(len(ri), len(ci), [[self._data[i][j] for j in ci] for i in ri])

    def columns(self, col_idx: Iterable[int]) -> "ExactMatrix":
        return self.submatrix(range(self.rows), col_idx)

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [list(row) for row in self._data])

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def apply_op(self, op: RowOp) -> None:
        """Apply one elementary row operation in place."""
        d = self._data
        if op.kind == "swap":
            d[op.target], d[op.source] = d[op.source], d[op.target]
        elif op.kind == "scale":
            d[op.target] = [op.coeff * x for x in d[op.target]]
        else:
            src = d[op.source]
            tgt = d[op.target]
            c = op.coeff
            d[op.target] = [t + c * s for t, s in zip(tgt, src)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in row) for row in self._data)
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"


def apply_rowops(matrix: ExactMatrix, log: Sequence[RowOp]) -> ExactMatrix:
    """Return a new matrix equal to the log's elimination matrix times ``matrix``."""
    out = matrix.copy()
    for op in log:
        out.apply_op(op)
    return out


def rank(matrix: ExactMatrix) -> int:
    """Exact rank over the rationals by Gaussian elimination."""
    work = [list(row) for row in matrix._data]
    n, m = matrix.rows, matrix.cols
    r = 0
    for j in range(m):
        pivot = next((i for i in range(r, n) if work[i][j] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][j]
        for i in range(r + 1, n):
            if work[i][j] != 0:
                f = work[i][j] / pv
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == n:
            break
    return r


def is_x_diagonal(matrix: ExactMatrix, cols: Iterable[int], sigma: dict[int, int]) -> bool:
    """Check that each column in ``cols`` is the unit column with 1 at sigma[col]."""
    for j in cols:
        if j not in sigma:
            return False
        p = sigma[j]
        for i in range(matrix.rows):
            want = Fraction(1) if i == p else Fraction(0)
            if matrix._data[i][j] != want:
                return False
    return True


def x_diagonalize(
    matrix: ExactMatrix,
    cols: Iterable[int],
    sigma: dict[int, int] | None = None,
) -> tuple[ExactMatrix, list[RowOp], dict[int, int]]:
    """Row-reduce so the given columns form a permuted identity pattern.

    ``sigma`` maps columns to preferred pivot rows; existing assignments are
    kept whenever the pivot entry is still nonzero, so repeated calls on an
    evolving matrix disturb as little as possible.  Returns the reduced
    matrix, the operation log, and the total column-to-row map.

    Raises DependentColumnsError if the columns are linearly dependent.
    """
    cols = sorted(set(cols))
    sigma = dict(sigma) if sigma else {}
    work = matrix.copy()
    log: list[RowOp] = []
    assigned: dict[int, int] = {}
    used: set[int] = set()
    reserved = {sigma[j] for j in cols if j in sigma}

    def emit(op: RowOp) -> None:
        work.apply_op(op)
        log.append(op)

    for j in cols:
        pivot = None
        pre = sigma.get(j)
        if pre is not None and pre not in used and work._data[pre][j] != 0:
            pivot = pre
        else:
            if pre is not None:
                reserved.discard(pre)
            pivot = next(
                (
                    i
                    for i in range(work.rows)
                    if i not in used and i not in reserved and work._data[i][j] != 0
                ),
                None,
            )
            if pivot is None:
                # Reserved rows of later columns are a last resort; stealing one
                # forces that column onto a fresh pivot when its turn comes.
                pivot = next(
                    (i for i in range(work.rows) if i not in used and work._data[i][j] != 0),
                    None,
                )
            if pivot is None:
                raise DependentColumnsError(f"column {j} is dependent on earlier pivots")
        reserved.discard(pivot)
        v = work._data[pivot][j]
        if v != 1:
            emit(RowOp("scale", pivot, coeff=Fraction(1) / v))
        for i in range(work.rows):
            if i != pivot and work._data[i][j] != 0:
                emit(RowOp("addmul", i, pivot, -work._data[i][j]))
        assigned[j] = pivot
        used.add(pivot)

    return work, log, assigned
