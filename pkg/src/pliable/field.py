"""Exact linear algebra over prime fields F_q.

Matrices are small and immutable, so they are stored as tuples of int rows.
GF(2) work goes through a bitset path (one Python int per vector); every
other prime uses plain modular Gaussian elimination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldError",
    "Matrix",
    "SpanBasis",
    "is_prime",
    "rank",
    "rank_generic",
    "rank_of_vectors",
    "in_span",
    "row_basis",
]


class FieldError(ValueError):
    """Raised for malformed matrices, non-prime moduli and shape mismatches."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Matrix:
    """A ``rows x cols`` matrix over F_q, row-major, entries in ``[0, q)``."""

    q: int
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_prime(self.q):
            raise FieldError(f"q={self.q} is not prime")
        if len(self.data) != self.rows:
            raise FieldError("row count does not match data")
        for row in self.data:
            if len(row) != self.cols:
                raise FieldError("ragged matrix data")
            for x in row:
                if not 0 <= x < self.q:
                    raise FieldError(f"entry {x} not reduced mod {self.q}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], q: int = 2, cols: int | None = None) -> "Matrix":
        """Build a matrix from nested sequences, reducing entries mod q."""
        data = tuple(tuple(int(x) % q for x in r) for r in rows)
        if cols is None:
            if not data:
                raise FieldError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        return cls(q, len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], q: int = 2, rows: int | None = None) -> "Matrix":
        if rows is None:
            if not columns:
                raise FieldError("rows must be given for a matrix with no columns")
            rows = len(columns[0])
        data = [[int(columns[c][r]) % q for c in range(len(columns))] for r in range(rows)]
        return cls.from_rows(data, q, cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int, q: int = 2) -> "Matrix":
        return cls(q, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int, q: int = 2) -> "Matrix":
        return cls(q, size, size, tuple(tuple(int(r == c) for c in range(size)) for r in range(size)))

    @classmethod
    def from_array(cls, arr, q: int = 2) -> "Matrix":
        arr = np.asarray(arr, dtype=np.int64)
        if arr.ndim != 2:
            raise FieldError("expected a 2-d array")
        return cls.from_rows(arr.tolist(), q, cols=arr.shape[1])

    # -- views ------------------------------------------------------------

    def to_array(self) -> np.ndarray:
        return np.array(self.data, dtype=np.int64).reshape(self.rows, self.cols)

    def column(self, j: int) -> tuple[int, ...]:
        """Column ``j`` (0-based)."""
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        """Submatrix with the given 0-based columns, in the given order."""
        for j in idx:
            if not 0 <= j < self.cols:
                raise FieldError(f"column {j} out of range")
        return Matrix(self.q, self.rows, len(idx), tuple(tuple(row[j] for j in idx) for row in self.data))

    def transpose(self) -> "Matrix":
        return Matrix(self.q, self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if other.q != self.q or other.cols != self.cols:
            raise FieldError("vstack needs equal q and column count")
        return Matrix(self.q, self.rows + other.rows, self.cols, self.data + other.data)

    def hstack(self, other: "Matrix") -> "Matrix":
        if other.q != self.q or other.rows != self.rows:
            raise FieldError("hstack needs equal q and row count")
        data = tuple(a + b for a, b in zip(self.data, other.data))
        return Matrix(self.q, self.rows, self.cols + other.cols, data)

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise FieldError("vector length does not match column count")
        q = self.q
        return tuple(sum(a * b for a, b in zip(row, v)) % q for row in self.data)

    def column_ints(self) -> list[int]:
        """GF(2) only: each column packed into an int, bit k = row k."""
        if self.q != 2:
            raise FieldError("column_ints is defined for q = 2 only")
        out = [0] * self.cols
        for k, row in enumerate(self.data):
            bit = 1 << k
            for j, x in enumerate(row):
                if x:
                    out[j] |= bit
        return out

    # -- JSON -------------------------------------------------------------

    def to_dict(self) -> dict:
        return {"q": self.q, "rows": self.rows, "cols": self.cols, "data": [list(r) for r in self.data]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "Matrix":
        try:
            q, rows, cols, data = int(obj["q"]), int(obj["rows"]), int(obj["cols"]), obj["data"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FieldError(f"bad matrix JSON: {exc}") from None
        for r in data:
            for x in r:
                if not isinstance(x, int) or not 0 <= x < q:
                    raise FieldError(f"matrix entry {x!r} outside [0, {q})")
        return cls(q, rows, cols, tuple(tuple(r) for r in data))

    @classmethod
    def from_json(cls, text: str) -> "Matrix":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# incremental span basis


class SpanBasis:
    """Incrementally built basis of a subspace of F_q^k.

    ``add`` returns True when the vector enlarged the span. For q = 2 vectors
    are ints (bit-packed); otherwise tuples of residues.
    """

    __slots__ = ("q", "_pivots")

    def __init__(self, q: int = 2):
        self.q = q
        # q == 2: {top_bit: vector}; otherwise {pivot_index: normalised row}
        self._pivots: dict = {}

    def __len__(self) -> int:
        return len(self._pivots)

    def copy(self) -> "SpanBasis":
        b = SpanBasis(self.q)
        b._pivots = dict(self._pivots)
        return b

    def reduce(self, v):
        if self.q == 2:
            piv = self._pivots
            while v:
                top = v.bit_length() - 1
                p = piv.get(top)
                if p is None:
                    return v
                v ^= p
            return 0
        q = self.q
        v = list(v)
        for i, row in self._pivots.items():
            c = v[i]
            if c:
                for k in range(i, len(v)):
                    if row[k]:
                        v[k] = (v[k] - c * row[k]) % q
        return v

    def contains(self, v) -> bool:
        r = self.reduce(v)
        return not r if self.q == 2 else not any(r)

    def add(self, v) -> bool:
        r = self.reduce(v)
        if self.q == 2:
            if not r:
                return False
            self._pivots[r.bit_length() - 1] = r
            return True
        lead = next((i for i, x in enumerate(r) if x), None)
        if lead is None:
            return False
        inv = pow(r[lead], -1, self.q)
        r = [(x * inv) % self.q for x in r]
        # keep existing pivot rows reduced at the new pivot so reduce() stays one pass
        for i, row in list(self._pivots.items()):
            c = row[lead]
            if c:
                self._pivots[i] = [(a - c * b) % self.q for a, b in zip(row, r)]
        self._pivots[lead] = r
        return True


def rank_of_vectors(vectors: Iterable, q: int = 2) -> int:
    """Dimension of the span of ``vectors`` (ints for q = 2, sequences otherwise)."""
    basis = SpanBasis(q)
    for v in vectors:
        basis.add(v)
    return len(basis)


# ---------------------------------------------------------------------------
# matrix-level operations


def _rows_as_ints(M: Matrix) -> list[int]:
    return [sum(1 << c for c, x in enumerate(row) if x) for row in M.data]


def _rank_gf2(M: Matrix) -> int:
    return rank_of_vectors(_rows_as_ints(M), 2)


def rank_generic(M: Matrix) -> int:
    """Rank by textbook mod-q Gaussian elimination (works for q = 2 too)."""
    q = M.q
    work = [list(r) for r in M.data]
    r = 0
    for c in range(M.cols):
        pivot = next((i for i in range(r, M.rows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][c], -1, q)
        work[r] = [(x * inv) % q for x in work[r]]
        for i in range(M.rows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % q for a, b in zip(work[i], work[r])]
        r += 1
        if r == M.rows:
            break
    return r


def rank(M: Matrix) -> int:
    """Rank of ``M`` over F_q; 0 for empty or all-zero matrices."""
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.q == 2:
        return _rank_gf2(M)
    return rank_generic(M)


def in_span(v: Sequence[int], M: Matrix) -> bool:
    """True iff column vector ``v`` is an F_q combination of the columns of ``M``."""
    if len(v) != M.rows:
        raise FieldError(f"vector has {len(v)} entries, matrix has {M.rows} rows")
    q = M.q
    v = [int(x) % q for x in v]
    if q == 2:
        basis = SpanBasis(2)
        for col in M.column_ints() if M.cols else []:
            basis.add(col)
        return basis.contains(sum(1 << k for k, x in enumerate(v) if x))
    basis = SpanBasis(q)
    for col in M.columns():
        basis.add(col)
    return basis.contains(v)


def row_basis(M: Matrix) -> Matrix:
    """Maximal independent subset of rows, keeping the first occurrence in row order."""
    basis = SpanBasis(M.q)
    keep = []
    for i, row in enumerate(M.data):
        vec = sum(1 << c for c, x in enumerate(row) if x) if M.q == 2 else row
        if basis.add(vec):
            keep.append(i)
    return Matrix(M.q, len(keep), M.cols, tuple(M.data[i] for i in keep))
