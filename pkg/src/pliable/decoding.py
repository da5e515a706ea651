"""Which messages can each client decode from a linear code?

A client holding everything outside ``R`` can recover message ``j`` exactly
when column ``a_j`` is not in the span of the other columns indexed by ``R``,
i.e. when dropping ``j`` lowers ``rank(A_R)`` by one. For vector codes every
message owns a block of ``L`` columns and the same test is applied blockwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .field import FieldError, Matrix, rank_of_vectors
from .instances import Instance

__all__ = [
    "SatisfactionReport",
    "VectorCode",
    "decodable_set",
    "verify",
    "vector_decodable_set",
]


def _column_vectors(A: Matrix) -> list:
    return A.column_ints() if A.q == 2 else A.columns()


def _rref_rows(cols: list, R: list[int], q: int) -> tuple[list, list[int]]:
    """Reduced row echelon form of ``A_R``; returns (rows, pivot positions)."""
    if q == 2:
        rows = [0] * max((c.bit_length() for c in (cols[j - 1] for j in R)), default=0)
        for pos, j in enumerate(R):
            c = cols[j - 1]
            k = 0
            while c:
                if c & 1:
                    rows[k] |= 1 << pos
                c >>= 1
                k += 1
        pivots, done = [], []
        for pos in range(len(R)):
            bit = 1 << pos
            hit = next((r for r in rows if r & bit), None)
            if hit is None:
                continue
            rows.remove(hit)
            rows = [r ^ hit if r & bit else r for r in rows]
            done = [r ^ hit if r & bit else r for r in done]
            done.append(hit)
            pivots.append(pos)
        return done, pivots
    K = len(cols[0]) if cols else 0
    rows = [[cols[j - 1][k] for j in R] for k in range(K)]
    pivots, r = [], 0
    for pos in range(len(R)):
        piv = next((i for i in range(r, K) if rows[i][pos]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][pos], q - 2, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(K):
            if i != r and rows[i][pos]:
                f = rows[i][pos]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        pivots.append(pos)
        r += 1
    return rows[:r], pivots


def _decodable(cols: list, R: Iterable[int], q: int) -> frozenset[int]:
    # j is decodable iff every null vector of A_R vanishes at j, i.e. j is a
    # pivot column whose RREF row has no entry in a free column
    R = sorted(R)
    rows, pivots = _rref_rows(cols, R, q)
    free = [pos for pos in range(len(R)) if pos not in set(pivots)]
    out = []
    if q == 2:
        free_mask = sum(1 << pos for pos in free)
        for row, pos in zip(rows, pivots):
            if not row & free_mask:
                out.append(R[pos])
    else:
        for row, pos in zip(rows, pivots):
            if all(row[f] == 0 for f in free):
                out.append(R[pos])
    return frozenset(out)


def _decodable_by_rank(cols: list, R: Iterable[int], q: int) -> frozenset[int]:
    R = sorted(R)
    full = rank_of_vectors((cols[j - 1] for j in R), q)
    out = []
    for j in R:
        rest = rank_of_vectors((cols[k - 1] for k in R if k != j), q)
        if rest + 1 == full:
            out.append(j)
    return frozenset(out)


def _check_request(R, m: int) -> None:
    if not R:
        raise ValueError("request set must be nonempty")
    bad = [j for j in R if not 1 <= j <= m]
    if bad:
        raise FieldError(f"message indices {bad} outside [1, {m}]")


def decodable_set(A: Matrix, R: Iterable[int]) -> frozenset[int]:
    """Messages in ``R`` (1-based) uniquely recoverable from ``x = A b``."""
    R = frozenset(R)
    _check_request(R, A.cols)
    return _decodable(_column_vectors(A), R, A.q)


@dataclass(frozen=True)
class SatisfactionReport:
    t: int
    decodable: tuple[frozenset[int], ...]

    @property
    def satisfied(self) -> tuple[bool, ...]:
        return tuple(len(d) >= self.t for d in self.decodable)

    @property
    def n_satisfied(self) -> int:
        return sum(self.satisfied)

    @property
    def n_unsatisfied(self) -> int:
        return len(self.decodable) - self.n_satisfied

    @property
    def all_satisfied(self) -> bool:
        return all(self.satisfied)

    def unsatisfied_clients(self) -> list[int]:
        return [i for i, ok in enumerate(self.satisfied, start=1) if not ok]

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "all_satisfied": self.all_satisfied,
            "n_satisfied": self.n_satisfied,
            "n_unsatisfied": self.n_unsatisfied,
            "decodable": [sorted(d) for d in self.decodable],
        }


def verify(A: Matrix, inst: Instance) -> SatisfactionReport:
    """Decodable set of every client, and whether each gets ``inst.t`` messages."""
    if A.cols != inst.m:
        raise FieldError(f"code has {A.cols} columns but instance has m={inst.m}")
    cols = _column_vectors(A)
    sets = []
    for R in inst.requests:
        _check_request(R, inst.m)
        sets.append(_decodable(cols, R, A.q))
    return SatisfactionReport(inst.t, tuple(sets))


@dataclass(frozen=True)
class VectorCode:
    """Code over length-``L`` message vectors; message j owns columns
    ``(j-1)L .. jL-1`` (0-based) of ``base``."""

    base: Matrix
    L: int

    def __post_init__(self):
        if self.L < 1 or self.base.cols % self.L:
            raise FieldError(f"{self.base.cols} columns do not split into blocks of L={self.L}")

    @property
    def m(self) -> int:
        return self.base.cols // self.L

    @property
    def equivalent_length(self) -> float:
        return self.base.rows / self.L


def vector_decodable_set(C: VectorCode, R: Iterable[int]) -> frozenset[int]:
    """Messages ``j`` in ``R`` whose whole block is recoverable: the block has
    full rank ``L`` and its span meets the other requested blocks only in 0."""
    R = frozenset(R)
    _check_request(R, C.m)
    q, L = C.base.q, C.L
    cols = _column_vectors(C.base)

    def block(j):
        return cols[(j - 1) * L : j * L]

    out = []
    for j in sorted(R):
        own = block(j)
        if rank_of_vectors(own, q) != L:
            continue
        others = [v for k in R if k != j for v in block(k)]
        if rank_of_vectors(own + others, q) == L + rank_of_vectors(others, q):
            out.append(j)
    return frozenset(out)
