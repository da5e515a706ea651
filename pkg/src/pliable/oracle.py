"""Exhaustive optimum for desk-scale instances.

Whether a client can decode depends on ``A`` only through the linear
dependencies among its columns, and those are fixed by the row space of
``A``. So the shortest valid code is the smallest dimension of a row space
that works, and it is enough to visit each ``K``-dimensional subspace of
``F_q^m`` once, as a matrix in reduced row echelon form. That is an exact
search over every ``K x m`` code (zero columns included), up to invertible
row operations.

``minrank_fit`` is the independent route: the minimum rank over all matrices
that put a single 1 on each client's request set and anything on its side
information.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import prod

from .decoding import verify
from .field import Matrix, is_prime, rank, rank_of_vectors
from .instances import Instance, InstanceError

__all__ = [
    "OracleInfeasible",
    "OracleResult",
    "optimal_code_length",
    "minrank_fit",
    "fitting_matrices",
    "subspace_count",
    "code_works",
    "rref_matrices",
    "MAX_CANDIDATES",
    "MAX_FITTING",
]

MAX_CANDIDATES = 2**30
MAX_FITTING = 2**28


class OracleInfeasible(RuntimeError):
    """The requested exhaustive search is larger than the configured guard."""


class NoCodeFound(RuntimeError):
    """No code of length <= k_max satisfies every client."""


@dataclass(frozen=True)
class OracleResult:
    length: int
    witness: Matrix
    examined: int
    q: int


def subspace_count(m: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^m (Gaussian binomial)."""
    if not 0 <= k <= m:
        return 0
    num = prod(q ** (m - i) - 1 for i in range(k))
    den = prod(q ** (k - i) - 1 for i in range(k))
    return num // den


def rref_matrices(m: int, k: int, q: int):
    """Yield every ``k x m`` matrix in reduced row echelon form of rank ``k``.

    Pivot sets are visited in lexicographic order and free entries in
    ``itertools.product`` order, so the sequence is deterministic.
    """
    for pivots in combinations(range(m), k):
        pivot_set = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, m) if c not in pivot_set]
        for fill in product(range(q), repeat=len(free)):
            rows = [[0] * m for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), x in zip(free, fill):
                rows[r][c] = x
            yield rows


def _columns_of(rows, m: int, q: int) -> list:
    if q == 2:
        cols = [0] * m
        for k, row in enumerate(rows):
            for j, x in enumerate(row):
                if x:
                    cols[j] |= 1 << k
        return cols
    return [tuple(row[j] for row in rows) for j in range(m)]


def code_works(cols, requests, t: int, q: int) -> bool:
    """Every request set has at least ``t`` decodable messages under ``cols``."""
    for R in requests:
        full = rank_of_vectors((cols[j - 1] for j in R), q)
        if full < t:
            return False
        hits = 0
        for j in R:
            if rank_of_vectors((cols[k - 1] for k in R if k != j), q) + 1 == full:
                hits += 1
                if hits >= t:
                    break
        if hits < t:
            return False
    return True


def optimal_code_length(
    inst: Instance, q: int = 2, k_max: int | None = None, max_candidates: int = MAX_CANDIDATES
) -> OracleResult:
    """Shortest linear code over F_q that gives every client ``inst.t`` messages.

    Raises ``OracleInfeasible`` before searching if the number of row spaces
    to visit for some ``K <= k_max`` exceeds ``max_candidates``, and
    ``NoCodeFound`` if no length up to ``k_max`` works.
    """
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    m = inst.m
    if k_max is None:
        k_max = m
    if any(not R for R in inst.requests):
        raise InstanceError("empty request set")
    ks = range(1, min(k_max, m) + 1)
    for k in ks:
        size = subspace_count(m, k, q)
        if size > max_candidates:
            raise OracleInfeasible(f"K={k}: {size} row spaces of F_{q}^{m} exceed guard {max_candidates}")
    requests = [sorted(R) for R in inst.requests]
    examined = 0
    for k in ks:
        for rows in rref_matrices(m, k, q):
            examined += 1
            if code_works(_columns_of(rows, m, q), requests, inst.t, q):
                return OracleResult(k, Matrix.from_rows(rows, q, cols=m), examined, q)
    raise NoCodeFound(f"no code of length <= {k_max} over F_{q}")


def _row_options(R: frozenset[int], m: int, q: int) -> list[tuple[int, ...]]:
    side = [j for j in range(1, m + 1) if j not in R]
    out = []
    for star in sorted(R):
        for fill in product(range(q), repeat=len(side)):
            row = [0] * m
            row[star - 1] = 1
            for j, x in zip(side, fill):
                row[j - 1] = x
            out.append(tuple(row))
    return out


def fitting_matrices(inst: Instance, q: int = 2):
    """Every ``n x m`` matrix fitting the instance, as tuples of rows."""
    options = [_row_options(R, inst.m, q) for R in inst.requests]
    yield from product(*options)


def minrank_fit(inst: Instance, q: int = 2, max_size: int = MAX_FITTING) -> int:
    """Minimum rank over F_q among all fitting matrices (single request only)."""
    if inst.t != 1:
        raise InstanceError("minrank_fit is defined for t = 1")
    if any(not R for R in inst.requests):
        raise InstanceError("empty request set")
    size = prod(len(R) * q ** (inst.m - len(R)) for R in inst.requests)
    if size > max_size:
        raise OracleInfeasible(f"{size} fitting matrices exceed guard {max_size}")
    best = inst.m
    for rows in fitting_matrices(inst, q):
        r = rank(Matrix(q, inst.n, inst.m, rows))
        if r < best:
            best = r
            if best == 1:
                # each row has a 1, so rank >= 1
                break
    return best


def verify_witness(result: OracleResult, inst: Instance) -> bool:
    return verify(result.witness, inst).all_satisfied
