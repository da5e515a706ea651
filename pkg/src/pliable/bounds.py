"""Code-length bounds for random instances B(m, n, p).

``lower_bound`` is the high-probability lower bound on any linear code length;
``constant_weight_code`` is the explicit construction behind the matching
O(log n) upper bound: rows with ``round(1/p)`` ones each, on disjoint
supports. All logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .field import Matrix

__all__ = [
    "GOLDEN",
    "BoundReport",
    "lower_bound",
    "lower_bound_coefficient",
    "constant_weight_rows",
    "constant_weight_code",
    "bound_report",
]

GOLDEN = (math.sqrt(5) - 1) / 2


def lower_bound_coefficient(p: float) -> float:
    """c(p) such that the lower bound is ``c(p) * log2(n)``."""
    if not 0 < p < 1:
        raise ValueError(f"p={p} must lie strictly between 0 and 1")
    if p <= GOLDEN:
        return 1 / (4 * math.log2(1 / p))
    return 1 / (2 * math.log2(1 / (1 - p)))


def lower_bound(n: int, p: float) -> float:
    if n < 2:
        raise ValueError("n must be >= 2")
    return lower_bound_coefficient(p) * math.log2(n)


def constant_weight_rows(n: int) -> int:
    """ceil(3 log2(n) / log2(e/(e-1)))."""
    return math.ceil(3 * math.log2(n) / math.log2(math.e / (math.e - 1)))


def _row_weight(p: float) -> int:
    return max(1, round(1 / p))


def constant_weight_code(m: int, n: int, p: float) -> Matrix:
    """Binary code whose row r has ones exactly at columns ``r*w .. r*w + w - 1``."""
    if not 0 < p <= 1:
        raise ValueError(f"p={p} must lie in (0, 1]")
    rows, w = constant_weight_rows(n), _row_weight(p)
    if m < rows * w:
        raise ValueError(f"m={m} too small: {rows} disjoint rows of weight {w} need m >= {rows * w}")
    data = [[1 if r * w <= c < (r + 1) * w else 0 for c in range(m)] for r in range(rows)]
    return Matrix.from_rows(data, 2, cols=m)


@dataclass(frozen=True)
class BoundReport:
    n: int
    p: float
    lower_bound: float
    coefficient: float
    constructive_rows: int
    row_weight: int
    regime: str  # "p<=golden" or "p>golden"
    m: int | None = None
    m_required: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(n: int, p: float, m: int | None = None) -> BoundReport:
    rows, w = constant_weight_rows(n), _row_weight(p)
    return BoundReport(
        n=n,
        p=p,
        lower_bound=lower_bound(n, p),
        coefficient=lower_bound_coefficient(p),
        constructive_rows=rows,
        row_weight=w,
        regime="p<=golden" if p <= GOLDEN else "p>golden",
        m=m,
        m_required=rows * w,
    )
