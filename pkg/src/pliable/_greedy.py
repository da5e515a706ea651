"""Pieces shared by the two greedy encoders: the 2-row group code, the dyadic
grouping, round logs and the result container."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .field import Matrix, rank, row_basis

# Fixed tie-break order of the 2-row coding sub-vectors.
SUBVECTORS: tuple[tuple[int, int], ...] = ((1, 0), (0, 1), (1, 1))


class EncodingError(RuntimeError):
    """An encoder reached a state its guarantees rule out."""


def pair_satisfied(counts) -> bool:
    """Can a client decode something from a 2-row binary group code?

    ``counts[k]`` is how many of the client's requested, already coded group
    messages carry sub-vector ``SUBVECTORS[k]``. Any two distinct nonzero
    vectors of F_2^2 are independent and the third is their sum, so the client
    decodes iff some type occurs exactly once and at most two types occur.
    """
    present = (counts[0] > 0) + (counts[1] > 0) + (counts[2] > 0)
    return present < 3 and (counts[0] == 1 or counts[1] == 1 or counts[2] == 1)


def pair_decoded(members) -> int | None:
    """Lowest-index message the client decodes, given ``members[k]`` = its
    coded messages of type ``k``."""
    if sum(1 for g in members if g) == 3:
        return None
    singles = [g[0] for g in members if len(g) == 1]
    return min(singles) if singles else None


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def group_count(n_active: int) -> int:
    return max(1, ceil_log2(n_active))


def group_index(value: int, base: int) -> int:
    """The ``s >= 1`` with ``base / 2^s < value <= base / 2^(s-1)`` (``0 < value <= base``)."""
    return (base // value).bit_length()


@dataclass(frozen=True)
class SortResult:
    """Peeling order with each message's effective clients.

    ``value[j]`` is the effective degree (or, for weighted sorting, the
    effective weight scaled by ``scale``); ``effective_clients`` are pairwise
    disjoint.
    """

    order: tuple[int, ...]
    value: dict[int, int]
    effective_clients: dict[int, frozenset[int]]
    scale: int = 1

    @property
    def effective_degree(self) -> dict[int, int]:
        return {j: len(c) for j, c in self.effective_clients.items()}

    @property
    def effective_weight(self) -> dict[int, float]:
        return {j: v / self.scale for j, v in self.value.items()}


@dataclass(frozen=True)
class Grouping:
    """Messages grouped by effective value relative to ``base`` (the largest one).

    Message ``j`` sits in group ``s`` iff ``base/2^s < value[j] <= base/2^(s-1)``
    for ``s <= S``; positive values below ``base/2^S`` go to ``overflow``.
    """

    base: int
    S: int
    groups: dict[int, tuple[int, ...]]
    overflow: tuple[int, ...] = ()

    @property
    def group_of(self) -> dict[int, int]:
        return {j: s for s, msgs in self.groups.items() for j in msgs}


def make_grouping(sort: SortResult, n_active: int) -> Grouping:
    S = group_count(n_active)
    base = sort.value[sort.order[0]] if sort.order else 0
    groups: dict[int, list[int]] = {}
    overflow = []
    for j in sort.order:
        v = sort.value[j]
        if v <= 0:
            continue
        s = group_index(v, base)
        if s <= S:
            groups.setdefault(s, []).append(j)
        else:
            overflow.append(j)
    return Grouping(base, S, {s: tuple(g) for s, g in sorted(groups.items())}, tuple(overflow))


# ---------------------------------------------------------------------------
# logs


@dataclass
class StepLog:
    message: int
    choice: tuple[int, int]
    scores: tuple[float, float, float]
    added: list[int]
    to_unsat: list[int]
    to_sat: list[int]
    lost: float
    sat_size: int


@dataclass
class GroupLog:
    s: int
    messages: tuple[int, ...]
    clients: list[int]
    scale: float  # base / 2^(s-1), the largest effective value the group admits
    steps: list[StepLog] = field(default_factory=list)
    sat: list[int] = field(default_factory=list)
    decoded: dict[int, int] = field(default_factory=dict)

    @property
    def subvectors(self) -> dict[int, tuple[int, int]]:
        return {st.message: st.choice for st in self.steps}


@dataclass
class RoundLog:
    index: int
    active: list[int]
    order: tuple[int, ...]
    value: dict[int, float]
    effective_clients: dict[int, list[int]]
    base: float
    S: int
    groups: list[GroupLog]
    overflow: tuple[int, ...] = ()
    weight_before: float = 0.0
    weight_after: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        # JSON object keys must be strings
        d["value"] = {str(k): v for k, v in self.value.items()}
        d["effective_clients"] = {str(k): v for k, v in self.effective_clients.items()}
        for g in d["groups"]:
            g["decoded"] = {str(k): v for k, v in g["decoded"].items()}
        return d


@dataclass
class EncodeResult:
    """Output of a greedy encoder.

    ``code`` holds two rows per nonempty group per round; ``reduced`` is its
    first-occurrence row basis. ``decoded[i-1]`` lists what client ``i``
    decoded, round by round.
    """

    code: Matrix
    rounds: list[RoundLog]
    decoded: tuple[tuple[int, ...], ...]
    algorithm: str
    relaxed: bool = False
    weight_trajectory: dict[int, list[int]] | None = None
    reduced: Matrix = field(init=False)

    def __post_init__(self):
        self.reduced = row_basis(self.code)

    @property
    def raw_len(self) -> int:
        return self.code.rows

    @property
    def reduced_len(self) -> int:
        return self.reduced.rows

    def log_dict(self) -> dict:
        out = {
            "algorithm": self.algorithm,
            "relaxed_unsat": self.relaxed,
            "raw_len": self.raw_len,
            "reduced_len": self.reduced_len,
            "rank": rank(self.code),
            "decoded": [list(d) for d in self.decoded],
            "rounds": [r.to_dict() for r in self.rounds],
        }
        if self.weight_trajectory is not None:
            out["weight_trajectory"] = {
                str(i): [2.0**-d for d in traj] for i, traj in self.weight_trajectory.items()
            }
        return out


def bits(mask: int) -> list[int]:
    """1-based client indices of the set bits of ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out
