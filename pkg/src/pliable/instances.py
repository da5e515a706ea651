"""Pliable-index-coding instances: model, generators, validation, JSON.

Messages and clients are 1-based everywhere in the public API, matching the
JSON format ``{"m", "n", "t", "requests"}``.

Randomness: every generator derives one PCG64 stream per client from
``numpy.random.SeedSequence(seed).spawn(n)``. A client whose request set is
too small (``|R_i| < t``) redraws from its own stream until it is valid, so
changing one client never shifts another client's draws.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "InstanceError",
    "Instance",
    "GenSpec",
    "Violation",
    "generate",
    "complete",
    "complete_t",
    "random_instance",
    "heterogeneous",
    "field_size_instance",
    "validate",
]

MAX_RESAMPLE = 10_000


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    """``m`` messages, ``n`` clients, client ``i`` requests any ``t`` of ``requests[i]``."""

    m: int
    requests: tuple[frozenset[int], ...]
    t: int = 1

    @property
    def n(self) -> int:
        return len(self.requests)

    @classmethod
    def from_sets(cls, m: int, requests: Iterable[Iterable[int]], t: int = 1) -> "Instance":
        return cls(m, tuple(frozenset(int(j) for j in r) for r in requests), t)

    def side_information(self, i: int) -> frozenset[int]:
        """S_i for 1-based client ``i``."""
        return frozenset(range(1, self.m + 1)) - self.requests[i - 1]

    def neighbors(self, j: int) -> frozenset[int]:
        """1-based clients that request message ``j``."""
        return frozenset(i + 1 for i, r in enumerate(self.requests) if j in r)

    def biadjacency(self) -> np.ndarray:
        """``n x m`` 0/1 array, entry (i, j) = 1 iff client i lacks message j."""
        out = np.zeros((self.n, self.m), dtype=np.uint8)
        for i, r in enumerate(self.requests):
            for j in r:
                out[i, j - 1] = 1
        return out

    def edge_count(self) -> int:
        return sum(len(r) for r in self.requests)

    def with_t(self, t: int) -> "Instance":
        return Instance(self.m, self.requests, t)

    # -- JSON -------------------------------------------------------------

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "t": self.t, "requests": [sorted(r) for r in self.requests]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "Instance":
        try:
            m, n, t, reqs = int(obj["m"]), int(obj["n"]), int(obj.get("t", 1)), obj["requests"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceError(f"bad instance JSON: {exc}") from None
        if len(reqs) != n:
            raise InstanceError(f"n={n} but {len(reqs)} request sets given")
        return cls.from_sets(m, reqs, t)

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Violation:
    severity: str  # "error" or "warning"
    client: int | None
    message: str


def validate(inst: Instance) -> list[Violation]:
    """Structural errors plus a warning for every repeated request set."""
    out: list[Violation] = []
    if inst.m < 1:
        out.append(Violation("error", None, f"m={inst.m} must be >= 1"))
    if inst.n < 1:
        out.append(Violation("error", None, "instance has no clients"))
    if inst.t < 1:
        out.append(Violation("error", None, f"t={inst.t} must be >= 1"))
    first_seen: dict[frozenset[int], int] = {}
    for i, r in enumerate(inst.requests, start=1):
        if not r:
            out.append(Violation("error", i, "empty request set"))
        elif len(r) < inst.t:
            out.append(Violation("error", i, f"|R_{i}|={len(r)} < t={inst.t}"))
        bad = sorted(j for j in r if not 1 <= j <= inst.m)
        if bad:
            out.append(Violation("error", i, f"message indices {bad} outside [1, {inst.m}]"))
        if r in first_seen:
            out.append(Violation("warning", i, f"same request set as client {first_seen[r]}"))
        else:
            first_seen[r] = i
    return out


def errors(inst: Instance) -> list[Violation]:
    return [v for v in validate(inst) if v.severity == "error"]


# ---------------------------------------------------------------------------
# generators


def _nonempty_subsets(m: int) -> list[frozenset[int]]:
    """All nonempty subsets of [m], by size then lexicographically."""
    return [frozenset(c) for k in range(1, m + 1) for c in combinations(range(1, m + 1), k)]


def complete(m: int) -> Instance:
    """The ``n = 2^m - 1`` instance whose clients request every nonempty subset."""
    if m < 1:
        raise InstanceError("complete instance needs m >= 1")
    return Instance(m, tuple(_nonempty_subsets(m)), 1)


def complete_t(m: int, t: int) -> Instance:
    """Complete instance on the first ``m - t + 1`` messages, every client also
    requesting the ``t - 1`` trailing messages."""
    if t < 1:
        raise InstanceError("t must be >= 1")
    if m < t:
        raise InstanceError(f"complete_t needs m >= t (got m={m}, t={t})")
    m1 = m - t + 1
    tail = frozenset(range(m1 + 1, m + 1))
    return Instance(m, tuple(s | tail for s in _nonempty_subsets(m1)), t)


def field_size_instance(m: int = 4) -> Instance:
    """Clients requesting every 1-subset and every 2-subset of [m]."""
    subsets = [frozenset([j]) for j in range(1, m + 1)]
    subsets += [frozenset(c) for c in combinations(range(1, m + 1), 2)]
    return Instance(m, tuple(subsets), 1)


def _draw_clients(m: int, probs: Sequence[float], t: int, seed: int) -> tuple[frozenset[int], ...]:
    streams = np.random.SeedSequence(seed).spawn(len(probs))
    out = []
    for p, ss in zip(probs, streams):
        rng = np.random.Generator(np.random.PCG64(ss))
        for _ in range(MAX_RESAMPLE):
            row = rng.random(m) < p
            if int(row.sum()) >= t:
                break
        else:
            raise InstanceError(f"could not draw |R_i| >= {t} with p={p}, m={m}")
        out.append(frozenset(int(j) + 1 for j in np.flatnonzero(row)))
    return tuple(out)


def random_instance(m: int, n: int, p: float, seed: int, t: int = 1) -> Instance:
    """B(m, n, p): each client-message edge present with probability ``p``."""
    if not 0 <= p <= 1:
        raise InstanceError(f"p={p} outside [0, 1]")
    if m < t or n < 1:
        raise InstanceError("need m >= t and n >= 1")
    if p == 0:
        raise InstanceError("p = 0 never produces a valid client")
    return Instance(m, _draw_clients(m, [p] * n, t, seed), t)


def heterogeneous(m: int, n: int, group_probs: Sequence[float], seed: int, t: int = 1) -> Instance:
    """Clients split into equal consecutive blocks (remainder to the last block),
    block k drawing edges with probability ``group_probs[k]``."""
    k = len(group_probs)
    if k == 0 or k > n:
        raise InstanceError("need 1 <= len(group_probs) <= n")
    if any(not 0 < p <= 1 for p in group_probs):
        raise InstanceError("group probabilities must lie in (0, 1]")
    if m < t:
        raise InstanceError("need m >= t")
    size = n // k
    probs = []
    for b, p in enumerate(group_probs):
        count = size if b < k - 1 else n - size * (k - 1)
        probs.extend([p] * count)
    return Instance(m, _draw_clients(m, probs, t, seed), t)


@dataclass(frozen=True)
class GenSpec:
    kind: str  # random | complete | complete_t | heterogeneous
    m: int
    n: int | None = None
    p: float | None = None
    t: int = 1
    seed: int = 0
    group_probs: tuple[float, ...] = field(default_factory=tuple)


def generate(spec: GenSpec) -> Instance:
    kind = spec.kind.replace("-", "_")
    if kind == "complete":
        if spec.t != 1:
            raise InstanceError("complete instances are single-request; use complete_t")
        return complete(spec.m)
    if kind == "complete_t":
        return complete_t(spec.m, spec.t)
    if kind == "random":
        if spec.n is None or spec.p is None:
            raise InstanceError("random instances need n and p")
        return random_instance(spec.m, spec.n, spec.p, spec.seed, spec.t)
    if kind == "heterogeneous":
        if spec.n is None or not spec.group_probs:
            raise InstanceError("heterogeneous instances need n and group_probs")
        return heterogeneous(spec.m, spec.n, spec.group_probs, spec.seed, spec.t)
    raise InstanceError(f"unknown instance kind {spec.kind!r}")
