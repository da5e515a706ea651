"""Weighted binary greedy encoder for the t-requests case.

Every client starts with weight 1 and halves it each time it decodes a new
message; a client that has decoded ``t`` messages retires. Sorting, grouping
and the per-group sub-vector choice run on weights instead of counts, and
messages whose effective weight falls below the last dyadic group are not
coded in that round.

Weights are kept exact: client ``i`` with ``d_i`` decodes carries the integer
``2**(t - d_i)``, i.e. its true weight scaled by ``2**t``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._greedy import (
    SUBVECTORS,
    EncodeResult,
    EncodingError,
    GroupLog,
    Grouping,
    RoundLog,
    SortResult,
    StepLog,
    bits,
    make_grouping,
    pair_decoded,
    pair_satisfied,
)
from .field import Matrix
from .instances import Instance, InstanceError, errors

__all__ = ["encode_t", "WeightState", "weighted_sort"]


@dataclass
class WeightState:
    """Per-client decode counts and the residual bipartite graph."""

    t: int
    n: int
    decodes: list[int]
    residual: list[set[int]]  # residual request set per client (1-based messages)
    masks: list[int]  # masks[j]: active clients still requesting j
    classes: list[int]  # classes[d]: active clients that decoded d messages
    active: int

    @classmethod
    def start(cls, inst: Instance) -> "WeightState":
        masks = [0] * (inst.m + 1)
        for i, R in enumerate(inst.requests):
            for j in R:
                masks[j] |= 1 << i
        active = (1 << inst.n) - 1
        classes = [0] * inst.t
        classes[0] = active
        return cls(inst.t, inst.n, [0] * inst.n, [set(R) for R in inst.requests], masks, classes, active)

    def weight(self, i: int) -> int:
        """Scaled weight of 1-based client ``i`` (0 once retired)."""
        d = self.decodes[i - 1]
        return 1 << (self.t - d) if d < self.t else 0

    def mask_weight(self, mask: int) -> int:
        t = self.t
        return sum((mask & c).bit_count() << (t - d) for d, c in enumerate(self.classes))

    def total(self) -> int:
        return self.mask_weight(self.active)

    def record_decode(self, i: int, j: int) -> None:
        bit = 1 << (i - 1)
        d = self.decodes[i - 1]
        if j not in self.residual[i - 1]:
            raise EncodingError(f"client {i} cannot decode message {j}: not requested")
        self.residual[i - 1].discard(j)
        self.masks[j] &= ~bit
        self.classes[d] &= ~bit
        self.decodes[i - 1] = d + 1
        if d + 1 == self.t:
            self.active &= ~bit
            for k in self.residual[i - 1]:
                self.masks[k] &= ~bit
        else:
            self.classes[d + 1] |= bit


def weighted_sort(state: WeightState, m: int) -> SortResult:
    """Peel messages by largest not-yet-covered active weight (ties to lowest index)."""
    remaining = state.active
    unpicked = list(range(1, m + 1))
    order, value, eff = [], {}, {}
    while unpicked:
        best, best_w = None, 0
        for j in unpicked:
            w = state.mask_weight(state.masks[j] & remaining)
            if w > best_w:
                best, best_w = j, w
        picks = unpicked if best is None else [best]
        for j in list(picks):
            hit = state.masks[j] & remaining
            order.append(j)
            value[j] = state.mask_weight(hit)
            eff[j] = frozenset(bits(hit))
            remaining &= ~hit
            unpicked.remove(j)
    return SortResult(tuple(order), value, eff, scale=1 << state.t)


def _code_group(s: int, msgs, sort: SortResult, state: WeightState, base: int, relaxed: bool) -> GroupLog:
    scale = sort.scale
    n_s = 0
    for j in msgs:
        for i in sort.effective_clients[j]:
            n_s |= 1 << (i - 1)
    log = GroupLog(s, tuple(msgs), bits(n_s), base / 2 ** (s - 1) / scale)
    counts: dict[int, list[int]] = {}
    members: dict[int, tuple[list[int], list[int], list[int]]] = {}
    in_sat: dict[int, bool] = {}

    for j in msgs:
        added = sorted(sort.effective_clients[j])
        visited = [i for i in bits(state.masks[j] & n_s) if i in in_sat]
        pool = [i for i in visited if in_sat[i]] if relaxed else visited
        scores = []
        for k in range(3):
            w = 0
            for i in pool:
                c = counts[i]
                c[k] += 1
                if pair_satisfied(c):
                    w += state.weight(i)
                c[k] -= 1
            scores.append(w)
        choice = max(range(3), key=lambda k: (scores[k], -k))
        to_unsat, to_sat = [], []
        lost = 0
        for i in visited:
            counts[i][choice] += 1
            members[i][choice].append(j)
            ok = pair_satisfied(counts[i])
            if in_sat[i] and not ok:
                in_sat[i] = False
                to_unsat.append(i)
                lost += state.weight(i)
            elif not in_sat[i] and ok and not relaxed:
                in_sat[i] = True
                to_sat.append(i)
        for i in added:
            counts[i] = [0, 0, 0]
            counts[i][choice] = 1
            members[i] = ([], [], [])
            members[i][choice].append(j)
            in_sat[i] = True
        log.steps.append(
            StepLog(j, SUBVECTORS[choice], tuple(x / scale for x in scores), added,
                    to_unsat, to_sat, lost / scale, sum(in_sat.values()))
        )

    log.sat = sorted(i for i, ok in in_sat.items() if ok)
    for i in log.sat:
        d = pair_decoded(members[i])
        if d is None:
            raise EncodingError(f"client {i} marked satisfied but decodes nothing")
        log.decoded[i] = d
    return log


def encode_t(inst: Instance, relaxed_unsat: bool = False) -> EncodeResult:
    """Run the weighted greedy encoder until every client has decoded ``t`` messages."""
    errs = errors(inst)
    if errs:
        raise InstanceError("; ".join(e.message for e in errs))

    m, t = inst.m, inst.t
    state = WeightState.start(inst)
    scale = 1 << t
    rows: list[list[int]] = []
    rounds: list[RoundLog] = []
    decoded: list[list[int]] = [[] for _ in range(inst.n)]
    trajectory: dict[int, list[int]] = {i: [0] for i in range(1, inst.n + 1)}

    while state.active:
        n_active = state.active.bit_count()
        before = state.total()
        sort = weighted_sort(state, m)
        grouping: Grouping = make_grouping(sort, n_active)
        if grouping.base == 0:
            raise EncodingError("active clients remain but no message has positive weight")
        rlog = RoundLog(
            len(rounds) + 1, bits(state.active), sort.order,
            {j: v / scale for j, v in sort.value.items()},
            {j: sorted(c) for j, c in sort.effective_clients.items()},
            grouping.base / scale, grouping.S, [], grouping.overflow, before / scale,
        )
        for s, msgs in grouping.groups.items():
            glog = _code_group(s, msgs, sort, state, grouping.base, relaxed_unsat)
            top, bottom = [0] * m, [0] * m
            for st in glog.steps:
                top[st.message - 1], bottom[st.message - 1] = st.choice
            rows += [top, bottom]
            for i in glog.sat:
                j = glog.decoded[i]
                decoded[i - 1].append(j)
                state.record_decode(i, j)
            rlog.groups.append(glog)
        after = state.total()
        rlog.weight_after = after / scale
        if after >= before:
            raise EncodingError(f"round {rlog.index} decreased no weight")
        for i in range(1, inst.n + 1):
            trajectory[i].append(state.decodes[i - 1])
        rounds.append(rlog)

    code = Matrix.from_rows(rows, 2, cols=m)
    return EncodeResult(code, rounds, tuple(tuple(d) for d in decoded), "bingreedy-t",
                        relaxed_unsat, trajectory)
