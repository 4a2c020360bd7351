"""Frank's weight-splitting algorithm for linear matroids.

The solver keeps a splitting c = c1 + c2 and a common independent set X
that is simultaneously maximum for c1 in the first matroid and for c2 in
the second, at its cardinality.  The exchange graph is built on fully
X-diagonalized working copies; a weight-filtered subgraph restricted to
the best source and sink slices drives augmentations, and between them the
splitting shifts by the largest step that keeps every exchange condition.

Two variants: the classic update shifts the reachable set only; the
modified one also shifts outside nodes whose filtered arcs all point into
reached elements of X, stepping through each change of that node set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .degdet import (
    CardinalityRecord,
    InvariantViolation,
    MINUS_INF,
    SolveResult,
    WeightSplitting,
    WmiInstance,
    verify_splitting_certificate,
)
from .exactla import x_diagonalize
from .intersect import ResidualGraph, build_residual
from .trace import Tracer

VARIANTS = ("classic", "modified")


@dataclass
class BarGraph:
    """Weight-filtered subgraph with its source/sink slices and reachability."""

    arcs: set[tuple[int, int]]
    sources: set[int]
    sinks: set[int]
    reachable: set[int]


def build_bar_graph(full: ResidualGraph, X: set[int], c1: list[int], c2: list[int]) -> BarGraph:
    """Keep arcs whose endpoints agree on the relevant split weight, and
    restrict sources and sinks to their best-weight slices."""
    arcs = set()
    for u, v in full.arcs:
        if u in X:
            if c1[u] == c1[v]:
                arcs.add((u, v))
        else:
            if c2[u] == c2[v]:
                arcs.add((u, v))
    sources = set()
    if full.sources:
        top = max(c1[i] for i in full.sources)
        sources = {i for i in full.sources if c1[i] == top}
    sinks = set()
    if full.sinks:
        top = max(c2[i] for i in full.sinks)
        sinks = {i for i in full.sinks if c2[i] == top}
    adj: dict[int, list[int]] = {}
    for u, v in arcs:
        adj.setdefault(u, []).append(v)
    for u in adj:
        adj[u].sort()
    reachable = set(sources)
    queue = deque(sorted(sources))
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v not in reachable:
                reachable.add(v)
                queue.append(v)
    return BarGraph(arcs, sources, sinks, reachable)


def moving_complement(full: ResidualGraph, bar: BarGraph, X: set[int]) -> set[int]:
    """Outside nodes whose filtered arcs all enter reached elements of X.

    Sink-addable nodes are excluded: they have no outgoing exchange arcs at
    all, yet their second split weight is already pinned to the sink slice
    and must not move.
    """
    out: set[int] = set()
    for i in range(full.m):
        if i in X or i in bar.reachable or i in full.sinks:
            continue
        heads = [v for (u, v) in bar.arcs if u == i]
        if all(v in X and v in bar.reachable for v in heads):
            out.add(i)
    return out


def _epsilon_candidates(
    full: ResidualGraph,
    bar: BarGraph,
    X: set[int],
    W: set[int],
    c1: list[int],
    c2: list[int],
) -> list[int]:
    """Positive thresholds at which the filtered graph or a slice changes."""
    cands: list[int] = []
    if full.sources:
        top1 = max(c1[i] for i in full.sources)
        for i in full.sources:
            if i not in W and c1[i] < top1:
                cands.append(top1 - c1[i])
    if full.sinks:
        top2 = max(c2[i] for i in full.sinks)
        for t in full.sinks & W:
            gap = top2 - c2[t]
            if gap <= 0:
                raise InvariantViolation("sink slice gap must be positive here")
            cands.append(gap)
    for u, v in full.arcs:
        if u in X:
            # arc from X re-enters the filter when the dropping side meets v
            if u in W and v not in W:
                gap = c1[u] - c1[v]
                if gap > 0:
                    cands.append(gap)
        else:
            if u in W and v not in W:
                gap = c2[v] - c2[u]
                if gap > 0:
                    cands.append(gap)
    return cands


def frank_solve(
    inst: WmiInstance,
    variant: str = "classic",
    validate: bool = True,
    trace: bool = True,
) -> SolveResult:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    n, m = inst.n, inst.m
    c = list(inst.c)
    c1 = list(c)
    c2 = [0] * m
    X: set[int] = set()
    work_a = inst.A.copy()
    work_b = inst.B.copy()
    sigma_a: dict[int, int] = {}
    sigma_b: dict[int, int] = {}
    tracer = Tracer(enabled=trace)
    cum = 0
    records: dict[int, CardinalityRecord] = {}

    def snapshot_record() -> None:
        k = len(X)
        records[k] = CardinalityRecord(
            k, frozenset(X), inst.weight(X), WeightSplitting(tuple(c1), tuple(c2))
        )

    def check_optimal() -> None:
        if validate and not verify_splitting_certificate(
            inst, X, WeightSplitting(tuple(c1), tuple(c2))
        ):
            raise InvariantViolation("weight splitting lost optimality")

    def finish(degdet) -> SolveResult:
        best = max(records.values(), key=lambda r: (r.weight, -r.size))
        tracer.emit(
            "terminate",
            degdet="-inf" if degdet == MINUS_INF else degdet,
            x_star=sorted(best.columns),
            weight=best.weight,
            by_card={k: sorted(r.columns) for k, r in records.items()},
        )
        return SolveResult(
            degdet, dict(records), best, WeightSplitting(tuple(c1), tuple(c2)), tracer
        )

    snapshot_record()
    tracer.emit("init", n=n, m=m, c=list(c), c1=list(c1), c2=list(c2))
    spread = max(c) - min(c)
    outer_limit = n + 2
    inner_limit = (m + n + 2) * (spread + 2) + 10 * m + 100
    for _ in range(outer_limit):
        if len(X) == n:
            return finish(records[n].weight)
        work_a, log_a, sigma_a = x_diagonalize(work_a, X, sigma_a)
        work_b, log_b, sigma_b = x_diagonalize(work_b, X, sigma_b)
        tracer.count_ops(len(log_a) + len(log_b))
        full = build_residual(work_a, work_b, X, sigma_a, sigma_b, check=validate)
        augmented = False
        for _ in range(inner_limit):
            bar = build_bar_graph(full, X, c1, c2)
            prime = (
                moving_complement(full, bar, X) if variant == "modified" else set()
            )
            tracer.emit(
                "graph",
                X=sorted(X),
                S=sorted(bar.sources),
                T=sorted(bar.sinks),
                R=sorted(bar.reachable),
                arcs=sorted(bar.arcs),
                full_S=sorted(full.sources),
                full_T=sorted(full.sinks),
                full_arcs=sorted(full.arcs),
                prime=sorted(prime),
                c1=list(c1),
                c2=list(c2),
                cum=cum,
            )
            if bar.reachable & bar.sinks:
                path = _shortest_path(bar)
                X = X.symmetric_difference(path)
                snapshot_record()
                check_optimal()
                rec = records[len(X)]
                tracer.emit(
                    "augment",
                    path=list(path),
                    X=sorted(X),
                    k=len(X),
                    weight=rec.weight,
                    c1=list(c1),
                    c2=list(c2),
                    cum=cum,
                )
                augmented = True
                break
            W = bar.reachable | prime
            cands = _epsilon_candidates(full, bar, X, W, c1, c2)
            if not cands:
                return finish(MINUS_INF)
            eps = min(cands)
            for i in W:
                c1[i] -= eps
                c2[i] += eps
            cum += eps
            tracer.epsilon_steps += 1
            tracer.emit("epsilon", eps=eps, targets=sorted(W), cum=cum, c1=list(c1), c2=list(c2))
            check_optimal()
        else:
            raise InvariantViolation("splitting updates did not settle")
        assert augmented
    raise InvariantViolation("augmentation limit exceeded")


def _shortest_path(bar: BarGraph) -> list[int]:
    adj: dict[int, list[int]] = {}
    for u, v in bar.arcs:
        adj.setdefault(u, []).append(v)
    for u in adj:
        adj[u].sort()
    parent: dict[int, int | None] = {s: None for s in sorted(bar.sources)}
    queue = deque(sorted(bar.sources))
    while queue:
        u = queue.popleft()
        if u in bar.sinks:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            path.reverse()
            return path
        for v in adj.get(u, ()):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    raise InvariantViolation("no path despite reachable sink")
