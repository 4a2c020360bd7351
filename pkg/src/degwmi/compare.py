"""Structural equivalence between the two solvers' traces.

At every exchange-graph snapshot of the degree-of-determinant solver, a
companion view is derived from the same state: the splitting induced by the
second potential, the full circuit-based exchange graph of the original
matroids, its weight-filtered subgraph, and the best source/sink slices.
Five claims tie the two solvers together:

1. the solver's graph equals the filtered subgraph minus redundant arcs
   (arcs leaving a non-source node that nothing enters);
2. its source set equals the best source slice;
3. its sink set equals the best sink slice minus isolated nodes;
4. its reachable set equals the filtered subgraph's reachable set;
5. dual increases between reachability changes sum identically in the
   weight-splitting solver run on the same instance.

One wrinkle: right after an augmentation the free rows of the first
potential may sit strictly above the best source weight, and the solver
spends that gap in potential increases before any source is tight again.
While it does, its graph is empty and the claims do not apply; from the
moment the gap closes they hold, with the phase's dual offsets shifted by
exactly the entry gap.  The gap is minus the maximum alpha entry minus the
best source weight, zero whenever a source is already tight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .degdet import WmiInstance
from .frank import build_bar_graph
from .intersect import ResidualGraph
from .matroid import LinearMatroid


@dataclass
class Mismatch:
    claim: int
    where: str
    detail: str


@dataclass
class ComparisonReport:
    snapshots: int
    phases: int
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self) -> list[str]:
        out = [f"snapshots compared: {self.snapshots}", f"phases compared: {self.phases}"]
        for claim in range(1, 6):
            bad = [m for m in self.mismatches if m.claim == claim]
            mark = "ok" if not bad else f"{len(bad)} mismatch(es)"
            out.append(f"claim {claim}: {mark}")
            for m in bad[:5]:
                out.append(f"  at {m.where}: {m.detail}")
        return out


def full_exchange_graph(inst: WmiInstance, X: set[int]) -> ResidualGraph:
    """Circuit-based exchange graph of the original matroids."""
    ma = LinearMatroid(inst.A)
    mb = LinearMatroid(inst.B)
    m = inst.m
    sources = {i for i in range(m) if i not in X and ma.is_independent(X | {i})}
    sinks = {i for i in range(m) if i not in X and mb.is_independent(X | {i})}
    arcs: set[tuple[int, int]] = set()
    for i in range(m):
        if i in X:
            continue
        if i not in sources:
            for j in X:
                if ma.in_circuit(X, i, j):
                    arcs.add((j, i))
        if i not in sinks:
            for j in X:
                if mb.in_circuit(X, i, j):
                    arcs.add((i, j))
    return ResidualGraph(m, arcs, sources, sinks, set())


def make_view_hook(inst: WmiInstance):
    """Snapshot hook deriving the weight-splitting view from solver state."""

    def hook(state, graph) -> dict:
        ws = state.splitting()
        c1, c2 = list(ws.c1), list(ws.c2)
        full = full_exchange_graph(inst, state.X)
        bar = build_bar_graph(full, state.X, c1, c2)
        return {
            "c1": c1,
            "c2": c2,
            "full_arcs": sorted(full.arcs),
            "full_S": sorted(full.sources),
            "full_T": sorted(full.sinks),
            "bar_arcs": sorted(bar.arcs),
            "Sbar": sorted(bar.sources),
            "Tbar": sorted(bar.sinks),
            "Rbar": sorted(bar.reachable),
        }

    return hook


def _strip_redundant(
    bar_arcs: set[tuple[int, int]], sbar: set[int], X: set[int]
) -> set[tuple[int, int]]:
    # redundant arcs leave a non-X node that nothing enters and that is not
    # a live source; arcs out of X always stay
    entered = {v for (_, v) in bar_arcs}
    return {
        (u, v) for (u, v) in bar_arcs if u in X or u in sbar or u in entered
    }


def _strip_isolated(
    tbar: set[int], bar_arcs: set[tuple[int, int]], sbar: set[int]
) -> set[int]:
    # source-slice members stay: a freshly tightened column can sit in both
    # slices with no incident arcs, and it is a live sink
    touched = {u for (u, _) in bar_arcs} | {v for (_, v) in bar_arcs}
    return {t for t in tbar if t in touched or t in sbar}


def _aligned(rec) -> bool:
    """Snapshot has a tight source, or genuinely no source at all."""
    return bool(rec["S"]) or not rec["view"]["full_S"]


def _check_views(records, mismatches: list[Mismatch]) -> int:
    count = 0
    for idx, rec in enumerate(records):
        if rec.get("kind") != "graph" or "view" not in rec:
            continue
        if not _aligned(rec):
            continue
        count += 1
        where = f"snapshot {idx} (X={rec['X']}, cum={rec['cum']})"
        view = rec["view"]
        bar_arcs = {tuple(a) for a in view["bar_arcs"]}
        sbar = set(view["Sbar"])
        got_arcs = {tuple(a) for a in rec["arcs"]}
        want_arcs = _strip_redundant(bar_arcs, sbar, set(rec["X"]))
        if got_arcs != want_arcs:
            mismatches.append(
                Mismatch(1, where, f"graph arcs {sorted(got_arcs)} != {sorted(want_arcs)}")
            )
        if set(rec["S"]) != sbar:
            mismatches.append(Mismatch(2, where, f"S {rec['S']} != slice {view['Sbar']}"))
        want_t = _strip_isolated(set(view["Tbar"]), bar_arcs, sbar)
        if set(rec["T"]) != want_t:
            mismatches.append(Mismatch(3, where, f"T {rec['T']} != {sorted(want_t)}"))
        if set(rec["R"]) != set(view["Rbar"]):
            mismatches.append(Mismatch(4, where, f"R {rec['R']} != {view['Rbar']}"))
    return count


def _phase_table(records, shift_gap: bool):
    """Per augmentation phase: reachability changes as (dual offset, R).

    For the potential-based trace, offsets shift down by the phase's entry
    alignment gap, and pre-alignment snapshots (empty graph despite live
    sources) are dropped: they have no weight-splitting counterpart.
    """
    phases = []
    current = None
    for rec in records:
        kind = rec.get("kind")
        if kind == "graph":
            key = tuple(rec["X"])
            if current is None or current["X"] != key:
                gap = 0
                if shift_gap and rec["view"]["full_S"]:
                    slice1 = max(
                        rec["view"]["c1"][i] for i in rec["view"]["full_S"]
                    )
                    gap = -max(rec["alpha"]) - slice1
                current = {
                    "X": key,
                    "base": rec["cum"] + gap,
                    "changes": [],
                    "augment": None,
                }
                phases.append(current)
            skip = shift_gap and not _aligned(rec)
            off = rec["cum"] - current["base"]
            if not skip and (
                not current["changes"] or tuple(rec["R"]) != current["changes"][-1][1]
            ):
                current["changes"].append((off, tuple(rec["R"])))
        elif kind == "augment" and current is not None:
            current["augment"] = (tuple(rec["X"]), tuple(rec["c1"]), tuple(rec["c2"]))
    return phases


def compare_traces(wmi_records, frank_records) -> ComparisonReport:
    """Check the five claims; the first trace must carry view snapshots."""
    mismatches: list[Mismatch] = []
    if not any(r.get("kind") == "graph" and "view" in r for r in wmi_records):
        return ComparisonReport(
            0, 0, [Mismatch(1, "trace", "no view-bearing snapshots found")]
        )
    snapshots = _check_views(wmi_records, mismatches)
    wmi_phases = _phase_table(wmi_records, shift_gap=True)
    frank_phases = _phase_table(frank_records, shift_gap=False)
    if len(wmi_phases) != len(frank_phases):
        mismatches.append(
            Mismatch(5, "phases", f"{len(wmi_phases)} phases vs {len(frank_phases)}")
        )
    for p, (wp, fp) in enumerate(zip(wmi_phases, frank_phases)):
        where = f"phase {p} (X={list(wp['X'])})"
        if wp["X"] != fp["X"]:
            mismatches.append(Mismatch(5, where, f"X {list(wp['X'])} vs {list(fp['X'])}"))
            continue
        wc, fc = wp["changes"], fp["changes"]
        if wp["augment"] is None and fp["augment"] is None:
            # terminal phase: the solvers may stop at different dual depths,
            # so only the common prefix of reachability growth is comparable
            depth = min(len(wc), len(fc))
            wc, fc = wc[:depth], fc[:depth]
        if wc != fc:
            mismatches.append(Mismatch(5, where, f"reach changes {wc} vs {fc}"))
        if wp["augment"] != fp["augment"]:
            mismatches.append(
                Mismatch(5, where, f"augment {wp['augment']} vs {fp['augment']}")
            )
    return ComparisonReport(snapshots, len(wmi_phases), mismatches)
