"""Candidate scheduling for the dual-adjustment phase of the weighted solver.

All pairs (column i, second-matrix row l in J) are merge-sorted once per
phase by weight plus beta.  Each first-matrix row k in I scans that shared
array through a head pointer; a max-heap over head values, with equal keys
collapsed into one root, yields every triple attaining the next potential
increase.  Pairs whose value would be nonnegative can never carry a nonzero
product while the phase lasts and are skipped for good.
"""

from __future__ import annotations

import heapq


class KappaScheduler:
    def __init__(
        self,
        c: list[int],
        beta: list[int],
        alpha: list[int],
        I: set[int],
        J: set[int],
        live_J: set[int],
    ):
        self.alpha = alpha  # shared with the solver, mutated by kappa updates
        self.live_J = live_J  # shared with the phase, shrinks over time
        self.shift = 0
        m = len(c)
        # Merge |J| per-row streams, each already sorted by descending weight.
        order = sorted(range(m), key=lambda i: (-c[i], i))
        streams: list[tuple[int, int, int]] = []
        for l in sorted(J):
            streams.append((-(c[order[0]] + beta[l]), l, 0))
        heapq.heapify(streams)
        merged: list[tuple[int, tuple[int, int]]] = []
        while streams:
            negval, l, pos = heapq.heappop(streams)
            merged.append((-negval, (order[pos], l)))
            if pos + 1 < m:
                heapq.heappush(streams, (-(c[order[pos + 1]] + beta[l]), l, pos + 1))
        # Group equal values; strictly decreasing group values.
        self.groups: list[tuple[int, list[tuple[int, int]]]] = []
        for val, pair in merged:
            if self.groups and self.groups[-1][0] == val:
                self.groups[-1][1].append(pair)
            else:
                self.groups.append((val, [pair]))
        self.heads: dict[int, int] = {}
        self.heap: list[tuple[int, int]] = []  # (-invariant_key, k)
        self.add_rows(sorted(I))

    # invariant_key(k, e) = alpha[k] + value[e] - shift; the true value of the
    # head is invariant_key + shift, and every future kappa raises alpha[k]
    # and shift together, so heap order never goes stale.

    def _admit(self, k: int, start: int) -> None:
        a = self.alpha[k]
        for e in range(start, len(self.groups)):
            val, pairs = self.groups[e]
            if a + val >= 0:
                continue
            if any(l in self.live_J for (_, l) in pairs):
                self.heads[k] = e
                heapq.heappush(self.heap, (-(a + val - self.shift), k))
                return
        self.heads.pop(k, None)

    def add_rows(self, ks) -> None:
        for k in ks:
            self._admit(k, 0)

    def advance(self, ks) -> None:
        for k in ks:
            if k in self.heads:
                self._admit(k, self.heads[k] + 1)

    def pop_root(self) -> tuple[int, list[tuple[int, int]]] | None:
        """Pop every head attaining the next increase; returns (gap, entries).

        The gap is not applied here: the caller checks the root for a live
        entry first and calls :meth:`note_applied` only when the potentials
        actually move, so roots of dead pairs cost nothing.
        """
        while self.heap:
            negikey, _ = self.heap[0]
            gap = -(-negikey + self.shift)
            root: list[tuple[int, int]] = []
            while self.heap and self.heap[0][0] == negikey:
                _, k = heapq.heappop(self.heap)
                if k in self.heads:
                    root.append((k, self.heads[k]))
            if not root:
                continue
            if gap < 1:
                raise AssertionError("scheduler produced a nonpositive increase")
            return gap, sorted(root)
        return None

    def note_applied(self, kappa: int) -> None:
        self.shift += kappa

    def triples_of(self, root: list[tuple[int, int]]) -> list[tuple[int, int, int]]:
        triples = set()
        for k, e in root:
            for i, l in self.groups[e][1]:
                if l in self.live_J:
                    triples.add((i, k, l))
        return sorted(triples)
