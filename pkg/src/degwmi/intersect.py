"""Unweighted linear matroid intersection on X-diagonal matrices.

The exchange graph is read off the zero patterns of the two reduced
matrices: a column outside X is a source (sink) if it has a nonzero entry
in a row not claimed by X in the first (second) matrix, and arcs run from
X-elements along their pivot rows.  Augmentation follows shortest paths
with deterministic lowest-index tie-breaking.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .exactla import ExactMatrix, is_x_diagonal, x_diagonalize
from .matroid import LinearMatroid


class NotDiagonalError(ValueError):
    """Raised when an input matrix does not have the required X-diagonal form."""


@dataclass
class ResidualGraph:
    """Exchange graph over ground set [m] with source/sink/reachable sets."""

    m: int
    arcs: set[tuple[int, int]]
    sources: set[int]
    sinks: set[int]
    reachable: set[int]

    def successors(self, u: int) -> list[int]:
        return sorted(v for (a, v) in self.arcs if a == u)


@dataclass
class DualCertificate:
    """Column set J with value rho_A(J) + rho_B(complement).

    The value is at least |X| for every common independent set X; equality
    certifies that X has maximum cardinality.
    """

    j_columns: frozenset[int]
    value: int


def _bfs_reachable(m: int, arcs: set[tuple[int, int]], sources: set[int]) -> set[int]:
    adj: dict[int, list[int]] = {}
    for u, v in arcs:
        adj.setdefault(u, []).append(v)
    for u in adj:
        adj[u].sort()
    seen = set(sorted(sources))
    queue = deque(sorted(sources))
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def build_residual(
    A_diag: ExactMatrix,
    B_diag: ExactMatrix,
    X: set[int],
    sigma_a: dict[int, int],
    sigma_b: dict[int, int],
    check: bool = True,
) -> ResidualGraph:
    """Exchange graph from the nonzero patterns of two X-diagonal matrices."""
    if check:
        if not is_x_diagonal(A_diag, X, sigma_a):
            raise NotDiagonalError("first matrix is not X-diagonal under sigma_a")
        if not is_x_diagonal(B_diag, X, sigma_b):
            raise NotDiagonalError("second matrix is not X-diagonal under sigma_b")
    m = A_diag.cols
    n = A_diag.rows
    free_a = [k for k in range(n) if k not in set(sigma_a[i] for i in X)]
    free_b = [k for k in range(n) if k not in set(sigma_b[i] for i in X)]
    sources = {
        j for j in range(m) if j not in X and any(A_diag.get(k, j) != 0 for k in free_a)
    }
    sinks = {
        j for j in range(m) if j not in X and any(B_diag.get(k, j) != 0 for k in free_b)
    }
    arcs: set[tuple[int, int]] = set()
    for i in sorted(X):
        row_a = A_diag.row(sigma_a[i])
        row_b = B_diag.row(sigma_b[i])
        for j in range(m):
            if j == i:
                continue
            if j not in sources and row_a[j] != 0:
                arcs.add((i, j))
            if j not in sinks and row_b[j] != 0:
                arcs.add((j, i))
    reachable = _bfs_reachable(m, arcs, sources)
    return ResidualGraph(m, arcs, sources, sinks, reachable)


def shortest_augmenting_path(graph: ResidualGraph) -> list[int] | None:
    """Shortest source-to-sink path, lowest node index first among ties."""
    adj: dict[int, list[int]] = {}
    for u, v in graph.arcs:
        adj.setdefault(u, []).append(v)
    for u in adj:
        adj[u].sort()
    parent: dict[int, int | None] = {s: None for s in sorted(graph.sources)}
    queue = deque(sorted(graph.sources))
    while queue:
        u = queue.popleft()
        if u in graph.sinks:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            path.reverse()
            return path
        for v in adj.get(u, ()):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    return None


def augment(graph: ResidualGraph, X: set[int]) -> set[int] | None:
    """X symmetric-difference the node set of a shortest path, or None."""
    path = shortest_augmenting_path(graph)
    if path is None:
        return None
    return X.symmetric_difference(path)


def certificate_rows(
    X: set[int],
    reachable: set[int],
    sigma_a: dict[int, int],
    sigma_b: dict[int, int],
    n: int,
) -> tuple[set[int], set[int], set[int], set[int]]:
    """Row index sets (I, J, I*, J*) of the certified zero block.

    I indexes rows of the first matrix, J rows of the second; together they
    satisfy |I| + |J| = 2n - |X| when no sink is reachable.
    """
    i_star = set(range(n)) - {sigma_a[i] for i in X}
    j_star = set(range(n)) - {sigma_b[i] for i in X}
    I = {sigma_a[i] for i in X & reachable} | i_star
    J = {sigma_b[i] for i in X - reachable} | j_star
    return I, J, i_star, j_star


def dual_certificate(A: ExactMatrix, B: ExactMatrix, reachable: set[int]) -> DualCertificate:
    """Column certificate from the reachable set: J is its complement."""
    m = A.cols
    j_cols = frozenset(range(m)) - frozenset(reachable)
    ma = LinearMatroid(A)
    mb = LinearMatroid(B)
    value = ma.rank_fn(j_cols) + mb.rank_fn(set(range(m)) - j_cols)
    return DualCertificate(frozenset(j_cols), value)


def max_common_independent(
    A: ExactMatrix, B: ExactMatrix
) -> tuple[set[int], DualCertificate]:
    """Edmonds' algorithm for the maximum common independent set.

    Returns the set together with a dual certificate whose value equals its
    cardinality.
    """
    if A.cols != B.cols:
        raise ValueError("matrices must share the column count")
    X: set[int] = set()
    work_a = A.copy()
    work_b = B.copy()
    sigma_a: dict[int, int] = {}
    sigma_b: dict[int, int] = {}
    while True:
        work_a, _, sigma_a = x_diagonalize(work_a, X, {i: sigma_a[i] for i in X if i in sigma_a})
        work_b, _, sigma_b = x_diagonalize(work_b, X, {i: sigma_b[i] for i in X if i in sigma_b})
        graph = build_residual(work_a, work_b, X, sigma_a, sigma_b)
        if graph.reachable & graph.sinks:
            bigger = augment(graph, X)
            assert bigger is not None and len(bigger) == len(X) + 1
            X = bigger
            continue
        return X, dual_certificate(A, B, graph.reachable)
