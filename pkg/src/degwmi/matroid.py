"""Linear matroid queries over the columns of an exact matrix."""

from __future__ import annotations

from typing import Iterable

from .exactla import ExactMatrix, rank


class NotDependentError(ValueError):
    """Raised by circuit queries when no circuit exists."""


class LinearMatroid:
    """Matroid on column indices whose independent sets are independent columns.

    Read-only after construction; queries recompute ranks, trading speed for
    an obviously correct oracle.
    """

    def __init__(self, generator: ExactMatrix):
        self.generator = generator
        self.ground_size = generator.cols

    def _rank_of(self, cols: Iterable[int]) -> int:
        return rank(self.generator.columns(cols))

    def is_independent(self, X: Iterable[int]) -> bool:
        cols = sorted(set(X))
        return self._rank_of(cols) == len(cols)

    def rank_fn(self, X: Iterable[int]) -> int:
        return self._rank_of(sorted(set(X)))

    def in_circuit(self, X: Iterable[int], i: int, j: int) -> bool:
        """Whether j lies in the unique circuit of X + i.

        X must be independent with X + i dependent; then the circuit is
        unique and j belongs to it iff X + i - j is independent.
        """
        Xs = set(X)
        if i in Xs:
            raise ValueError("i must be outside X")
        if j not in Xs and j != i:
            return False
        if self._rank_of(sorted(Xs | {i})) == len(Xs) + 1:
            raise NotDependentError("X + i is independent, no circuit exists")
        if j == i:
            return True
        swapped = sorted((Xs | {i}) - {j})
        return self._rank_of(swapped) == len(Xs)
