"""Brute-force ground truth for small weighted matroid intersection instances."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .matroid import LinearMatroid

MINUS_INF = float("-inf")
DEFAULT_CAP = 20
CAP_ENV_VAR = "DEGWMI_ORACLE_CAP"


class TooLargeError(ValueError):
    """Instance exceeds the enumeration cap."""


@dataclass
class OracleResult:
    best_by_card: dict[int, int]
    degdet_perfect: int | float

    def max_common_rank(self) -> int:
        return max(self.best_by_card)


def default_cap() -> int:
    return int(os.environ.get(CAP_ENV_VAR, DEFAULT_CAP))


def brute_force(inst, cap: int | None = None) -> OracleResult:
    """Enumerate all common independent sets, best weight per cardinality.

    Sets are grown one element at a time so that supersets of dependent sets
    are never visited.  The perfect-cardinality degree equals the best weight
    over common independent sets of full size n, or -inf when none exists.
    """
    cap = default_cap() if cap is None else cap
    m = inst.A.cols
    n = inst.A.rows
    if m > cap:
        raise TooLargeError(f"m={m} exceeds enumeration cap {cap}")
    ma = LinearMatroid(inst.A)
    mb = LinearMatroid(inst.B)
    best: dict[int, int] = {0: 0}
    frontier: list[tuple[int, ...]] = [()]
    k = 0
    while frontier:
        extended: list[tuple[int, ...]] = []
        for base in frontier:
            start = base[-1] + 1 if base else 0
            for j in range(start, m):
                cand = base + (j,)
                if ma.is_independent(cand) and mb.is_independent(cand):
                    extended.append(cand)
        if not extended:
            break
        k += 1
        best[k] = max(sum(inst.c[i] for i in s) for s in extended)
        frontier = extended
    perfect = best.get(n, MINUS_INF)
    return OracleResult(best, perfect)
