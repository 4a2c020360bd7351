"""Structured trace events shared by the solvers and the comparator.

A trace is an ordered list of plain dicts, one per event, serialized as
line-delimited JSON.  Kinds used by the degree-of-determinant engine:
``init``, ``split`` (weight splitting snapshot), ``diag_op`` (row operation
from re-diagonalization), ``graph`` (exchange-graph snapshot), ``kappa``
(potential increase), ``event`` (case A1/B1/A2/B2), ``augment``,
``terminate``.  The Frank solver reuses ``init``/``graph``/``augment``/
``terminate`` and adds ``epsilon``.
"""

from __future__ import annotations

import json
from typing import Any


class Tracer:
    """Collects events and operation counters during one solve."""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.records: list[dict[str, Any]] = []
        self.row_ops = 0
        self.case_counts = {"A1": 0, "B1": 0, "A2": 0, "B2": 0}
        self.kappa_steps = 0
        self.epsilon_steps = 0

    def emit(self, kind: str, **fields) -> None:
        if not self.enabled:
            return
        rec = {"kind": kind}
        rec.update(fields)
        self.records.append(rec)

    def count_ops(self, k: int) -> None:
        self.row_ops += k

    def count_case(self, case: str) -> None:
        self.case_counts[case] += 1

    def of_kind(self, kind: str) -> list[dict[str, Any]]:
        return [r for r in self.records if r["kind"] == kind]


def _jsonable(value):
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    return value


def dump_trace(records: list[dict[str, Any]], path: str) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps({k: _jsonable(v) for k, v in rec.items()}) + "\n")


def load_trace(path: str) -> list[dict[str, Any]]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]
