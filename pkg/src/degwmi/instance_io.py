"""Instance files and seeded instance generation.

Line-oriented plain text: a header ``WMI n m``, n rows of the first matrix,
n rows of the second, then one line of m integer weights.  Entries are
rational literals, ``p/q`` or integer shorthand.  Blank lines and ``#``
comments are ignored.
"""

from __future__ import annotations

import random

from .degdet import WmiInstance
from .exactla import ExactMatrix, format_scalar, parse_scalar


class ParseError(ValueError):
    """Malformed instance text."""


class ValidationError(ValueError):
    """Well-formed text describing an invalid instance."""


def parse_instance(text: str) -> WmiInstance:
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty instance file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "WMI":
        raise ParseError("header must be 'WMI n m'")
    try:
        n, m = int(header[1]), int(header[2])
    except ValueError as exc:
        raise ParseError("header dimensions must be integers") from exc
    if n < 1 or m < 1:
        raise ValidationError("dimensions must be positive")
    if len(lines) != 1 + 2 * n + 1:
        raise ParseError(f"expected {1 + 2 * n + 1} content lines, found {len(lines)}")

    def read_matrix(start: int) -> ExactMatrix:
        rows = []
        for r in range(n):
            parts = lines[start + r].split()
            if len(parts) != m:
                raise ParseError(f"row {r + 1} has {len(parts)} entries, expected {m}")
            try:
                rows.append([parse_scalar(p) for p in parts])
            except ValueError as exc:
                raise ParseError(f"bad rational literal in row {r + 1}") from exc
        return ExactMatrix.from_rows(rows)

    A = read_matrix(1)
    B = read_matrix(1 + n)
    parts = lines[1 + 2 * n].split()
    if len(parts) != m:
        raise ParseError(f"weight line has {len(parts)} entries, expected {m}")
    try:
        c = [int(p) for p in parts]
    except ValueError as exc:
        raise ParseError("weights must be integers") from exc
    try:
        return WmiInstance(A, B, c)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def render_instance(inst: WmiInstance) -> str:
    out = [f"WMI {inst.n} {inst.m}"]
    for M in (inst.A, inst.B):
        for i in range(inst.n):
            out.append(" ".join(format_scalar(M.get(i, j)) for j in range(inst.m)))
    out.append(" ".join(str(w) for w in inst.c))
    return "\n".join(out) + "\n"


def load_instance(path: str) -> WmiInstance:
    with open(path) as fh:
        return parse_instance(fh.read())


def save_instance(inst: WmiInstance, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(render_instance(inst))


def generate_instance(
    seed: int,
    n: int,
    m: int,
    entry_range: tuple[int, int] = (-2, 2),
    weight_range: tuple[int, int] = (-5, 5),
    density: float = 1.0,
) -> WmiInstance:
    """Deterministic random instance; zero columns are redrawn until none remain."""
    lo, hi = entry_range
    nonzero = [v for v in range(lo, hi + 1) if v != 0]
    if not nonzero:
        raise ValidationError("entry range contains no nonzero value")
    rng = random.Random(seed)

    def draw_column() -> list[int]:
        while True:
            col = [
                rng.choice(nonzero) if rng.random() < density else 0 for _ in range(n)
            ]
            if any(col):
                return col

    def draw_matrix() -> ExactMatrix:
        cols = [draw_column() for _ in range(m)]
        return ExactMatrix.from_rows([[cols[j][i] for j in range(m)] for i in range(n)])

    A = draw_matrix()
    B = draw_matrix()
    c = [rng.randint(weight_range[0], weight_range[1]) for _ in range(m)]
    return WmiInstance(A, B, c)
