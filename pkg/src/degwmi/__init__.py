"""Exact weighted linear matroid intersection.

Main entry points: :func:`solve_heap` and :func:`solve_naive` (the
degree-of-determinant engine), :func:`frank_solve` (weight splitting
reference), :func:`brute_force` (enumeration oracle), and
:func:`compare_traces` (structural equivalence checks).
"""

from .compare import ComparisonReport, compare_traces, make_view_hook
from .degdet import (
    MINUS_INF,
    CardinalityRecord,
    InvariantViolation,
    NotProperError,
    Potential,
    SolveResult,
    WeightSplitting,
    WmiInstance,
    classify_event,
    extract_zero_part,
    initial_potential,
    kappa_scan,
    kappa_step,
    solve_heap,
    solve_naive,
    splitting_from,
    verify_splitting_certificate,
)
from .exactla import (
    DependentColumnsError,
    ExactMatrix,
    RowOp,
    apply_rowops,
    rank,
    x_diagonalize,
)
from .frank import frank_solve
from .instance_io import (
    ParseError,
    ValidationError,
    generate_instance,
    load_instance,
    parse_instance,
    render_instance,
    save_instance,
)
from .intersect import (
    DualCertificate,
    NotDiagonalError,
    ResidualGraph,
    augment,
    build_residual,
    certificate_rows,
    dual_certificate,
    max_common_independent,
)
from .matroid import LinearMatroid, NotDependentError
from .oracle import OracleResult, TooLargeError, brute_force

__all__ = [
    "MINUS_INF",
    "CardinalityRecord",
    "ComparisonReport",
    "DependentColumnsError",
    "DualCertificate",
    "ExactMatrix",
    "InvariantViolation",
    "LinearMatroid",
    "NotDependentError",
    "NotDiagonalError",
    "NotProperError",
    "OracleResult",
    "ParseError",
    "Potential",
    "ResidualGraph",
    "RowOp",
    "SolveResult",
    "TooLargeError",
    "ValidationError",
    "WeightSplitting",
    "WmiInstance",
    "apply_rowops",
    "augment",
    "brute_force",
    "build_residual",
    "certificate_rows",
    "classify_event",
    "compare_traces",
    "dual_certificate",
    "extract_zero_part",
    "frank_solve",
    "generate_instance",
    "initial_potential",
    "kappa_scan",
    "kappa_step",
    "load_instance",
    "make_view_hook",
    "max_common_independent",
    "parse_instance",
    "rank",
    "render_instance",
    "save_instance",
    "solve_heap",
    "solve_naive",
    "splitting_from",
    "verify_splitting_certificate",
    "x_diagonalize",
]
