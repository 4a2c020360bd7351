"""Weighted linear matroid intersection through degrees of determinants.

The instance (A, B, c) encodes the rational matrix sum of a_i b_i^T x_i t^{c_i};
the solver maintains integer row potentials (alpha, beta) standing in for
diagonal scaling matrices, keeps the pair proper (alpha_k + beta_l + c_i <= 0
on every nonzero product), and works on the top-degree matrices A0, B0 whose
entries survive exactly on tight constraints.  Augmenting paths on the
exchange graph of M(A0), M(B0) grow a common independent set; when no path
exists, the certified zero block dictates the smallest potential increase
that creates a new tight entry.  Each augmentation yields a maximum-weight
common independent set of its cardinality, certified by a weight splitting.

Two drivers share this state: a naive one that rescans everything per
iteration, and an event-driven one that schedules candidate tight triples
in a merged sorted array plus a max-heap of per-row head pointers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .exactla import ExactMatrix, RowOp
from .exactla import x_diagonalize as _x_diagonalize
from .intersect import (
    ResidualGraph,
    build_residual,
    certificate_rows,
    dual_certificate,
    shortest_augmenting_path,
)
from .matroid import LinearMatroid
from .scheduler import KappaScheduler
from .trace import Tracer

MINUS_INF = float("-inf")


class NotProperError(ValueError):
    """A potential violates properness for the given instance."""


class InvariantViolation(AssertionError):
    """A structural invariant failed during a solve."""


@dataclass
class WmiInstance:
    A: ExactMatrix
    B: ExactMatrix
    c: list[int]

    def __post_init__(self):
        if self.A.rows != self.B.rows or self.A.cols != self.B.cols:
            raise ValueError("A and B must have equal dimensions")
        if len(self.c) != self.A.cols:
            raise ValueError("weight vector length must equal the column count")
        if not all(isinstance(w, int) for w in self.c):
            raise ValueError("weights must be integers")
        if self.A.rows == 0 or self.A.cols == 0:
            raise ValueError("instance must be nonempty")
        for j in range(self.A.cols):
            if not self.A.column_support(j):
                raise ValueError(f"A has a zero column at {j}")
            if not self.B.column_support(j):
                raise ValueError(f"B has a zero column at {j}")

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.A.cols

    def weight(self, X) -> int:
        return sum(self.c[i] for i in X)


@dataclass
class Potential:
    alpha: list[int]
    beta: list[int]

    def copy(self) -> "Potential":
        return Potential(list(self.alpha), list(self.beta))


@dataclass(frozen=True)
class WeightSplitting:
    c1: tuple[int, ...]
    c2: tuple[int, ...]


@dataclass(frozen=True)
class CardinalityRecord:
    size: int
    columns: frozenset[int]
    weight: int
    splitting: WeightSplitting


@dataclass
class SolveResult:
    degdet: int | float
    by_cardinality: dict[int, CardinalityRecord]
    best: CardinalityRecord
    splitting: WeightSplitting
    tracer: Tracer

    @property
    def x_star(self) -> frozenset[int]:
        return self.best.columns


def initial_potential(inst: WmiInstance) -> Potential:
    """Uniform starting potential: alpha at minus the largest weight, beta zero."""
    top = max(inst.c)
    return Potential([-top] * inst.n, [0] * inst.n)


def _column_tops(M: ExactMatrix, values: list[int], j: int) -> tuple[int, list[int]]:
    support = M.column_support(j)
    top = max(values[k] for k in support)
    return top, support


def extract_zero_part(
    A: ExactMatrix, B: ExactMatrix, c: list[int], pot: Potential
) -> tuple[ExactMatrix, ExactMatrix]:
    """Top-degree matrices: entries surviving on tight potential constraints.

    A column is tight when its best alpha-row plus best beta-row plus weight
    is exactly zero; tight columns keep their entries on best rows only,
    all other columns become zero.  Raises NotProperError if any column
    overshoots zero.
    """
    n, m = A.rows, A.cols
    A0 = ExactMatrix.zeros(n, m)
    B0 = ExactMatrix.zeros(n, m)
    for j in range(m):
        top_a, sup_a = _column_tops(A, pot.alpha, j)
        top_b, sup_b = _column_tops(B, pot.beta, j)
        slack = top_a + top_b + c[j]
        if slack > 0:
            raise NotProperError(f"column {j} violates properness by {slack}")
        if slack == 0:
            for k in sup_a:
                if pot.alpha[k] == top_a:
                    A0.set(k, j, A.get(k, j))
            for k in sup_b:
                if pot.beta[k] == top_b:
                    B0.set(k, j, B.get(k, j))
    return A0, B0


def splitting_from(B: ExactMatrix, beta: list[int], c: list[int]) -> WeightSplitting:
    """Weight splitting induced by the second matrix and its potential.

    The second part of each weight is minus the best beta over the column's
    support; the first part is the remainder.  Row operations inside one
    beta level never change it.
    """
    c2 = []
    for j in range(B.cols):
        top, _ = _column_tops(B, beta, j)
        c2.append(-top)
    c1 = [c[j] - c2[j] for j in range(len(c))]
    return WeightSplitting(tuple(c1), tuple(c2))


def verify_splitting_certificate(inst: WmiInstance, X, ws: WeightSplitting) -> bool:
    """Certify that X is a maximum-weight common independent set of its size.

    Checks that the splitting sums to the weights, X is common independent,
    and no single exchange improves either side: the classical optimality
    criterion for fixed-cardinality independent sets in a matroid.
    """
    m = inst.m
    if len(ws.c1) != m or len(ws.c2) != m:
        return False
    if any(ws.c1[i] + ws.c2[i] != inst.c[i] for i in range(m)):
        return False
    Xs = set(X)
    ma = LinearMatroid(inst.A)
    mb = LinearMatroid(inst.B)
    if not (ma.is_independent(Xs) and mb.is_independent(Xs)):
        return False
    outside = [i for i in range(m) if i not in Xs]
    for i in outside:
        for j in Xs:
            swapped = (Xs | {i}) - {j}
            if ws.c1[i] > ws.c1[j] and ma.is_independent(swapped):
                return False
            if ws.c2[i] > ws.c2[j] and mb.is_independent(swapped):
                return False
    return True


def kappa_scan(
    A: ExactMatrix,
    B: ExactMatrix,
    c: list[int],
    pot: Potential,
    I: set[int],
    J: set[int],
) -> int | None:
    """Exhaustive potential-increase bound over the certified zero block.

    Returns the smallest increase creating a tight nonzero product with a
    row of I against a row of J, or None when no product exists there.
    """
    best = None
    for j in range(A.cols):
        sup_a = [k for k in I if A.get(k, j) != 0]
        sup_b = [k for k in J if B.get(k, j) != 0]
        if sup_a and sup_b:
            val = c[j] + max(pot.alpha[k] for k in sup_a) + max(pot.beta[k] for k in sup_b)
            if best is None or val > best:
                best = val
    if best is None:
        return None
    if best >= 0:
        raise InvariantViolation("zero block contains a tight nonzero product")
    return -best


def classify_event(X: set[int], reachable: set[int], i: int) -> str:
    """Case label for a new tight entry in column i of the zero block."""
    if i in X:
        return "A1" if i not in reachable else "B1"
    return "A2" if i not in reachable else "B2"


def kappa_step(
    state: "SolverState",
    I: set[int],
    J: set[int],
    istar: set[int] | None = None,
    jstar: set[int] | None = None,
) -> tuple[int | None, Potential]:
    """One dual adjustment: find the smallest useful increase and apply it.

    Returns (None, potential) untouched when no product exists in the block,
    signalling minus infinity together with the running-bound guard.
    """
    kappa = kappa_scan(state.A, state.B, state.c, state.pot, I, J)
    if kappa is None:
        return None, state.pot
    state.apply_kappa(kappa, I, J, istar or set(), jstar or set())
    return kappa, state.pot


@dataclass
class SolveOptions:
    validate: bool = True
    trace: bool = True
    snapshot_hook: Callable | None = None


class SolverState:
    """Mutable state shared by the naive and the heap-scheduled drivers."""

    def __init__(self, inst: WmiInstance, options: SolveOptions | None = None):
        self.inst = inst
        self.opts = options or SolveOptions()
        self.n = inst.n
        self.m = inst.m
        self.c = list(inst.c)
        self.A = inst.A.copy()
        self.B = inst.B.copy()
        self.pot = initial_potential(inst)
        self.X: set[int] = set()
        self.sigma_a: dict[int, int] = {}
        self.sigma_b: dict[int, int] = {}
        self.A0: ExactMatrix | None = None
        self.B0: ExactMatrix | None = None
        self.cum_dual = 0
        self.bound_crossed = False
        self.tracer = Tracer(enabled=self.opts.trace)
        self.records: dict[int, CardinalityRecord] = {}
        self._prev_istar: set[int] | None = None
        self._prev_jstar: set[int] | None = None
        self._record_current()
        self.tracer.emit(
            "init",
            n=self.n,
            m=self.m,
            c=list(self.c),
            alpha=list(self.pot.alpha),
            beta=list(self.pot.beta),
        )

    # -- bookkeeping ----------------------------------------------------

    @property
    def dstar(self) -> int:
        return -(sum(self.pot.alpha) + sum(self.pot.beta))

    def splitting(self) -> WeightSplitting:
        return splitting_from(self.B, self.pot.beta, self.c)

    def _record_current(self) -> None:
        k = len(self.X)
        self.records[k] = CardinalityRecord(
            k, frozenset(self.X), self.inst.weight(self.X), self.splitting()
        )

    def _extract(self) -> None:
        self.A0, self.B0 = extract_zero_part(self.A, self.B, self.c, self.pot)

    # -- step 1: re-diagonalization --------------------------------------

    def rediagonalize(self) -> int:
        """Clean the X columns of both top-degree matrices, mutating A and B.

        Row operations act on the working matrices; because every operation
        mixes rows of one potential level, extraction commutes with them and
        is simply recomputed.  Non-tight entries feeding freshly tightened
        positions can require a second sweep; more indicates a bug.
        """
        ops_total = 0
        for sweep in range(self.n + 2):
            self._extract()
            _, log_a, sig_a = _x_diagonalize(self.A0, self.X, self.sigma_a)
            _, log_b, sig_b = _x_diagonalize(self.B0, self.X, self.sigma_b)
            self.sigma_a = sig_a
            self.sigma_b = sig_b
            if not log_a and not log_b:
                return ops_total
            for op in log_a:
                self.A.apply_op(op)
                self._emit_op("A", op)
            for op in log_b:
                self.B.apply_op(op)
                self._emit_op("B", op)
            ops_total += len(log_a) + len(log_b)
        raise InvariantViolation("re-diagonalization did not settle")

    def _emit_op(self, which: str, op: RowOp) -> None:
        self.tracer.count_ops(1)
        self.tracer.emit(
            "diag_op",
            matrix=which,
            op=op.kind,
            target=op.target,
            source=op.source,
            coeff=str(op.coeff),
        )

    def step1_snapshot(self) -> None:
        """Emit the entry snapshot with the pre-cleanup top-degree matrices."""
        self._extract()
        ws = self.splitting()
        self.tracer.emit(
            "state",
            X=sorted(self.X),
            alpha=list(self.pot.alpha),
            beta=list(self.pot.beta),
            A0=_grid(self.A0),
            B0=_grid(self.B0),
            cum=self.cum_dual,
        )
        self.tracer.emit("split", c1=list(ws.c1), c2=list(ws.c2), cum=self.cum_dual)

    # -- step 2: graph ----------------------------------------------------

    def build_graph(self) -> ResidualGraph:
        return build_residual(
            self.A0, self.B0, self.X, self.sigma_a, self.sigma_b, check=self.opts.validate
        )

    def emit_graph(self, graph: ResidualGraph) -> None:
        fields = dict(
            X=sorted(self.X),
            S=sorted(graph.sources),
            T=sorted(graph.sinks),
            R=sorted(graph.reachable),
            arcs=sorted(graph.arcs),
            alpha=list(self.pot.alpha),
            beta=list(self.pot.beta),
            cum=self.cum_dual,
        )
        if self.opts.snapshot_hook is not None:
            fields["view"] = self.opts.snapshot_hook(self, graph)
        self.tracer.emit("graph", **fields)

    def block_rows(self, graph: ResidualGraph) -> tuple[set[int], set[int], set[int], set[int]]:
        return certificate_rows(self.X, graph.reachable, self.sigma_a, self.sigma_b, self.n)

    # -- augmentation -----------------------------------------------------

    def apply_augmentation(self, graph: ResidualGraph, path: list[int]) -> None:
        """Grow X along a shortest path, handing pivot rows along the path.

        Interior exchanges inherit the leaving element's pivot rows, the
        path's first node takes a fresh free row on the A side and its last
        a fresh free row on the B side.  The hand-off keeps freed rows out
        of circulation, so the free-row blocks of both potentials stay flat.
        """
        used_a = {self.sigma_a[i] for i in self.X}
        used_b = {self.sigma_b[i] for i in self.X}

        def fresh(M0: ExactMatrix, col: int, used: set[int]) -> int:
            for k in range(self.n):
                if k not in used and M0.get(k, col) != 0:
                    return k
            raise InvariantViolation(f"no free pivot row for column {col}")

        new_sa = dict(self.sigma_a)
        new_sb = dict(self.sigma_b)
        s, t = path[0], path[-1]
        new_sa[s] = fresh(self.A0, s, used_a)
        for e in range(2, len(path), 2):
            new_sa[path[e]] = self.sigma_a[path[e - 1]]
        for e in range(0, len(path) - 1, 2):
            new_sb[path[e]] = self.sigma_b[path[e + 1]]
        new_sb[t] = fresh(self.B0, t, used_b)
        for e in range(1, len(path), 2):
            del new_sa[path[e]]
            del new_sb[path[e]]
        self.X = self.X.symmetric_difference(path)
        self.sigma_a = new_sa
        self.sigma_b = new_sb
        self._record_current()
        rec = self.records[len(self.X)]
        self.tracer.emit(
            "augment",
            path=list(path),
            X=sorted(self.X),
            k=len(self.X),
            weight=rec.weight,
            c1=list(rec.splitting.c1),
            c2=list(rec.splitting.c2),
            cum=self.cum_dual,
        )

    def do_augment(self, graph: ResidualGraph) -> None:
        path = shortest_augmenting_path(graph)
        if path is None:
            raise InvariantViolation("augment requested without a path")
        self.apply_augmentation(graph, path)

    # -- potential update ---------------------------------------------------

    def apply_kappa(
        self, kappa: int, I: set[int], J: set[int], istar: set[int], jstar: set[int]
    ) -> None:
        before = self.dstar
        for k in I:
            self.pot.alpha[k] += kappa
        for k in range(self.n):
            if k not in J:
                self.pot.beta[k] -= kappa
        self.cum_dual += kappa
        self.tracer.kappa_steps += 1
        self.tracer.emit(
            "kappa",
            kappa=kappa,
            I=sorted(I),
            J=sorted(J),
            I_star=sorted(istar),
            J_star=sorted(jstar),
            alpha=list(self.pot.alpha),
            beta=list(self.pot.beta),
            cum=self.cum_dual,
        )
        if self.opts.validate:
            expected = before - kappa * (len(I) + len(J) - self.n)
            if self.dstar != expected:
                raise InvariantViolation("running bound update mismatch")

    def below_bound(self) -> bool:
        return self.dstar < self.n * min(self.c)

    def note_bound(self) -> None:
        """The running bound settles the perfect degree at minus infinity;
        lower-cardinality augmentations may still be pending, so only mark."""
        if not self.bound_crossed and self.below_bound():
            self.bound_crossed = True
            self.tracer.emit("bound_crossed", dstar=self.dstar, cum=self.cum_dual)

    def exhausted_reason(self) -> str:
        if self.bound_crossed:
            return "zero block exhausted (running bound crossed earlier)"
        return "zero block exhausted"

    # -- termination ---------------------------------------------------------

    def finish_perfect(self) -> SolveResult:
        degdet = self.dstar
        rec = self.records[self.n]
        if degdet != rec.weight:
            raise InvariantViolation("terminal bound differs from the perfect set weight")
        return self._result(degdet)

    def finish_minus_inf(self, reason: str) -> SolveResult:
        return self._result(MINUS_INF, reason=reason)

    def _result(self, degdet, reason: str | None = None) -> SolveResult:
        best = max(self.records.values(), key=lambda r: (r.weight, -r.size))
        self.tracer.emit(
            "terminate",
            degdet="-inf" if degdet == MINUS_INF else degdet,
            reason=reason,
            x_star=sorted(best.columns),
            weight=best.weight,
            by_card={k: sorted(r.columns) for k, r in self.records.items()},
        )
        return SolveResult(degdet, dict(self.records), best, self.splitting(), self.tracer)

    # -- invariants ------------------------------------------------------------

    def check_invariants(self, at_step1: bool) -> None:
        if not self.opts.validate:
            return
        self._extract()  # potentials may have moved since the last extraction
        alpha, beta, c = self.pot.alpha, self.pot.beta, self.c
        for j in range(self.m):
            top_a, sup_a = _column_tops(self.A, alpha, j)
            top_b, sup_b = _column_tops(self.B, beta, j)
            if top_a + top_b + c[j] > 0:
                raise InvariantViolation(f"properness violated at column {j}")
            # one potential level per top-degree column, zero strictly above it
            for M, M0, values, top in (
                (self.A, self.A0, alpha, top_a),
                (self.B, self.B0, beta, top_b),
            ):
                sup0 = M0.column_support(j)
                if sup0:
                    levels = {values[k] for k in sup0}
                    if len(levels) != 1:
                        raise InvariantViolation(f"column {j} spans several levels")
                    lvl = levels.pop()
                    for k in range(self.n):
                        if values[k] > lvl and M.get(k, j) != 0:
                            raise InvariantViolation(
                                f"nonzero above the top level in column {j}"
                            )
        ws = self.splitting()
        for j in range(self.m):
            sup_a0 = self.A0.column_support(j)
            sup_b0 = self.B0.column_support(j)
            if sup_a0 and sup_b0:
                if any(ws.c1[j] != -alpha[k] for k in sup_a0):
                    raise InvariantViolation(f"first split not tight at column {j}")
                if any(ws.c2[j] != -beta[k] for k in sup_b0):
                    raise InvariantViolation(f"second split not tight at column {j}")
            if any(self.A.get(k, j) != 0 and ws.c1[j] > -alpha[k] for k in range(self.n)):
                raise InvariantViolation(f"first split bound broken at column {j}")
            if any(self.B.get(k, j) != 0 and ws.c2[j] > -beta[k] for k in range(self.n)):
                raise InvariantViolation(f"second split bound broken at column {j}")
        istar = set(range(self.n)) - {self.sigma_a[i] for i in self.X}
        jstar = set(range(self.n)) - {self.sigma_b[i] for i in self.X}
        if istar and {alpha[k] for k in istar} != {max(alpha)}:
            raise InvariantViolation("free rows of the first potential are not flat at max")
        if jstar and {beta[k] for k in jstar} != {max(beta)}:
            raise InvariantViolation("free rows of the second potential are not flat at max")
        if self._prev_istar is not None and not istar <= self._prev_istar:
            raise InvariantViolation("free row set of A grew across augmentations")
        if self._prev_jstar is not None and not jstar <= self._prev_jstar:
            raise InvariantViolation("free row set of B grew across augmentations")
        self._prev_istar = istar
        self._prev_jstar = jstar
        if at_step1:
            if not (
                LinearMatroid(self.A0).is_independent(self.X)
                and LinearMatroid(self.B0).is_independent(self.X)
            ):
                raise InvariantViolation("X lost common independence on the top matrices")

    def check_zero_block(self, I: set[int], J: set[int], reachable: set[int]) -> None:
        """Post-update block structure: dead regions of A0 and B0 are zero."""
        if not self.opts.validate:
            return
        comp_i = [k for k in range(self.n) if k not in I]
        comp_j = [k for k in range(self.n) if k not in J]
        for j in reachable:
            for k in comp_i:
                if self.A0.get(k, j) != 0:
                    raise InvariantViolation("dead block of A0 has a nonzero entry")
        for j in range(self.m):
            if j in reachable:
                continue
            for k in comp_j:
                if self.B0.get(k, j) != 0:
                    raise InvariantViolation("dead block of B0 has a nonzero entry")

    def check_dual_value(self, graph: ResidualGraph) -> None:
        if not self.opts.validate:
            return
        cert = dual_certificate(self.A0, self.B0, graph.reachable)
        if cert.value != len(self.X):
            raise InvariantViolation("dual certificate does not match |X|")


def _grid(M: ExactMatrix) -> list[list[str]]:
    return [[str(M.get(i, j)) for j in range(M.cols)] for i in range(M.rows)]


# -- the naive driver ----------------------------------------------------------


def solve_naive(
    inst: WmiInstance,
    validate: bool = True,
    trace: bool = True,
    snapshot_hook: Callable | None = None,
) -> SolveResult:
    """Rescan-everything driver: one potential increase or one augmentation
    per iteration, top-degree matrices and the exchange graph rebuilt each time.

    Crossing the running bound settles the perfect-cardinality degree at
    minus infinity, but the climb continues until the zero block holds no
    product at all, so that every remaining augmentation (and with it every
    per-cardinality record) is still found.
    """
    state = SolverState(inst, SolveOptions(validate, trace, snapshot_hook))
    n, m = inst.n, inst.m
    limit = (n + 2) * (4 * n * m + 2 * (n + m) + 10) + 100
    for _ in range(limit):
        if len(state.X) == state.n:
            return state.finish_perfect()
        state.step1_snapshot()
        state.rediagonalize()
        state.check_invariants(at_step1=True)
        graph = state.build_graph()
        state.emit_graph(graph)
        if graph.reachable & graph.sinks:
            state.do_augment(graph)
            continue
        I, J, istar, jstar = state.block_rows(graph)
        state.check_dual_value(graph)
        kappa, _ = kappa_step(state, I, J, istar, jstar)
        if kappa is None:
            return state.finish_minus_inf(state.exhausted_reason())
        state.check_invariants(at_step1=False)
        state.note_bound()
    raise InvariantViolation("iteration limit exceeded")


# -- the heap-scheduled driver -------------------------------------------------


class _HeapPhase:
    """One dual-adjustment phase: from a sinkless graph to the next augmentation."""

    def __init__(self, state: SolverState, graph: ResidualGraph):
        self.state = state
        self.graph = graph
        # working sets carry speculative marks for in-root classification;
        # the rebuilt sets are the authority and stay monotone
        self.R = set(graph.reachable)
        self.S = set(graph.sources)
        self.T = set(graph.sinks)
        self.rebuilt = (set(graph.reachable), set(graph.sources), set(graph.sinks))
        I, J, istar, jstar = state.block_rows(graph)
        self.I, self.J = I, J
        self.istar, self.jstar = istar, jstar
        self.live_J = set(J)
        self.sched = KappaScheduler(
            state.c, state.pot.beta, state.pot.alpha, I, J, self.live_J
        )
        self.events_a2b2 = 0
        self.sink_hit = False
        self.had_kappa = False

    def run(self) -> str:
        state = self.state
        state.check_dual_value(self.graph)
        n, m = state.n, state.m
        limit = n * (m * n + 1) + 4 * n * m + 2 * (n + m) + 1000
        def scan():
            if not state.opts.validate:
                return None
            return kappa_scan(state.A, state.B, state.c, state.pot, self.I, self.J)

        next_real = scan()
        for _ in range(limit):
            popped = self.sched.pop_root()
            if popped is None:
                if state.opts.validate and next_real is not None:
                    raise InvariantViolation("scheduler ran dry before the scan bound")
                return "minus_inf:" + state.exhausted_reason()
            gap, root = popped
            triples = self.sched.triples_of(root)
            live = any(
                state.A.get(k, i) != 0 and state.B.get(l, i) != 0
                for i, k, l in triples
            )
            if not live:
                # only dead pairs attain this gap: nothing moves, as in the
                # rescan driver which jumps straight to the next live entry
                self.sched.advance([k for k, _ in root])
                continue
            # the scheduler reached a live entry exactly when the exhaustive
            # scan over the zero block said it would
            if state.opts.validate and gap != next_real:
                raise InvariantViolation(
                    f"scheduler stop {gap} differs from scan bound {next_real}"
                )
            state.apply_kappa(gap, self.I, self.J, self.istar, self.jstar)
            self.sched.note_applied(gap)
            self.had_kappa = True
            state.note_bound()
            r_at_kappa = set(self.R)
            touched = self._process_root(root, triples)
            if state.opts.validate and not touched:
                raise InvariantViolation("live root produced no work")
            if self._refresh(r_at_kappa):
                return "augmented"
            state.check_invariants(at_step1=False)
            self.sched.advance([k for k, _ in root])
            next_real = scan()
        raise InvariantViolation("phase iteration limit exceeded")

    def _process_root(self, root, triples) -> bool:
        """Handle every tight triple reachable from the queue root.

        Ordering matters and mirrors the rescan driver, which eliminates all
        new tight entries of X columns before reading the graph:

        - eliminations run first within each sweep, since their row
          operations can zero other root entries as a side effect;
        - sink discoveries come next, because a column that just became
          sink-addable loses its outgoing exchange arcs and must not pull
          pivot rows into the reachable set;
        - the remaining extensions run last.

        Eliminations can also flip other root positions nonzero, so the
        list is rescanned; by the structure of the update a third pass
        never finds fresh elimination work, and that is asserted.
        """
        state = self.state
        sb_inv = {v: k for k, v in state.sigma_b.items()}
        touched = False
        done: set[tuple[int, int, int]] = set()
        for sweep in range(3):
            progress = False
            for i, k, l in triples:
                if i not in state.X:
                    continue
                if state.A.get(k, i) == 0 or state.B.get(l, i) == 0:
                    continue
                if sweep >= 2:
                    raise InvariantViolation("root rescanned more than twice")
                self._eliminate(classify_event(state.X, self.R, i), i, k, l)
                progress = True
                touched = True
            for i, k, l in triples:
                if (i, k, l) in done or i in state.X or l not in self.jstar:
                    continue
                if state.A.get(k, i) == 0 or state.B.get(l, i) == 0:
                    continue
                done.add((i, k, l))
                touched = True
                if i not in self.T:
                    self._record_event(classify_event(state.X, self.R, i), i, k, l)
                    if k in self.istar:
                        self.S.add(i)
                    self.R.add(i)
                    self.T.add(i)
                    self.sink_hit = True
                    progress = True
            for i, k, l in triples:
                if (i, k, l) in done or i in state.X or l not in self.live_J:
                    continue
                if state.A.get(k, i) == 0 or state.B.get(l, i) == 0:
                    continue
                done.add((i, k, l))
                touched = True
                if self.sink_hit or i in self.T:
                    continue  # the phase is about to augment, no more graph surgery
                self._record_event(classify_event(state.X, self.R, i), i, k, l)
                if k in self.istar:
                    self.S.add(i)
                self.R.add(i)
                x = sb_inv[l]
                if state.opts.validate and x in self.R:
                    raise InvariantViolation("pivot row of a reached element stayed live")
                self.R.add(x)
                self.live_J.discard(l)
                progress = True
            if not progress:
                break
        return touched

    def _record_event(self, case: str, i: int, k: int, l: int) -> None:
        state = self.state
        state.tracer.count_case(case)
        state.tracer.emit("event", i=i, k=k, l=l, case=case, cum=state.cum_dual)
        if not self.sink_hit:
            # later sink marks in the same root are simultaneous discoveries
            self.events_a2b2 += 1
            if self.events_a2b2 > 2 * state.n + 2:
                raise InvariantViolation("too many graph events in one phase")

    def _eliminate(self, case: str, i: int, k: int, l: int) -> None:
        state = self.state
        state.tracer.count_case(case)
        state.tracer.emit("event", i=i, k=k, l=l, case=case, cum=state.cum_dual)
        if case == "A1":
            op = RowOp("addmul", k, state.sigma_a[i], -state.A.get(k, i))
            state.A.apply_op(op)
            state._emit_op("A", op)
        else:
            op = RowOp("addmul", l, state.sigma_b[i], -state.B.get(l, i))
            state.B.apply_op(op)
            state._emit_op("B", op)

    def _refresh(self, r_at_kappa: set[int]) -> bool:
        """Re-extract, re-clean, rebuild the graph; grow I, shrink J.

        Returns True when a reachable sink appeared, i.e. the phase ends in
        an augmentation.
        """
        state = self.state
        state.rediagonalize()
        if self.had_kappa:
            # dead blocks are relative to the sets the update was applied with
            state.check_zero_block(self.I, self.J, r_at_kappa)
        graph = state.build_graph()
        state.emit_graph(graph)
        if state.opts.validate:
            r0, s0, t0 = self.rebuilt
            if not (r0 <= graph.reachable and s0 <= graph.sources):
                raise InvariantViolation("reachable or source set shrank inside a phase")
            if not t0 <= graph.sinks:
                raise InvariantViolation("sink set shrank inside a phase")
        self.R = set(graph.reachable)
        self.S = set(graph.sources)
        self.T = set(graph.sinks)
        self.rebuilt = (set(graph.reachable), set(graph.sources), set(graph.sinks))
        self.graph = graph
        if graph.reachable & graph.sinks:
            state.do_augment(graph)
            return True
        self.sink_hit = False  # a marked sink can die to a same-root elimination
        I, J, istar, jstar = state.block_rows(graph)
        if state.opts.validate:
            if not (self.I <= I and J <= self.J):
                raise InvariantViolation("block rows lost monotonicity inside a phase")
        new_rows = I - self.I
        self.I, self.J = I, J
        self.istar, self.jstar = istar, jstar
        self.live_J.intersection_update(J)
        self.sched.add_rows(sorted(new_rows))
        return False


def solve_heap(
    inst: WmiInstance,
    validate: bool = True,
    trace: bool = True,
    snapshot_hook: Callable | None = None,
) -> SolveResult:
    """Event-driven driver scheduling tight-triple candidates in a heap.

    Between augmentations the candidate triples are kept in per-row sorted
    arrays over a shared merged list of weight-plus-beta values, with a
    max-heap over the per-row heads; equal keys collapse into one root.
    Results are identical to the naive driver.
    """
    state = SolverState(inst, SolveOptions(validate, trace, snapshot_hook))
    for _ in range(inst.n + inst.m + 2):
        if len(state.X) == state.n:
            return state.finish_perfect()
        state.step1_snapshot()
        state.rediagonalize()
        state.check_invariants(at_step1=True)
        graph = state.build_graph()
        state.emit_graph(graph)
        if graph.reachable & graph.sinks:
            state.do_augment(graph)
            continue
        outcome = _HeapPhase(state, graph).run()
        if outcome == "augmented":
            continue
        reason = outcome.split(":", 1)[1]
        return state.finish_minus_inf(reason)
    raise InvariantViolation("augmentation limit exceeded")
