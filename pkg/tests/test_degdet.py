import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degwmi.degdet import (
    MINUS_INF,
    NotProperError,
    Potential,
    WeightSplitting,
    WmiInstance,
    classify_event,
    extract_zero_part,
    initial_potential,
    kappa_scan,
    solve_heap,
    solve_naive,
    splitting_from,
    verify_splitting_certificate,
)
from degwmi.exactla import ExactMatrix
from degwmi.instance_io import generate_instance
from degwmi.oracle import brute_force
from degwmi.trace import dump_trace, load_trace

from conftest import identity_instance


def test_instance_rejects_zero_columns():
    A = ExactMatrix.from_rows([[1, 0], [0, 0]])
    B = ExactMatrix.identity(2)
    with pytest.raises(ValueError):
        WmiInstance(A, B, [1, 1])


def test_initial_potential(golden):
    pot = initial_potential(golden)
    assert pot.alpha == [-3, -3, -3, -3]
    assert pot.beta == [0, 0, 0, 0]
    assert initial_potential(identity_instance(3)).alpha == [0, 0, 0]
    inst = identity_instance(3, [7, 1, -2])
    assert initial_potential(inst).alpha == [-7, -7, -7]


def test_extract_golden_pre_state(golden):
    pot = Potential([-2, -2, -2, -2], [-1, 0, 0, 0])
    A0, B0 = extract_zero_part(golden.A, golden.B, golden.c, pot)
    assert A0.to_lists() == ExactMatrix.from_rows(
        [[0, 0, 1, 0, 0], [1, 1, 0, 0, 0], [0, 0, -1, 0, 0], [0, 1, 0, 0, 0]]
    ).to_lists()
    assert B0.to_lists() == ExactMatrix.from_rows(
        [[1, 0, 1, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 1, 0, 0, 0]]
    ).to_lists()
    assert B0.column(4) == [0, 0, 0, 0]
    assert A0.column(2) == [1, 0, -1, 0]


def test_extract_all_tight_when_flat():
    inst = identity_instance(3)
    A0, B0 = extract_zero_part(inst.A, inst.B, inst.c, Potential([0] * 3, [0] * 3))
    assert A0 == inst.A and B0 == inst.B


def test_extract_nothing_tight_after_shift(golden):
    pot = Potential([-3, -3, -3, -3], [-1, 0, 0, 0])
    A0, B0 = extract_zero_part(golden.A, golden.B, golden.c, pot)
    assert all(A0.column(j) == [0] * 4 for j in range(5))
    assert all(B0.column(j) == [0] * 4 for j in range(5))


def test_extract_rejects_improper(golden):
    with pytest.raises(NotProperError):
        extract_zero_part(golden.A, golden.B, golden.c, Potential([0] * 4, [0] * 4))


def test_splitting_golden_pre_state(golden):
    ws = splitting_from(golden.B, [-1, 0, 0, 0], golden.c)
    assert ws.c2 == (1, 0, 1, 0, 0)
    assert ws.c1 == (2, 2, 2, 1, 1)


def test_splitting_zero_weights():
    inst = identity_instance(3)
    ws = splitting_from(inst.B, [0, 0, 0], inst.c)
    assert ws.c1 == (0, 0, 0) and ws.c2 == (0, 0, 0)


def test_classify_event_cases():
    X, reach = {1, 2}, {2, 5}
    assert classify_event(X, reach, 1) == "A1"
    assert classify_event(X, reach, 2) == "B1"
    assert classify_event(X, reach, 0) == "A2"
    assert classify_event(X, reach, 5) == "B2"


def test_kappa_scan_golden_block(golden):
    # state right before the potential step at X = {0, 1}: one elimination
    # has been applied to A's row 1
    A = golden.A.copy()
    A.apply_op(__import__("degwmi.exactla", fromlist=["RowOp"]).RowOp("addmul", 1, 3, -1))
    pot = Potential([-2, -2, -2, -2], [-1, 0, 0, 0])
    kappa = kappa_scan(A, golden.B, golden.c, pot, {0, 1, 2}, {1, 2, 3})
    assert kappa == 1


def test_kappa_step_golden_block(golden):
    from degwmi.degdet import SolverState, kappa_step
    from degwmi.exactla import RowOp

    # drive state to the pinned step entry: X = {0, 1} after one elimination
    state = SolverState(golden, None)
    state.pot = Potential([-2, -2, -2, -2], [-1, 0, 0, 0])
    state.X = {0, 1}
    state.sigma_a = {0: 1, 1: 3}
    state.sigma_b = {0: 0, 1: 3}
    state.A.apply_op(RowOp("addmul", 1, 3, -1))
    kappa, pot = kappa_step(state, {0, 1, 2}, {1, 2, 3})
    assert kappa == 1
    assert pot.alpha == [-1, -1, -1, -2]
    assert pot.beta == [-2, 0, 0, 0]


def test_kappa_scan_unbounded():
    # no column has support meeting both row sets, so no product exists
    inst = identity_instance(2, [1, 1])
    pot = Potential([-1, -1], [0, 0])
    assert kappa_scan(inst.A, inst.B, inst.c, pot, {0}, {1}) is None


def test_solver_identity_diagonal():
    for n in (1, 2, 4):
        c = list(range(1, n + 1))
        inst = identity_instance(n, c)
        for solve in (solve_naive, solve_heap):
            res = solve(inst)
            assert res.degdet == sum(c)
            assert res.by_cardinality[n].columns == frozenset(range(n))


def test_solver_golden_trajectory(golden):
    for solve in (solve_naive, solve_heap):
        res = solve(golden)
        assert res.degdet == 7
        weights = {k: r.weight for k, r in res.by_cardinality.items()}
        assert weights == {0: 0, 1: 3, 2: 5, 3: 6, 4: 7}
        assert res.by_cardinality[2].columns == frozenset({0, 1})
        assert res.by_cardinality[3].columns == frozenset({0, 1, 3})
        assert res.best.weight == 7


def test_solvers_match_oracle_small_campaign():
    rng = random.Random(99)
    for trial in range(60):
        n = rng.randint(1, 4)
        m = rng.randint(1, 8)
        inst = generate_instance(trial + 1000, n=n, m=m, density=0.7)
        want = brute_force(inst)
        for solve in (solve_naive, solve_heap):
            res = solve(inst)
            assert res.degdet == want.degdet_perfect
            assert {k: r.weight for k, r in res.by_cardinality.items()} == want.best_by_card


@st.composite
def instances(draw, max_n=3, max_m=6):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    entries = st.lists(
        st.lists(st.integers(-2, 2), min_size=m, max_size=m), min_size=n, max_size=n
    )
    grids = []
    for _ in range(2):
        rows = draw(
            entries.filter(
                lambda rs: all(any(rs[i][j] != 0 for i in range(n)) for j in range(m))
            )
        )
        grids.append(ExactMatrix.from_rows(rows))
    c = draw(st.lists(st.integers(-5, 5), min_size=m, max_size=m))
    return WmiInstance(grids[0], grids[1], c)


@given(instances())
@settings(max_examples=60, deadline=None)
def test_solvers_agree_with_oracle_property(inst):
    want = brute_force(inst)
    naive = solve_naive(inst)
    heap = solve_heap(inst)
    assert naive.degdet == heap.degdet == want.degdet_perfect
    for res in (naive, heap):
        assert {k: r.weight for k, r in res.by_cardinality.items()} == want.best_by_card
        for rec in res.by_cardinality.values():
            assert verify_splitting_certificate(inst, rec.columns, rec.splitting)


def test_heap_equals_naive_bitwise():
    rng = random.Random(5)
    for trial in range(40):
        inst = generate_instance(trial + 31337, n=rng.randint(1, 4), m=rng.randint(1, 8))
        a = solve_naive(inst)
        b = solve_heap(inst)
        assert a.degdet == b.degdet
        assert {k: r.weight for k, r in a.by_cardinality.items()} == {
            k: r.weight for k, r in b.by_cardinality.items()
        }
        assert a.splitting == b.splitting
        # with matched tie-breaking the two drivers visit the same sets
        assert {k: r.columns for k, r in a.by_cardinality.items()} == {
            k: r.columns for k, r in b.by_cardinality.items()
        }


def test_bound_crossing_does_not_swallow_pending_records():
    # the running bound settles the perfect degree here one dual step
    # before the final augmenting path appears; the size-2 record (weight 0
    # via columns {0, 2}) must still come out
    inst = WmiInstance(
        ExactMatrix.from_rows([[0, 0, 0], [-2, 0, 0], [0, 2, 2]]),
        ExactMatrix.from_rows([[0, 0, -2], [0, 0, 0], [1, 2, 0]]),
        [0, 1, 0],
    )
    for solve in (solve_naive, solve_heap):
        res = solve(inst)
        assert res.degdet == MINUS_INF
        assert {k: r.weight for k, r in res.by_cardinality.items()} == {0: 0, 1: 1, 2: 0}
        assert res.by_cardinality[2].columns == frozenset({0, 2})
        assert res.tracer.of_kind("bound_crossed")


def test_terminal_splitting_identical_without_trailing_phantom_steps():
    # in an exhausted final phase the event scheduler must not apply
    # increases for roots holding only zero products, or its terminal
    # potentials (and splitting) drift away from the rescan driver's
    inst = WmiInstance(
        ExactMatrix.from_rows([[-2, -2, -2], [1, 0, 0]]),
        ExactMatrix.from_rows([[0, 0, 0], [2, 1, 1]]),
        [-2, -5, -4],
    )
    a, b = solve_naive(inst), solve_heap(inst)
    assert a.degdet == b.degdet == MINUS_INF
    assert a.splitting == b.splitting == WeightSplitting((-2, -5, -4), (0, 0, 0))


def test_elimination_kills_extension_witness_in_same_root():
    # at one dual stop, an elimination for a higher column of X zeroes the
    # entry witnessing a lower column's would-be reachability extension;
    # eliminations must run first, matching the rescan driver
    inst = WmiInstance(
        ExactMatrix.from_rows(
            [[1, 1, -1, -1, -1], [1, -1, 1, -1, -1], [1, -1, 1, 1, 1], [1, -1, 1, 1, -1]]
        ),
        ExactMatrix.from_rows(
            [[-1, 1, -1, -1, -1], [-1, -1, 1, 1, -1], [-1, -1, -1, -1, -1], [1, 1, -1, -1, 1]]
        ),
        [-40, -33, 13, -8, -20],
    )
    want = brute_force(inst)
    for solve in (solve_naive, solve_heap):
        res = solve(inst)
        assert res.degdet == want.degdet_perfect == MINUS_INF
        assert {k: r.weight for k, r in res.by_cardinality.items()} == want.best_by_card


def test_minus_inf_on_rank_deficiency():
    A = ExactMatrix.from_rows([[1, 1, 1], [2, 2, 2]])  # rank 1
    B = ExactMatrix.identity(2).columns([0, 1, 1])
    inst = WmiInstance(A, B, [3, 1, 2])
    for solve in (solve_naive, solve_heap):
        res = solve(inst)
        assert res.degdet == MINUS_INF
        assert set(res.by_cardinality) == {0, 1}
        assert res.by_cardinality[1].weight == 3


def test_verify_splitting_certificate_golden(golden):
    res = solve_heap(golden)
    for rec in res.by_cardinality.values():
        assert verify_splitting_certificate(golden, rec.columns, rec.splitting)


def test_verify_rejects_perturbed_splitting(golden):
    res = solve_heap(golden)
    rec = res.by_cardinality[4]
    c1 = list(rec.splitting.c1)
    c1[0] += 1
    assert not verify_splitting_certificate(
        golden, rec.columns, WeightSplitting(tuple(c1), rec.splitting.c2)
    )


def test_verify_empty_set():
    inst = identity_instance(2, [1, 2])
    ws = WeightSplitting((1, 2), (0, 0))
    assert verify_splitting_certificate(inst, set(), ws)


def test_verify_rejects_dependent_set():
    gen = ExactMatrix.from_rows([[1, 1], [0, 0]])
    inst = WmiInstance(gen, ExactMatrix.identity(2).columns([0, 1]), [1, 1])
    ws = WeightSplitting((1, 1), (0, 0))
    assert not verify_splitting_certificate(inst, {0, 1}, ws)


def test_degdet_equals_running_bound_at_perfect(golden):
    res = solve_heap(golden)
    term = res.tracer.of_kind("terminate")[0]
    assert term["degdet"] == 7 == res.by_cardinality[4].weight


def test_trace_roundtrip(tmp_path, golden):
    res = solve_heap(golden)
    path = tmp_path / "trace.jsonl"
    dump_trace(res.tracer.records, str(path))
    loaded = load_trace(str(path))
    assert len(loaded) == len(res.tracer.records)
    assert loaded[0]["kind"] == "init"
    kinds = {r["kind"] for r in loaded}
    assert {"state", "split", "graph", "kappa", "augment", "terminate"} <= kinds
