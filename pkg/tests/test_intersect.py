import random
from itertools import combinations

import pytest

from degwmi.exactla import ExactMatrix, x_diagonalize
from degwmi.intersect import (
    NotDiagonalError,
    augment,
    build_residual,
    certificate_rows,
    max_common_independent,
    shortest_augmenting_path,
)
from degwmi.matroid import LinearMatroid


def random_matrix(rng, n, m):
    while True:
        M = ExactMatrix.from_rows(
            [[rng.randint(-2, 2) for _ in range(m)] for _ in range(n)]
        )
        if all(M.column_support(j) for j in range(m)):
            return M


def exhaustive_max_common(A, B):
    ma, mb = LinearMatroid(A), LinearMatroid(B)
    best = 0
    for k in range(min(A.rows, A.cols), 0, -1):
        for sub in combinations(range(A.cols), k):
            if ma.is_independent(sub) and mb.is_independent(sub):
                return k
    return best


def test_empty_x_graph():
    A = ExactMatrix.from_rows([[1, 2], [0, 1]])
    B = ExactMatrix.from_rows([[1, 1], [1, 0]])
    g = build_residual(A, B, set(), {}, {})
    assert g.sources == {0, 1} and g.sinks == {0, 1}
    assert g.arcs == set()
    assert g.reachable == {0, 1}


def test_golden_top_matrix_graph():
    # diagonalized top matrices of the golden instance at X = {0, 1}
    A0 = ExactMatrix.from_rows(
        [[0, 0, 1, 0, 0], [1, 0, 0, 0, 0], [0, 0, -1, 0, 0], [0, 1, 0, 0, 0]]
    )
    B0 = ExactMatrix.from_rows(
        [[1, 0, 1, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 1, 0, 0, 0]]
    )
    X = {0, 1}
    sigma_a = {0: 1, 1: 3}
    sigma_b = {0: 0, 1: 3}
    g = build_residual(A0, B0, X, sigma_a, sigma_b)
    assert g.arcs == {(2, 0)}
    assert g.sources == {2}
    assert g.sinks == set()
    assert g.reachable == {0, 2}
    I, J, istar, jstar = certificate_rows(X, g.reachable, sigma_a, sigma_b, 4)
    assert I == {0, 1, 2} and J == {1, 2, 3}
    assert istar == {0, 2} and jstar == {1, 2}
    assert len(I) + len(J) == 2 * 4 - len(X)


def test_build_residual_rejects_non_diagonal():
    A = ExactMatrix.from_rows([[2, 0], [0, 1]])
    with pytest.raises(NotDiagonalError):
        build_residual(A, ExactMatrix.identity(2), {0}, {0: 0}, {0: 0})


def test_certificate_rows_empty_x():
    I, J, istar, jstar = certificate_rows(set(), set(), {}, {}, 3)
    assert I == J == {0, 1, 2}
    assert istar == jstar == {0, 1, 2}


def test_zero_length_augmentation():
    A = ExactMatrix.identity(2)
    B = ExactMatrix.identity(2)
    g = build_residual(A, B, set(), {}, {})
    assert shortest_augmenting_path(g) == [0]
    assert augment(g, set()) == {0}


def test_arcs_match_circuit_definition():
    rng = random.Random(11)
    for _ in range(30):
        A = random_matrix(rng, 3, 6)
        B = random_matrix(rng, 3, 6)
        ma, mb = LinearMatroid(A), LinearMatroid(B)
        X = set()
        for j in range(6):
            if ma.is_independent(X | {j}) and mb.is_independent(X | {j}) and len(X) < 2:
                X.add(j)
        wa, _, sa = x_diagonalize(A.copy(), X)
        wb, _, sb = x_diagonalize(B.copy(), X)
        g = build_residual(wa, wb, X, sa, sb)
        for i in sorted(X):
            for j in range(6):
                if j == i or j in X:
                    continue
                want_a = j not in g.sources and ma.in_circuit(X, j, i)
                assert ((i, j) in g.arcs) == want_a
                want_b = j not in g.sinks and mb.in_circuit(X, j, i)
                assert ((j, i) in g.arcs) == want_b


def test_augment_preserves_common_independence():
    rng = random.Random(23)
    for _ in range(25):
        A = random_matrix(rng, 3, 6)
        B = random_matrix(rng, 3, 6)
        ma, mb = LinearMatroid(A), LinearMatroid(B)
        X = set()
        wa, wb = A.copy(), B.copy()
        sa, sb = {}, {}
        while True:
            wa, _, sa = x_diagonalize(wa, X, sa)
            wb, _, sb = x_diagonalize(wb, X, sb)
            g = build_residual(wa, wb, X, sa, sb)
            bigger = augment(g, X)
            if bigger is None:
                break
            assert len(bigger) == len(X) + 1
            assert ma.is_independent(bigger) and mb.is_independent(bigger)
            X = bigger


def test_max_common_identity():
    eye = ExactMatrix.identity(3)
    X, cert = max_common_independent(eye, eye.copy())
    assert X == {0, 1, 2}
    assert cert.value == 3


def test_max_common_golden(golden_matrices):
    A, B = golden_matrices
    X, cert = max_common_independent(A, B)
    assert len(X) == 4
    assert cert.value == 4


def test_certified_block_of_product_matrix_is_zero():
    # at an optimum, no column has support meeting both certified row sets,
    # which is exactly the zero block of the combined product matrix
    rng = random.Random(13)
    for trial in range(25):
        n = rng.randint(2, 4)
        m = rng.randint(2, 8)
        A = random_matrix(rng, n, m)
        B = random_matrix(rng, n, m)
        X = set()
        wa, wb = A.copy(), B.copy()
        sa, sb = {}, {}
        while True:
            wa, _, sa = x_diagonalize(wa, X, sa)
            wb, _, sb = x_diagonalize(wb, X, sb)
            g = build_residual(wa, wb, X, sa, sb)
            bigger = augment(g, X)
            if bigger is None:
                break
            X = bigger
        I, J, _, _ = certificate_rows(X, g.reachable, sa, sb, n)
        assert len(I) + len(J) == 2 * n - len(X)
        for j in range(m):
            hits_i = any(wa.get(k, j) != 0 for k in I)
            hits_j = any(wb.get(l, j) != 0 for l in J)
            assert not (hits_i and hits_j)


def test_max_common_matches_exhaustive_search():
    rng = random.Random(7)
    for trial in range(40):
        n = rng.randint(1, 4)
        m = rng.randint(1, 8)
        A = random_matrix(rng, n, m)
        B = random_matrix(rng, n, m)
        X, cert = max_common_independent(A, B)
        ma, mb = LinearMatroid(A), LinearMatroid(B)
        assert ma.is_independent(X) and mb.is_independent(X)
        assert len(X) == exhaustive_max_common(A, B)
        assert cert.value == len(X)
        # weak duality: the certificate bounds every common independent set
        recomputed = LinearMatroid(A).rank_fn(cert.j_columns) + LinearMatroid(
            B
        ).rank_fn(set(range(m)) - cert.j_columns)
        assert recomputed == cert.value
