import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degwmi.exactla import ExactMatrix
from degwmi.matroid import LinearMatroid, NotDependentError


def random_matrix(rng, n, m, lo=-2, hi=2):
    return ExactMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)]
    )


def test_empty_set_independent(golden_matrices):
    A, _ = golden_matrices
    M = LinearMatroid(A)
    assert M.is_independent(set())
    assert M.rank_fn(set()) == 0


def test_golden_memberships(golden_matrices):
    A, _ = golden_matrices
    M = LinearMatroid(A)
    assert M.is_independent({0, 1})
    assert not M.is_independent({0, 1, 2, 3, 4})  # five columns, four rows
    assert M.rank_fn(set(range(5))) == 4


def test_rank_of_independent_is_size(golden_matrices):
    A, _ = golden_matrices
    M = LinearMatroid(A)
    for X in [{0}, {0, 1}, {0, 1, 2}]:
        if M.is_independent(X):
            assert M.rank_fn(X) == len(X)


def test_in_circuit_requires_dependence():
    M = LinearMatroid(ExactMatrix.identity(3))
    with pytest.raises(NotDependentError):
        M.in_circuit({0}, 1, 0)


def test_in_circuit_duplicate_column():
    gen = ExactMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
    M = LinearMatroid(gen)
    assert M.in_circuit({0}, 1, 0)  # columns 0 and 1 are parallel
    assert M.in_circuit({0, 2}, 1, 0)
    assert not M.in_circuit({0, 2}, 1, 2)


def test_in_circuit_matches_rank_characterization():
    rng = random.Random(5)
    for _ in range(40):
        gen = random_matrix(rng, 3, 5)
        M = LinearMatroid(gen)
        for i in range(5):
            X = {j for j in range(5) if j != i and rng.random() < 0.5}
            if not M.is_independent(X) or M.is_independent(X | {i}):
                continue
            for j in X:
                expect = (
                    M.rank_fn(X | {i}) == len(X)
                    and M.rank_fn((X | {i}) - {j}) == len(X)
                )
                assert M.in_circuit(X, i, j) == expect


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_rank_fn_monotone_and_submodular(data):
    rows = data.draw(
        st.lists(
            st.lists(st.integers(-2, 2), min_size=5, max_size=5),
            min_size=3,
            max_size=3,
        )
    )
    M = LinearMatroid(ExactMatrix.from_rows(rows))
    ground = list(range(5))
    X = set(data.draw(st.lists(st.sampled_from(ground), max_size=5)))
    Y = set(data.draw(st.lists(st.sampled_from(ground), max_size=5)))
    assert M.rank_fn(X) <= M.rank_fn(X | Y)
    assert M.rank_fn(X | Y) + M.rank_fn(X & Y) <= M.rank_fn(X) + M.rank_fn(Y)
    for sub in [X & Y]:
        if M.is_independent(X) and sub <= X:
            assert M.is_independent(sub)
