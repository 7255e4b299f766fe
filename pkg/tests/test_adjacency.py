import numpy as np
import pytest

from hyspectra.adjacency import (
    AdjacencyMatrix,
    Variant,
    build_from_rules,
    build_recursive,
    export_structure,
)
from hyspectra.budget import Budget, BudgetError

A1_ROWS = [[0, 1], [1, 0]]
A2_ROWS = [
    [0, 1, 1, 0],
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 1, 1, 0],
]


def test_variant_parse():
    assert Variant.parse("gamma") is Variant.GAMMA
    assert Variant.parse("gamma-prime") is Variant.GAMMA_PRIME
    assert Variant.parse(Variant.GAMMA) is Variant.GAMMA
    with pytest.raises(ValueError):
        Variant.parse("gamma2")


def test_printed_fixtures():
    assert build_recursive(1, "gamma").to_int_rows() == A1_ROWS
    assert build_recursive(2, "gamma").to_int_rows() == A2_ROWS


def test_self_loop_fixture():
    rows = build_recursive(2, "gamma-prime").to_int_rows()
    expected = [list(row) for row in A2_ROWS]
    expected[0][0] = 1
    expected[3][3] = 1
    assert rows == expected


def test_level_zero_is_empty():
    m = build_recursive(0, "gamma")
    assert m.order == 1 and m.nnz == 0
    with pytest.raises(ValueError):
        build_recursive(0, "gamma-prime")


@pytest.mark.parametrize("variant", ["gamma", "gamma-prime"])
@pytest.mark.parametrize("n", range(1, 9))
def test_rules_match_recursion(n, variant):
    assert build_from_rules(n, variant) == build_recursive(n, variant)


@pytest.mark.parametrize("n", range(1, 11))
def test_edge_counts(n):
    assert build_recursive(n, "gamma").nnz == 2 ** (n + 1) - 2
    assert build_recursive(n, "gamma-prime").nnz == 2 ** (n + 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_column_sums(n):
    # every state has two outgoing moves; the plain variant drops one at
    # each saturated state
    plain = build_recursive(n, "gamma").column_sums()
    assert plain[0] == 1 and plain[-1] == 1
    assert all(s == 2 for s in plain[1:-1])
    looped = build_recursive(n, "gamma-prime").column_sums()
    assert all(s == 2 for s in looped)


@pytest.mark.parametrize("variant", ["gamma", "gamma-prime"])
@pytest.mark.parametrize("n", range(1, 7))
def test_rotation_symmetry(n, variant):
    m = build_recursive(n, variant)
    assert m.rotate180() == m


def test_transpose_entries():
    m = build_recursive(2, "gamma")
    transposed = AdjacencyMatrix(2, Variant.GAMMA, m.transpose_entries())
    dense = np.array(m.to_int_rows())
    assert np.array_equal(np.array(transposed.to_int_rows()), dense.T)


@pytest.mark.parametrize("n", range(1, 7))
def test_matvec_matches_dense(n):
    m = build_recursive(n, "gamma-prime")
    rng = np.random.default_rng(7)
    v = rng.standard_normal(m.order)
    dense = np.array(m.to_int_rows(), dtype=float)
    assert np.allclose(m.matvec(v), dense @ v, atol=1e-12)


def test_export_coordinate_list():
    text = export_structure(build_recursive(1, "gamma"))
    lines = text.splitlines()
    assert lines[0] == '{"n": 1, "nnz": 2, "order": 2, "variant": "gamma"}'
    assert lines[1:] == ["1 2", "2 1"]


def test_export_edge_list():
    text = export_structure(build_recursive(1, "gamma"), format="edge-list")
    lines = text.splitlines()
    assert lines[1:] == ["0 1", "1 0"]


def test_export_rejects_unknown_format():
    with pytest.raises(ValueError):
        export_structure(build_recursive(1, "gamma"), format="mtx")


def test_entries_validated():
    with pytest.raises(ValueError):
        AdjacencyMatrix(1, Variant.GAMMA, ((0, 1), (0, 1)))  # duplicate
    with pytest.raises(ValueError):
        AdjacencyMatrix(1, Variant.GAMMA, ((1, 0), (0, 1)))  # unsorted
    with pytest.raises(ValueError):
        AdjacencyMatrix(1, Variant.GAMMA, ((0, 2),))  # out of range


def test_budget_refusals():
    tight = Budget(matrix_n=3, dense_n=2)
    with pytest.raises(BudgetError):
        build_recursive(4, "gamma", tight)
    with pytest.raises(BudgetError):
        build_recursive(3, "gamma", tight).to_dense(tight)
    # within budget still works
    assert build_recursive(3, "gamma", tight).nnz == 14


def test_dense_matches_int_rows():
    m = build_recursive(3, "gamma")
    assert np.array_equal(m.to_dense(), np.array(m.to_int_rows(), dtype=np.int64))
