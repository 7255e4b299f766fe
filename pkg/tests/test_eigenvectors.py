import math
from fractions import Fraction

import numpy as np
import pytest

from hyspectra.adjacency import build_recursive
from hyspectra.budget import Budget, BudgetError
from hyspectra.chebpoly import AngleFraction, chebyshev_zeros
from hyspectra.eigenvectors import (
    ChebProduct,
    eigenvector_gamma_prime,
    eigenvector_interior,
    eigenvector_top,
    residual,
    run_product_reciprocal,
    stationary_fractions,
    stationary_vector,
)
from hyspectra.states import MemoryState, all_states, run_decomposition

ROOT_QUARTER = AngleFraction(1, 4)
ROOT_THIRD = AngleFraction(1, 3)


def interior_roots(ell):
    # zeros of U_{ell+1} not shared with any lower-index polynomial
    return [f for f in chebyshev_zeros(ell + 1) if f.q == ell + 2]


# -- symbolic coefficients -------------------------------------------------------


def test_canonical_drops_index_zero():
    assert ChebProduct.canonical(1, (0, 2), (0, 1)) == ChebProduct(1, (2,), (1,))


def test_canonical_cancels_shared_indices():
    assert ChebProduct.canonical(-1, (1, 2, 2), (2, 3)) == ChebProduct(-1, (1, 2), (3,))


def test_canonical_zero_clears_indices():
    assert ChebProduct.canonical(0, (1, 2), (3,)) == ChebProduct.zero()
    assert ChebProduct.zero().is_zero()


def test_times_multiplies_and_cancels():
    a = ChebProduct.canonical(1, (1,), ())
    b = ChebProduct.canonical(-1, (), (1, 2))
    assert a.times(b) == ChebProduct(-1, (), (2,))
    assert a.times(ChebProduct.zero()).is_zero()


def test_sign_validation():
    with pytest.raises(ValueError):
        ChebProduct(5, (), ())


def test_value_at_root():
    # at r/q = 1/4: u_1 = 2cos(pi/4) = sqrt(2), u_2 = 4cos^2 - 1 = 1
    assert ChebProduct.one().value(ROOT_QUARTER) == 1.0
    assert ChebProduct.zero().value(ROOT_QUARTER) == 0.0
    ratio = ChebProduct.canonical(1, (1,), (2,))
    assert ratio.value(ROOT_QUARTER) == pytest.approx(math.sqrt(2))
    assert ChebProduct.canonical(-1, (2,), ()).value(ROOT_QUARTER) == pytest.approx(-1.0)


def test_to_json_carries_indices_and_float():
    record = ChebProduct.canonical(-1, (2,), (1,)).to_json(ROOT_QUARTER)
    assert record["sign"] == -1
    assert record["u_indices_num"] == [2]
    assert record["u_indices_den"] == [1]
    assert record["float"] == pytest.approx(-1 / math.sqrt(2))


def test_run_product_reciprocal_fixture():
    product = run_product_reciprocal("0100100110")
    assert product == ChebProduct(1, (), (1, 3, 5, 6, 8, 9))


def test_run_product_of_empty_string_is_one():
    assert run_product_reciprocal(()) == ChebProduct.one()


# -- interior class ---------------------------------------------------------------


def test_interior_smallest_case():
    vec = eigenvector_interior(2, 0, AngleFraction(1, 2), "")
    assert [vec.coefficient(i).sign for i in range(4)] == [0, -1, 1, 0]
    assert vec.to_array().tolist() == [0.0, -1.0, 1.0, 0.0]
    assert vec.eigenvalue() == 0.0


def test_interior_symbolic_table():
    vec = eigenvector_interior(4, 2, ROOT_QUARTER, "")
    expected = {
        # states 10xx carry reciprocal run products of the suffix
        0b1000: ChebProduct(1, (), ()),
        0b1001: ChebProduct(1, (), (1,)),
        0b1010: ChebProduct(1, (), (1, 2)),
        0b1011: ChebProduct(1, (), (2,)),
        # states 01xx carry -u_2 times the mirrored suffix coefficient
        0b0100: ChebProduct(-1, (), ()),
        0b0101: ChebProduct(-1, (), (1,)),
        0b0110: ChebProduct(-1, (2,), (1,)),
        0b0111: ChebProduct(-1, (2,), ()),
    }
    assert dict(vec.coefficients) == expected
    assert vec.support() == frozenset(range(4, 12))

    values = vec.to_array()
    s = math.sqrt(2)  # u_1 at the root 1/4; u_2 there is 1
    assert values[8:12] == pytest.approx([1, 1 / s, 1 / s, 1])
    assert values[4:8] == pytest.approx([-1, -1 / s, -1 / s, -1])
    assert not values[:4].any() and not values[12:].any()


def test_interior_prefix_shifts_support():
    vec = eigenvector_interior(4, 0, AngleFraction(1, 2), "11")
    assert vec.support() == {0b1101, 0b1110}
    assert vec.class_label() == "interior(ell=0,prefix=11)"


def test_interior_validation():
    with pytest.raises(ValueError):
        eigenvector_interior(1, 0, AngleFraction(1, 2), "")
    with pytest.raises(ValueError):
        eigenvector_interior(4, 3, AngleFraction(1, 5), "")
    with pytest.raises(ValueError):
        eigenvector_interior(4, 2, AngleFraction(1, 2), "")  # q must be ell+2
    with pytest.raises(ValueError):
        eigenvector_interior(4, 2, ROOT_QUARTER, "01")  # prefix too long
    with pytest.raises(ValueError):
        eigenvector_interior(4, 0, AngleFraction(1, 2), "2x")
    with pytest.raises(BudgetError):
        eigenvector_interior(6, 0, AngleFraction(1, 2), "1111", budget=Budget(dense_n=5))


# -- mirrored classes -------------------------------------------------------------


def test_top_smallest_case():
    vec = eigenvector_top(1, ROOT_THIRD)
    assert vec.coefficient("0") == ChebProduct.one()
    assert vec.coefficient("1") == ChebProduct(1, (1,), ())
    assert vec.to_array() == pytest.approx([1.0, 1.0])  # u_1 = 2cos(pi/3) = 1


def test_gamma_prime_smallest_case():
    vec = eigenvector_gamma_prime(2, ROOT_THIRD)
    assert vec.coefficient(0) == ChebProduct.one()
    assert vec.coefficient(1) == ChebProduct(1, (), (1,))
    assert vec.coefficient(2) == ChebProduct(-1, (), ())
    assert vec.coefficient(3) == ChebProduct(-1, (1,), ())
    assert vec.to_array() == pytest.approx([1.0, 1.0, -1.0, -1.0])
    assert vec.eigenvalue() == 0.5


def test_mirrored_halves_are_proportional():
    vec = eigenvector_top(4, AngleFraction(1, 6))
    full = (1 << 4) - 1
    multiplier = ChebProduct.canonical(1, (4,), ())
    for idx in range(1 << 3):
        assert vec.coefficient(full ^ idx) == vec.coefficient(idx).times(multiplier)


def test_top_and_prime_validation():
    with pytest.raises(ValueError):
        eigenvector_top(4, AngleFraction(1, 2))
    with pytest.raises(ValueError):
        eigenvector_gamma_prime(4, AngleFraction(1, 2))
    with pytest.raises(BudgetError):
        eigenvector_top(6, AngleFraction(1, 8), budget=Budget(dense_n=5))


# -- residuals over every closed-form class ---------------------------------------


@pytest.mark.parametrize("n", range(2, 6))
def test_interior_residuals(n):
    matrix = build_recursive(n, "gamma")
    for ell in range(n - 1):
        for root in interior_roots(ell):
            for prefix_value in range(1 << (n - ell - 2)):
                prefix = format(prefix_value, f"0{n - ell - 2}b") if n - ell - 2 else ""
                vec = eigenvector_interior(n, ell, root, prefix)
                assert residual(vec, matrix, vec.eigenvalue()) < 1e-12


@pytest.mark.parametrize("n", range(1, 6))
def test_top_residuals(n):
    matrix = build_recursive(n, "gamma")
    for root in [f for f in chebyshev_zeros(n + 1) if f.q == n + 2]:
        vec = eigenvector_top(n, root)
        assert residual(vec, matrix, vec.eigenvalue()) < 1e-12


@pytest.mark.parametrize("n", range(1, 6))
def test_gamma_prime_residuals(n):
    matrix = build_recursive(n, "gamma-prime")
    for root in [f for f in chebyshev_zeros(n) if f.q == n + 1]:
        vec = eigenvector_gamma_prime(n, root)
        assert residual(vec, matrix, vec.eigenvalue()) < 1e-12


def test_prefix_family_is_independent():
    vectors = [
        eigenvector_interior(5, 1, ROOT_THIRD, format(p, "02b")).to_array() for p in range(4)
    ]
    supports = [set(np.nonzero(v)[0]) for v in vectors]
    for i in range(4):
        for j in range(i + 1, 4):
            assert not supports[i] & supports[j]
    assert np.linalg.matrix_rank(np.stack(vectors)) == 4


def test_residual_rejects_bad_input():
    matrix = build_recursive(2, "gamma")
    with pytest.raises(ValueError):
        residual(np.zeros(4), matrix, 0.0)
    with pytest.raises(ValueError):
        residual(np.ones(3), matrix, 0.0)


# -- coefficient lookup and serialization ------------------------------------------


def test_coefficient_lookup_forms_agree():
    vec = eigenvector_interior(4, 2, ROOT_QUARTER, "")
    state = MemoryState.from_string("1011")
    assert vec.coefficient(state) == vec.coefficient("1011") == vec.coefficient(0b1011)
    with pytest.raises(ValueError):
        vec.coefficient("10110")
    with pytest.raises(ValueError):
        vec.coefficient(16)


def test_eigenvector_json():
    vec = eigenvector_gamma_prime(2, ROOT_THIRD)
    record = vec.to_json()
    assert record["n"] == 2
    assert record["eigenvalue"] == {"r": 1, "q": 3, "float": 0.5}
    assert record["class"] == "top-prime"
    assert set(record["coefficients"]) == {"00", "01", "10", "11"}
    assert record["coefficients"]["10"]["sign"] == -1


# -- stationary distribution --------------------------------------------------------


def test_stationary_fixtures():
    assert stationary_fractions(1) == [Fraction(1, 2), Fraction(1, 2)]
    assert stationary_fractions(2) == [
        Fraction(1, 3),
        Fraction(1, 6),
        Fraction(1, 6),
        Fraction(1, 3),
    ]
    assert stationary_fractions(3) == [
        Fraction(1, 4),
        Fraction(1, 8),
        Fraction(1, 24),
        Fraction(1, 12),
        Fraction(1, 12),
        Fraction(1, 24),
        Fraction(1, 8),
        Fraction(1, 4),
    ]


@pytest.mark.parametrize("n", range(1, 9))
def test_stationary_is_exactly_stationary(n):
    # column-stochastic transition matrix: column j of A'/2 gives the
    # move probabilities out of state j
    pi = stationary_fractions(n)
    matrix = build_recursive(n, "gamma-prime")
    pushed = [Fraction(0)] * (1 << n)
    for i, j in matrix.entries:
        pushed[i] += Fraction(1, 2) * pi[j]
    assert pushed == pi
    assert sum(pi) == 1
    assert all(w > 0 for w in pi)


def test_stationary_complement_symmetry():
    pi = stationary_fractions(6)
    full = (1 << 6) - 1
    for idx in range(1 << 6):
        assert pi[idx] == pi[full ^ idx]


def test_naive_weighting_of_all_strings_is_not_stationary():
    # tempting wrong construction: score every string by its own run
    # products instead of mirroring the 0-starting half
    n = 2
    weights = []
    for state in all_states(n):
        product = 1
        for s in run_decomposition(state.bits).partial_sums():
            product *= 1 + s
        weights.append(Fraction(1, product))
    total = sum(weights)
    naive = [w / total for w in weights]
    assert naive == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 12), Fraction(1, 6)]

    matrix = build_recursive(n, "gamma-prime")
    pushed = [Fraction(0)] * (1 << n)
    for i, j in matrix.entries:
        pushed[i] += Fraction(1, 2) * naive[j]
    assert pushed != naive
    assert naive != stationary_fractions(n)


def test_stationary_vector_matches_fractions():
    vec = stationary_vector(3)
    assert vec.tolist() == [float(w) for w in stationary_fractions(3)]
    assert vec.sum() == pytest.approx(1.0)


def test_stationary_residual_at_eigenvalue_one():
    matrix = build_recursive(5, "gamma-prime")
    assert residual(stationary_vector(5), matrix, 1.0) < 1e-12


def test_stationary_validation():
    with pytest.raises(ValueError):
        stationary_fractions(0)
