import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyspectra.adjacency import Variant, build_recursive
from hyspectra.budget import Budget, BudgetError
from hyspectra.chebpoly import AngleFraction, IntPolynomial, chebyshev_zeros
from hyspectra.oracle import charpoly_dense
from hyspectra.spectrum import (
    CharFactor,
    FactoredCharPoly,
    TWO_MINUS_X,
    U_NEG_HALF,
    characteristic_factors,
    devils_staircase,
    devils_staircase_left_limit,
    distribution_table,
    eigenvalue_distribution,
    expand_characteristic,
    finite_staircase,
    limit_distribution,
    spectrum,
    spectrum_diff,
    staircase_jump,
    totient_sum,
)

CHI_3 = IntPolynomial((0, 0, -1, 0, 4, 0, -4, 0, 1))  # λ^8 - 4λ^6 + 4λ^4 - λ^2


# -- factored characteristic polynomial -----------------------------------------


def test_factor_structure_plain():
    factored = characteristic_factors(2, "gamma")
    assert [(f.kind, f.index, f.multiplicity) for f in factored.factors] == [
        (U_NEG_HALF, 3, 1),
        (U_NEG_HALF, 1, 1),
        (U_NEG_HALF, 0, 2),
    ]


def test_factor_structure_self_loop():
    factored = characteristic_factors(2, "gamma-prime")
    assert [(f.kind, f.index, f.multiplicity) for f in factored.factors] == [
        (TWO_MINUS_X, 0, 1),
        (U_NEG_HALF, 2, 1),
        (U_NEG_HALF, 1, 1),
        (U_NEG_HALF, 0, 2),
    ]


def test_factor_degrees_always_sum_to_order():
    for n in range(1, 16):
        for variant in ("gamma", "gamma-prime"):
            assert characteristic_factors(n, variant).degree() == 2**n


def test_factored_validation():
    with pytest.raises(ValueError):
        FactoredCharPoly(2, Variant.GAMMA, (CharFactor(U_NEG_HALF, 3, 1),))
    with pytest.raises(ValueError):
        CharFactor("u", 1, 1)
    with pytest.raises(ValueError):
        CharFactor(U_NEG_HALF, 1, 0)


def test_expanded_anchors():
    assert expand_characteristic(characteristic_factors(1)).coefficients == (-1, 0, 1)
    assert expand_characteristic(characteristic_factors(2)).coefficients == (0, 0, -2, 0, 1)
    assert expand_characteristic(characteristic_factors(3)) == CHI_3


def test_chi3_is_the_rescaled_product():
    # λ^8 - 4λ^6 + 4λ^4 - λ^2 factors as Ũ_1^2 Ũ_2 Ũ_4
    from hyspectra.chebpoly import chebyshev_u_neg_half as unh

    assert unh(1) ** 2 * unh(2) * unh(4) == CHI_3


def test_expanded_self_loop_anchor():
    # level 1: (2 - λ)(-λ) = λ^2 - 2λ
    p = expand_characteristic(characteristic_factors(1, "gamma-prime"))
    assert p.coefficients == (0, -2, 1)


@pytest.mark.parametrize("variant", ["gamma", "gamma-prime"])
@pytest.mark.parametrize("n", range(1, 6))
def test_expansion_matches_dense_determinant(n, variant):
    expanded = expand_characteristic(characteristic_factors(n, variant))
    assert expanded == charpoly_dense(build_recursive(n, variant))


def test_expand_budget():
    with pytest.raises(BudgetError):
        expand_characteristic(characteristic_factors(5), Budget(expand_n=4))


# -- exact spectrum --------------------------------------------------------------


def test_spectrum_level_two():
    table = spectrum(2, "gamma")
    assert {str(e.key): e.multiplicity for e in table.entries} == {
        "3/4": 1,
        "1/2": 2,
        "1/4": 1,
    }
    assert table.total_multiplicity() == 4


def test_spectrum_level_three_has_seven_keys():
    table = spectrum(3, "gamma")
    assert len(table.entries) == 7
    assert table.total_multiplicity() == 8
    assert table.multiplicity(AngleFraction(1, 2)) == 2


def test_spectrum_self_loop_special_eigenvalue():
    table = spectrum(2, "gamma-prime")
    assert table.entries[-1].key is None
    assert table.entries[-1].eigenvalue() == 2.0
    assert table.multiplicity(None) == 1
    assert table.total_multiplicity() == 4


def test_spectrum_entries_sorted_by_eigenvalue():
    for variant in ("gamma", "gamma-prime"):
        values = [e.eigenvalue() for e in spectrum(6, variant).entries]
        assert values == sorted(values)


@pytest.mark.parametrize("n", range(1, 21))
def test_multiplicities_sum_to_order(n):
    assert spectrum(n, "gamma").total_multiplicity() == 2**n
    assert spectrum(n, "gamma-prime").total_multiplicity() == 2**n


def test_spectrum_matches_numpy_eigenvalues():
    import numpy as np

    for variant in ("gamma", "gamma-prime"):
        table = spectrum(3, variant)
        exact = sorted(
            v for e in table.entries for v in [e.eigenvalue()] * e.multiplicity
        )
        numeric = sorted(np.linalg.eigvals(build_recursive(3, variant).to_dense()).real)
        # repeated roots of a non-normal matrix: accuracy only ~sqrt(eps)
        assert np.allclose(exact, numeric, atol=1e-6)


def test_spectrum_diff_swaps_top_roots():
    for n in (2, 3, 5):
        diff = spectrum_diff(spectrum(n, "gamma"), spectrum(n, "gamma-prime"))
        expected = {z: -1 for z in chebyshev_zeros(n + 1)}
        expected.update({z: 1 for z in chebyshev_zeros(n)})
        expected[None] = 1
        assert diff == expected


def test_jump_of_counting_function():
    table = spectrum(2, "gamma")
    assert table.jump(AngleFraction(1, 2)) == Fraction(1, 2)
    assert table.jump(AngleFraction(1, 4)) == Fraction(1, 4)
    assert table.jump(AngleFraction(1, 3)) == 0


# -- eigenvalue-counting queries -------------------------------------------------


def test_distribution_exact_queries():
    # halved-matrix eigenvalues at level 2: -cos(pi/4), 0, 0, cos(pi/4)
    at_half = eigenvalue_distribution(2, "gamma", AngleFraction(1, 2))
    assert at_half.value == Fraction(1, 4)
    just_above = eigenvalue_distribution(2, "gamma", AngleFraction(2, 5))
    assert just_above.value == Fraction(3, 4)
    below_all = eigenvalue_distribution(2, "gamma", AngleFraction(5, 6))
    assert below_all.value == 0


def test_distribution_float_queries():
    assert eigenvalue_distribution(2, "gamma", 0.0).value == Fraction(1, 4)
    assert eigenvalue_distribution(2, "gamma", 0.1).value == Fraction(3, 4)
    assert eigenvalue_distribution(2, "gamma", -1.0).value == 0
    assert eigenvalue_distribution(2, "gamma", 1.0).value == 1


def test_distribution_guard_flag():
    clean = eigenvalue_distribution(2, "gamma", 0.25)
    assert not clean.guarded
    touching = eigenvalue_distribution(2, "gamma", 0.0)
    assert touching.guarded  # 0 is a spectral value at level 2


def test_distribution_rejects_junk():
    with pytest.raises(TypeError):
        eigenvalue_distribution(2, "gamma", "0.5")


# -- Devil's staircase ------------------------------------------------------------


def test_staircase_exact_values():
    assert devils_staircase(Fraction(1, 2)).value == Fraction(2, 3)
    assert devils_staircase(Fraction(1, 3)).value == Fraction(2, 7)
    assert devils_staircase(Fraction(2, 3)).value == Fraction(6, 7)
    assert devils_staircase(Fraction(0)).value == 0
    assert devils_staircase(Fraction(1)).value == 1


def test_staircase_left_limit_and_jump():
    assert devils_staircase_left_limit(Fraction(1, 2)) == Fraction(1, 3)
    assert staircase_jump(Fraction(1, 2)) == Fraction(1, 3)
    assert staircase_jump(Fraction(1, 3)) == Fraction(1, 7)
    assert staircase_jump(Fraction(0)) == 0


@given(st.integers(2, 12), st.integers(1, 11))
def test_jump_form_within_series_bound(q, r):
    if r >= q or math.gcd(r, q) != 1:
        return
    x = Fraction(r, q)
    exact = devils_staircase(x, mode="jump-form")
    series = devils_staircase(x, mode="floor-series", terms=50)
    assert abs(exact.value - series.value) <= series.error_bound
    assert exact.error_bound == 0


@given(st.integers(2, 12), st.integers(1, 11))
def test_jump_decomposition(q, r):
    if r >= q or math.gcd(r, q) != 1:
        return
    x = Fraction(r, q)
    value = devils_staircase(x).value
    assert value - devils_staircase_left_limit(x) == Fraction(1, 2**q - 1)


def test_staircase_monotone_on_floats():
    xs = [i / 97 for i in range(98)]
    values = [devils_staircase(x, mode="floor-series").value for x in xs]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_staircase_extension():
    assert devils_staircase(-0.5, mode="floor-series").value == 0.0
    assert devils_staircase(1.5, mode="floor-series").value == 1.0


def test_jump_form_rejects_floats():
    with pytest.raises(ValueError):
        devils_staircase(0.5, mode="jump-form")
    with pytest.raises(ValueError):
        devils_staircase(Fraction(1, 2), mode="bisection")


def test_totient_sums():
    assert totient_sum(2) == Fraction(1, 3)
    assert totient_sum(3) == Fraction(13, 21)
    assert abs(totient_sum(40) - 1) < Fraction(1, 10**10)
    with pytest.raises(ValueError):
        totient_sum(1)


# -- limiting distribution ---------------------------------------------------------


def test_limit_distribution_snaps_to_rationals():
    at_zero = limit_distribution(0.0)
    assert at_zero.value == 1 - 2 / 3
    assert at_zero.error_bound == 0
    at_half = limit_distribution(0.5)
    assert at_half.value == 1 - 2 / 7
    assert at_half.error_bound == 0


def test_limit_distribution_generic_point():
    result = limit_distribution(0.123456789)
    assert 0 < result.value < 1
    assert result.error_bound > 0


def test_limit_distribution_endpoints_and_range():
    assert limit_distribution(-1.0).value == 0.0
    assert limit_distribution(1.0).value == 1.0
    with pytest.raises(ValueError):
        limit_distribution(1.5)


def test_finite_staircase_fixture():
    assert finite_staircase(2, 0.9) == 0.25
    with pytest.raises(ValueError):
        finite_staircase(2, 1.5)


# -- distribution table -------------------------------------------------------------


def test_distribution_table_shape_and_monotonicity():
    rows = distribution_table(6, points=128)
    assert len(rows) == 128
    f_values = [row.f_n for row in rows]
    assert all(a <= b for a, b in zip(f_values, f_values[1:]))
    assert rows[0].f_n == 0
    assert rows[-1].f_n == 1
    assert any(row.guarded for row in rows)
    assert any(not row.guarded for row in rows)


def test_distribution_table_diff_definition():
    for row in distribution_table(4, points=32):
        assert row.diff == abs(float(row.f_n) - row.f_limit)


def test_distribution_table_converges():
    worst = {
        n: max(row.diff for row in distribution_table(n) if not row.guarded)
        for n in (6, 10)
    }
    assert worst[10] < worst[6] < 0.01
