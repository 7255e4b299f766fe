"""Brute-force exact verification backend.

Characteristic polynomials are recovered with no closed-form input:
evaluate det(M - xI) at enough consecutive integers by fraction-free
integer elimination, then interpolate exactly.  The companion minor
determinants and the recursion identities they satisfy give a second,
structurally different route to the same polynomials, so closed form,
elimination, and recursion can all be cross-checked against each other.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .adjacency import AdjacencyMatrix, Variant, build_recursive
from .budget import DEFAULT, Budget
from .chebpoly import IntPolynomial

MINOR_KINDS = ("Q", "P", "S")


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination.

    Every division below is exact (Bareiss), so all intermediates stay
    integers with predictably bounded size.
    """
    size = len(rows)
    for row in rows:
        if len(row) != size:
            raise ValueError("matrix must be square")
    if size == 0:
        return 1
    a = [[int(v) for v in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, size):
            row_i = a[i]
            factor = row_i[k]
            if factor:
                for j in range(k + 1, size):
                    row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
                row_i[k] = 0
            elif pivot != prev:
                for j in range(k + 1, size):
                    row_i[j] = pivot * row_i[j] // prev
        prev = pivot
    return sign * a[size - 1][size - 1]


def _interpolate_at_integers(xs: Sequence[int], ys: Sequence[int]) -> IntPolynomial:
    """Exact polynomial through (xs[i], ys[i]); xs consecutive integers.

    Newton forward differences: with integer values the divided
    differences are Delta^k y / k!, and the final coefficients must come
    out integral, which is asserted.
    """
    count = len(xs)
    if count != len(ys) or count == 0:
        raise ValueError("need equally many points and values")
    if any(xs[i + 1] - xs[i] != 1 for i in range(count - 1)):
        raise ValueError("interpolation nodes must be consecutive integers")
    deltas = [ys[0]]
    level = list(ys)
    for _ in range(1, count):
        level = [level[i + 1] - level[i] for i in range(len(level) - 1)]
        deltas.append(level[0])

    coeffs = [Fraction(0)] * count
    basis = [1]  # integer coefficients of prod_{j<k} (x - xs[j]))
    factorial = 1
    for k in range(count):
        if k > 0:
            factorial *= k
        if deltas[k]:
            term = Fraction(deltas[k], factorial)
            for i, b in enumerate(basis):
                if b:
                    coeffs[i] += term * b
        if k < count - 1:
            x0 = xs[k]
            new_basis = [0] * (len(basis) + 1)
            for i, b in enumerate(basis):
                new_basis[i] -= b * x0
                new_basis[i + 1] += b
            basis = new_basis
    if any(c.denominator != 1 for c in coeffs):
        raise AssertionError("interpolation of integer-valued data gave non-integers")
    return IntPolynomial.from_coefficients([int(c) for c in coeffs])


def _dense_int_rows(matrix: "AdjacencyMatrix | Sequence[Sequence[int]]", budget: Budget) -> list[list[int]]:
    if isinstance(matrix, AdjacencyMatrix):
        return matrix.to_int_rows(budget)
    rows = [[int(v) for v in row] for row in matrix]
    for row in rows:
        if len(row) != len(rows):
            raise ValueError("matrix must be square")
    return rows


def evaluation_points(order: int) -> list[int]:
    """The order+1 consecutive integers centered on zero."""
    low = -(order // 2)
    return list(range(low, low + order + 1))


def charpoly_dense(
    matrix: "AdjacencyMatrix | Sequence[Sequence[int]]",
    budget: Budget = DEFAULT,
) -> IntPolynomial:
    """det(M - xI) as an exact integer polynomial; no floating point.

    Cost is order+1 integer determinants of size order, so the budget
    refuses beyond charpoly_order.
    """
    rows = _dense_int_rows(matrix, budget)
    order = len(rows)
    budget.check("charpoly_order", order, "determinant-based characteristic polynomial")
    xs = evaluation_points(order)
    ys = []
    for x in xs:
        shifted = [row[:] for row in rows]
        for i in range(order):
            shifted[i][i] -= x
        ys.append(bareiss_determinant(shifted))
    return _interpolate_at_integers(xs, ys)


def charpoly_eval(matrix: "AdjacencyMatrix | Sequence[Sequence[int]]", x: int, budget: Budget = DEFAULT) -> int:
    """det(M - xI) at one integer point, for interpolation self-checks."""
    rows = _dense_int_rows(matrix, budget)
    for i in range(len(rows)):
        rows[i][i] -= x
    return bareiss_determinant(rows)


def minor_det(k: int, kind: str, budget: Budget = DEFAULT) -> IntPolynomial:
    """Exact determinant of a corner minor of A_k - xI on the plain graph.

    kind Q deletes the upper row and right column, P the lower row and
    right column, S the lower row and left column; each minor has order
    2**k - 1.
    """
    if kind not in MINOR_KINDS:
        raise ValueError(f"kind must be one of {MINOR_KINDS}, got {kind!r}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    budget.check("minor_k", k, "exact minor determinant")
    order = 1 << k
    minor_order = order - 1
    if minor_order == 0:
        return IntPolynomial.one()
    dense = build_recursive(k, Variant.GAMMA, budget).to_int_rows(budget)
    if kind == "Q":
        keep_rows, keep_cols = range(1, order), range(0, order - 1)
    elif kind == "P":
        keep_rows, keep_cols = range(0, order - 1), range(0, order - 1)
    else:  # S
        keep_rows, keep_cols = range(0, order - 1), range(1, order)
    xs = evaluation_points(minor_order)
    ys = []
    for x in xs:
        shifted = [row[:] for row in dense]
        for i in range(order):
            shifted[i][i] -= x
        sub = [[shifted[i][j] for j in keep_cols] for i in keep_rows]
        ys.append(bareiss_determinant(sub))
    return _interpolate_at_integers(xs, ys)


def _difference_witness(left: IntPolynomial, right: IntPolynomial) -> str | None:
    if left == right:
        return None
    width = max(len(left.coefficients), len(right.coefficients))
    for degree in range(width):
        a = left.coefficients[degree] if degree < len(left.coefficients) else 0
        b = right.coefficients[degree] if degree < len(right.coefficients) else 0
        if a != b:
            return f"degree {degree}: {a} != {b}"
    return None


def verify_lemma_recursions(k_max: int, budget: Budget = DEFAULT) -> list[dict]:
    """Exact polynomial identity checks tying the block recursion,
    the corner minors, and the characteristic polynomials together.

    Checked identities, with chi_k = charpoly(A_k), phi_k = det Q_k,
    psi_k = det P_k:

    * rotation-symmetry:   A_k equals its 180-degree rotation
    * mirror-minor:        det S_k = det Q_k
    * char-square:         chi_{k+1} = chi_k**2 - phi_k**2
    * minor-q:             phi_{k+1} = -phi_k psi_k        (k >= 1)
    * minor-p:             psi_{k+1} = chi_k psi_k
    * master-recursion:    chi_{k+1} = chi_k**2 - prod_{i=0}^{k-2} chi_i**(2(k-1-i))

    minor-q genuinely fails at k = 0 (phi_1 = 1 but -phi_0 psi_0 = -1):
    the block decomposition behind it needs at least one level, so the
    k = 0 instance is out of scope, not a defect.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    budget.check("minor_k", k_max, "lemma verification")
    report: list[dict] = []

    chi = {k: charpoly_dense(build_recursive(k, Variant.GAMMA, budget), budget) for k in range(k_max + 1)}
    phi = {k: minor_det(k, "Q", budget) for k in range(k_max + 1)}
    psi = {k: minor_det(k, "P", budget) for k in range(k_max + 1)}

    def record(identity: str, k: int, left: IntPolynomial, right: IntPolynomial) -> None:
        witness = _difference_witness(left, right)
        report.append(
            {
                "identity": identity,
                "k": k,
                "status": "pass" if witness is None else "fail",
                "witness": witness,
            }
        )

    for k in range(k_max + 1):
        matrix = build_recursive(k, Variant.GAMMA, budget)
        same = matrix.rotate180().entries == matrix.entries
        report.append(
            {
                "identity": "rotation-symmetry",
                "k": k,
                "status": "pass" if same else "fail",
                "witness": None if same else "entry sets differ",
            }
        )
    for k in range(k_max + 1):
        record("mirror-minor", k, minor_det(k, "S", budget), phi[k])
    for k in range(k_max):
        record("char-square", k, chi[k + 1], chi[k] * chi[k] - phi[k] * phi[k])
    for k in range(1, k_max):
        record("minor-q", k, phi[k + 1], -(phi[k] * psi[k]))
    for k in range(k_max):
        record("minor-p", k, psi[k + 1], chi[k] * psi[k])
    for k in range(2, k_max):
        product = IntPolynomial.one()
        for i in range(k - 1):
            product = product * (chi[i] ** (2 * (k - 1 - i)))
        record("master-recursion", k, chi[k + 1], chi[k] * chi[k] - product)
    return report
