"""Closed-form spectral data for the LIFO transition graph.

The characteristic polynomial of the level-N adjacency matrix is a
product of Chebyshev-type factors: writing p_i for U_i(-x/2),

* plain graph:      p_{N+1} * prod_{i=0}^{N-1} p_i ** 2**(N-i-1)
* self-loop graph:  (2-x) * p_N * prod_{i=0}^{N-1} p_i ** 2**(N-i-1)

Since the zeros of U_i are the numbers cos(pi r/(i+1)), every eigenvalue
is 2cos(pi r/q) for a reduced fraction r/q (plus the eigenvalue 2 of the
self-loop variant), and exact multiplicities follow by aggregating the
factor zeros over AngleFraction keys.  The eigenvalue-counting function
of the halved matrix converges to 1 - f(arccos(x)/pi) where f is the
binary Devil's staircase implemented at the bottom of this module.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .adjacency import Variant
from .budget import DEFAULT, Budget
from .chebpoly import AngleFraction, IntPolynomial, chebyshev_u_neg_half, chebyshev_zeros

U_NEG_HALF = "u-neg-half"
TWO_MINUS_X = "two-minus-x"


@dataclass(frozen=True)
class CharFactor:
    """One factor of the characteristic polynomial, with multiplicity."""

    kind: str
    index: int
    multiplicity: int

    def __post_init__(self) -> None:
        if self.kind not in (U_NEG_HALF, TWO_MINUS_X):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.kind == U_NEG_HALF and self.index < 0:
            raise ValueError("factor index must be nonnegative")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def degree(self) -> int:
        return self.index if self.kind == U_NEG_HALF else 1

    def polynomial(self) -> IntPolynomial:
        if self.kind == U_NEG_HALF:
            return chebyshev_u_neg_half(self.index)
        return IntPolynomial((2, -1))


@dataclass(frozen=True)
class FactoredCharPoly:
    """Characteristic polynomial in factored form; total degree 2**n."""

    n: int
    variant: Variant
    factors: tuple[CharFactor, ...]

    def __post_init__(self) -> None:
        total = sum(f.degree * f.multiplicity for f in self.factors)
        if total != 1 << self.n:
            raise ValueError(f"factor degrees sum to {total}, expected {1 << self.n}")

    def degree(self) -> int:
        return 1 << self.n


def characteristic_factors(n: int, variant: "Variant | str" = Variant.GAMMA) -> FactoredCharPoly:
    """Exact factor list of det(A - xI) for the level-n graph."""
    var = Variant.parse(variant)
    if n < 1:
        raise ValueError("n must be positive")
    factors: list[CharFactor] = []
    if var is Variant.GAMMA:
        factors.append(CharFactor(U_NEG_HALF, n + 1, 1))
    else:
        factors.append(CharFactor(TWO_MINUS_X, 0, 1))
        factors.append(CharFactor(U_NEG_HALF, n, 1))
    for i in range(n - 1, -1, -1):
        factors.append(CharFactor(U_NEG_HALF, i, 1 << (n - i - 1)))
    return FactoredCharPoly(n, var, tuple(factors))


def expand_characteristic(factored: FactoredCharPoly, budget: Budget = DEFAULT) -> IntPolynomial:
    """Multiply the factors out exactly.  Degree doubles per level, so the
    budget refuses beyond expand_n."""
    budget.check("expand_n", factored.n, "characteristic polynomial expansion")
    result = IntPolynomial.one()
    for factor in factored.factors:
        result = result * (factor.polynomial() ** factor.multiplicity)
    return result


# -- exact spectrum -----------------------------------------------------------


@dataclass(frozen=True)
class SpectrumEntry:
    """Eigenvalue key with algebraic multiplicity.

    key None stands for the special eigenvalue 2 of the self-loop
    variant (eigenvalue 1 of the halved matrix); otherwise the
    eigenvalue is 2cos(pi r/q).
    """

    key: AngleFraction | None
    multiplicity: int

    def eigenvalue(self) -> float:
        return 2.0 if self.key is None else self.key.eigenvalue()

    def cos_value(self) -> float:
        """Eigenvalue of the halved matrix."""
        return 1.0 if self.key is None else self.key.cos()


@dataclass(frozen=True)
class SpectrumTable:
    """All eigenvalues of the level-n adjacency matrix, exactly keyed.

    Entries are sorted by increasing eigenvalue; multiplicities sum to
    2**n.
    """

    n: int
    variant: Variant
    entries: tuple[SpectrumEntry, ...]

    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def multiplicity(self, key: AngleFraction | None) -> int:
        for entry in self.entries:
            if entry.key == key:
                return entry.multiplicity
        return 0

    def jump(self, key: AngleFraction | None) -> Fraction:
        """Jump size of the eigenvalue-counting function at this key."""
        return Fraction(self.multiplicity(key), 1 << self.n)


def spectrum(n: int, variant: "Variant | str" = Variant.GAMMA) -> SpectrumTable:
    """Exact eigenvalue table aggregated over AngleFraction keys.

    Closed form: no matrix is built, so n in the hundreds is fine.
    """
    var = Variant.parse(variant)
    if n < 1:
        raise ValueError("n must be positive")
    counts: dict[AngleFraction, int] = {}

    def add_zeros(index: int, multiplicity: int) -> None:
        for frac in chebyshev_zeros(index):
            counts[frac] = counts.get(frac, 0) + multiplicity

    if var is Variant.GAMMA:
        add_zeros(n + 1, 1)
    else:
        add_zeros(n, 1)
    for i in range(1, n):
        add_zeros(i, 1 << (n - i - 1))

    entries = [SpectrumEntry(key, counts[key]) for key in sorted(counts)]
    if var is Variant.GAMMA_PRIME:
        entries.append(SpectrumEntry(None, 1))
    return SpectrumTable(n, var, tuple(entries))


def spectrum_diff(a: SpectrumTable, b: SpectrumTable) -> dict[AngleFraction | None, int]:
    """Multiplicity changes from table a to table b (b minus a), zero-free."""
    delta: dict[AngleFraction | None, int] = {}
    for entry in a.entries:
        delta[entry.key] = delta.get(entry.key, 0) - entry.multiplicity
    for entry in b.entries:
        delta[entry.key] = delta.get(entry.key, 0) + entry.multiplicity
    return {key: d for key, d in delta.items() if d != 0}


GUARD_BAND = 1e-12


@dataclass(frozen=True)
class DistributionValue:
    """Exact eigenvalue-counting value, flagged if a float query landed
    within the guard band of a spectral key."""

    value: Fraction
    guarded: bool


def eigenvalue_distribution(
    n: int,
    variant: "Variant | str",
    x: "float | AngleFraction",
) -> DistributionValue:
    """Fraction of eigenvalues of the halved matrix strictly below x.

    AngleFraction queries are decided exactly by cross-multiplication;
    float queries compare against float keys and are flagged when within
    1e-12 of a key, where the strict inequality is not trustworthy.
    """
    table = spectrum(n, variant)
    if isinstance(x, AngleFraction):
        count = 0
        for entry in table.entries:
            if entry.key is None:
                continue  # cos value 1 is never below an interior key
            if entry.key < x:
                count += entry.multiplicity
        return DistributionValue(Fraction(count, 1 << n), False)
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise TypeError(f"query must be a float or AngleFraction, got {type(x).__name__}")
    xf = float(x)
    count = 0
    guarded = False
    for entry in table.entries:
        value = entry.cos_value()
        if abs(value - xf) <= GUARD_BAND:
            guarded = True
        if value < xf:
            count += entry.multiplicity
    return DistributionValue(Fraction(count, 1 << n), guarded)


# -- Devil's staircase --------------------------------------------------------


@dataclass(frozen=True)
class StaircaseValue:
    """Value of the staircase (or a derived quantity) with a certified
    truncation bound; exact evaluations carry bound 0."""

    x: Union[Fraction, float]
    value: Union[Fraction, float]
    error_bound: Union[Fraction, float]


def _floor_series(x: Union[Fraction, float], terms: int) -> StaircaseValue:
    if terms < 1:
        raise ValueError("terms must be >= 1")
    exact = isinstance(x, (int, Fraction)) and not isinstance(x, bool)
    if x <= 0:
        zero = Fraction(0) if exact else 0.0
        return StaircaseValue(x, zero, zero)
    if x >= 1:
        return StaircaseValue(x, Fraction(1) if exact else 1.0, Fraction(0) if exact else 0.0)
    if exact:
        xq = Fraction(x)
        total = Fraction(0)
        for k in range(1, terms + 1):
            total += Fraction(math.floor(k * xq), 1 << k)
        bound = Fraction(terms + 2, 1 << terms)
        return StaircaseValue(xq, total, bound)
    total_f = 0.0
    for k in range(1, terms + 1):
        total_f += math.floor(k * x) / (1 << k) if k < 1020 else 0.0
    bound_f = (terms + 2) / float(1 << min(terms, 1020))
    return StaircaseValue(float(x), total_f, bound_f)


def _jump_form(x: Union[Fraction, int]) -> StaircaseValue:
    xq = Fraction(x)
    if xq <= 0:
        return StaircaseValue(xq, Fraction(0), Fraction(0))
    if xq >= 1:
        return StaircaseValue(xq, Fraction(1), Fraction(0))
    r, q = xq.numerator, xq.denominator
    # sum_{p>=1} 2^{-floor(p/x)} over one period p = 1..r, then geometric
    period = Fraction(0)
    for p in range(1, r + 1):
        period += Fraction(1, 1 << (p * q) // r)
    denom = (1 << q) - 1
    value = period * Fraction(1 << q, denom) + Fraction(1, denom)
    return StaircaseValue(xq, value, Fraction(0))


def devils_staircase(
    x: Union[Fraction, int, float],
    mode: str = "jump-form",
    terms: int = 60,
) -> StaircaseValue:
    """The binary Devil's staircase f(x) = sum_k floor(kx)/2^k.

    Extended by 0 below 0 and by 1 from 1 on.  mode "jump-form" needs an
    exact rational x and returns the exact value, including the jump
    1/(2^q - 1) that f makes at x = r/q; mode "floor-series" truncates
    the defining series after `terms` terms with certified error bound
    (terms + 2)/2^terms and accepts floats.
    """
    if mode == "jump-form":
        if isinstance(x, float) or isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise ValueError("jump-form needs an exact rational; use floor-series for floats")
        return _jump_form(x)
    if mode == "floor-series":
        return _floor_series(x, terms)
    raise ValueError(f"unknown mode {mode!r}; expected 'jump-form' or 'floor-series'")


def devils_staircase_left_limit(x: Union[Fraction, int]) -> Fraction:
    """Left limit f(x-) at a rational point: the jump-form value without
    the jump term."""
    if isinstance(x, float) or isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise ValueError("left limit is computed at exact rationals only")
    xq = Fraction(x)
    if xq <= 0:
        return Fraction(0)
    if xq > 1:
        return Fraction(1)
    r, q = xq.numerator, xq.denominator
    period = Fraction(0)
    for p in range(1, r + 1):
        period += Fraction(1, 1 << (p * q) // r)
    return period * Fraction(1 << q, (1 << q) - 1)


def staircase_jump(x: Union[Fraction, int]) -> Fraction:
    """Jump of f at the rational x = r/q in (0,1): it is 1/(2^q - 1)."""
    xq = Fraction(x)
    if not 0 < xq < 1:
        return Fraction(0)
    return Fraction(1, (1 << xq.denominator) - 1)


def totient_sum(q_max: int) -> Fraction:
    """sum_{q=2}^{q_max} phi(q)/(2^q - 1); increases to exactly 1.

    The total equaling 1 certifies that the staircase is a pure jump
    function: the jumps at all rationals exhaust its range.
    """
    if q_max < 2:
        raise ValueError("q_max must be >= 2")
    total = Fraction(0)
    for q in range(2, q_max + 1):
        phi = sum(1 for p in range(1, q + 1) if math.gcd(p, q) == 1)
        total += Fraction(phi, (1 << q) - 1)
    return total


def limit_distribution(
    x: float,
    terms: int = 60,
    snap_denominator: int = 64,
) -> StaircaseValue:
    """Limiting eigenvalue distribution 1 - f(arccos(x)/pi) on [-1, 1].

    When arccos(x)/pi is within 1e-12 of a rational with denominator at
    most snap_denominator, the staircase is evaluated there exactly by
    jump form (the float series cannot resolve which side of its own
    jump such a point falls on); otherwise the truncated floor series is
    used and its certified bound is propagated.
    """
    xf = float(x)
    if not -1.0 <= xf <= 1.0:
        raise ValueError(f"x must lie in [-1, 1], got {x!r}")
    t = math.acos(xf) / math.pi
    if snap_denominator >= 1:
        candidate = Fraction(t).limit_denominator(snap_denominator)
        if abs(candidate - t) <= 1e-12:
            f_exact = _jump_form(candidate).value
            return StaircaseValue(xf, 1.0 - float(f_exact), 0.0)
    series = _floor_series(t, terms)
    return StaircaseValue(xf, 1.0 - series.value, series.error_bound)


def finite_staircase(n: int, x: Union[Fraction, float]) -> float:
    """Finite-level staircase proxy from the convergence analysis:
    [sum_{p=1}^{n-1} 2^{1-ceil(p/x)}] - (n-1) 2^{-n}.

    A diagnostic of the limit treatment only; the eigenvalue-counting
    function itself always comes from the exact spectrum.  The raw value
    is reported even where it is negative (tiny x).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 < x < 1:
        raise ValueError("x must lie strictly between 0 and 1")
    total = Fraction(0)
    for p in range(1, n):
        c = math.ceil(Fraction(p) / Fraction(x)) if not isinstance(x, float) else math.ceil(p / x)
        if c - 1 > 400:
            continue  # below 2^-400: invisible at float precision
        total += Fraction(1, 1 << (c - 1))
    total -= Fraction(n - 1, 1 << n)
    return float(total)


# -- distribution table -------------------------------------------------------


@dataclass(frozen=True)
class DistributionRow:
    x: float
    f_n: Fraction
    f_limit: float
    diff: float
    guarded: bool


def distribution_table(
    n: int,
    variant: "Variant | str" = Variant.GAMMA,
    points: int = 512,
    terms: int = 60,
    guard_denominator: int = 12,
    guard_radius: float = 1e-3,
) -> list[DistributionRow]:
    """Sampled comparison of the finite and limiting distributions.

    The grid is uniform over (-1, 1) at cell midpoints.  A row is
    flagged (never dropped) when arccos(x)/pi falls within guard_radius
    of a rational with denominator <= guard_denominator: the two sides
    of the comparison use opposite continuity conventions at jumps, so
    such rows are excluded from accuracy claims.
    """
    if points < 1:
        raise ValueError("points must be positive")
    table = spectrum(n, variant)
    cos_values = [entry.cos_value() for entry in table.entries]
    cumulative = [0]
    for entry in table.entries:
        cumulative.append(cumulative[-1] + entry.multiplicity)
    guard_fractions = sorted(
        {Fraction(r, q) for q in range(1, guard_denominator + 1) for r in range(0, q + 1)}
    )

    rows: list[DistributionRow] = []
    order = 1 << n
    for j in range(points):
        x = -1.0 + 2.0 * (j + 0.5) / points
        idx = bisect_left(cos_values, x)
        f_n = Fraction(cumulative[idx], order)
        limit = limit_distribution(x, terms=terms)
        t = math.acos(x) / math.pi
        guarded = any(abs(t - float(g)) < guard_radius for g in guard_fractions)
        rows.append(
            DistributionRow(
                x=x,
                f_n=f_n,
                f_limit=float(limit.value),
                diff=abs(float(f_n) - float(limit.value)),
                guarded=guarded,
            )
        )
    return rows
