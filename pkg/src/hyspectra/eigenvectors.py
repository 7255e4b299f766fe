"""Closed-form eigenvectors of the halved adjacency matrices.

Coefficients are exact symbolic objects: signed products and reciprocals
of the Chebyshev values u_j = U_j(cos(pi r/q)), recorded as index
multisets.  Numeric realizations are derived views.  Writing s_1..s_k
for the partial run sums of a bitstring (see states.run_decomposition),
the constructions are:

* interior class (eigenvalue key r/q with q = ell+2 <= n, one vector per
  choice of a fixed prefix of length n-ell-2): states prefix+10+p get
  1/prod u_{s_i(p)} over the free suffix p, states prefix+01+p get
  -u_ell times the coefficient of prefix+10+complement(p), all states
  with middle bits 00 or 11 and all states with a different prefix get 0.
* top class (key r/(n+2)): strings starting with 0 get
  1/prod u_{s_i}, each remaining string w gets u_n times the coefficient
  of complement(w).
* self-loop top class (key r/(n+1), eigenvector of the self-loop
  variant): same start, with multiplier -u_{n-1} instead.
* stationary vector (eigenvalue 1 of the halved self-loop matrix):
  strings starting with 0 get 1/prod (1 + s_i), complements repeat the
  value, then the vector is normalized to total mass 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .adjacency import AdjacencyMatrix, Variant
from .budget import DEFAULT, Budget
from .chebpoly import AngleFraction, chebyshev_u_at
from .states import MemoryState, run_decomposition

INTERIOR = "interior"
TOP = "top"
TOP_PRIME = "top-prime"


@dataclass(frozen=True)
class ChebProduct:
    """sign * prod(u_i for i in num) / prod(u_j for j in den), canonical.

    Canonical means: sign 0 has empty index tuples; index 0 never
    appears (u_0 = 1); no index occurs on both sides (equal indices
    cancel exactly, whatever the eigenvalue).  Equality of coefficients
    is index-multiset equality, never float comparison.
    """

    sign: int
    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")

    @classmethod
    def canonical(cls, sign: int, num: Iterable[int], den: Iterable[int]) -> "ChebProduct":
        if sign == 0:
            return cls(0, (), ())
        top = Counter(i for i in num if i != 0)
        bottom = Counter(i for i in den if i != 0)
        shared = top & bottom
        top -= shared
        bottom -= shared
        return cls(sign, tuple(sorted(top.elements())), tuple(sorted(bottom.elements())))

    @classmethod
    def zero(cls) -> "ChebProduct":
        return cls(0, (), ())

    @classmethod
    def one(cls) -> "ChebProduct":
        return cls(1, (), ())

    def is_zero(self) -> bool:
        return self.sign == 0

    def times(self, other: "ChebProduct") -> "ChebProduct":
        return ChebProduct.canonical(
            self.sign * other.sign, self.num + other.num, self.den + other.den
        )

    def value(self, root: AngleFraction) -> float:
        if self.sign == 0:
            return 0.0
        result = float(self.sign)
        for i in self.num:
            result *= chebyshev_u_at(i, root)
        for j in self.den:
            result /= chebyshev_u_at(j, root)
        return result

    def to_json(self, root: AngleFraction) -> dict:
        return {
            "sign": self.sign,
            "u_indices_num": list(self.num),
            "u_indices_den": list(self.den),
            "float": self.value(root),
        }


def run_product_reciprocal(bits: "Iterable[int] | str") -> ChebProduct:
    """1 / prod u_{s_i} over the partial run sums of the bitstring."""
    sums = run_decomposition(bits).partial_sums()
    return ChebProduct.canonical(1, (), sums)


@dataclass(frozen=True)
class Eigenvector:
    """Dense symbolic eigenvector; coefficients holds nonzero entries only."""

    n: int
    variant: Variant
    kind: str
    key: AngleFraction
    coefficients: Mapping[int, ChebProduct]
    ell: int | None = None
    prefix: tuple[int, ...] | None = None

    def coefficient(self, state: "MemoryState | int | str") -> ChebProduct:
        idx = _state_index(state, self.n)
        return self.coefficients.get(idx, ChebProduct.zero())

    def eigenvalue(self) -> float:
        """Eigenvalue on the halved matrix, cos(pi r/q)."""
        return self.key.cos()

    def to_array(self) -> np.ndarray:
        out = np.zeros(1 << self.n)
        for idx, coeff in self.coefficients.items():
            out[idx] = coeff.value(self.key)
        return out

    def support(self) -> frozenset[int]:
        return frozenset(idx for idx, c in self.coefficients.items() if not c.is_zero())

    def class_label(self) -> str:
        if self.kind == INTERIOR:
            prefix = "".join(str(b) for b in (self.prefix or ()))
            return f"interior(ell={self.ell},prefix={prefix})"
        return self.kind

    def to_json(self) -> dict:
        coeffs = {}
        for idx in range(1 << self.n):
            state = MemoryState.from_index(idx, self.n).as_string()
            coeffs[state] = self.coefficient(idx).to_json(self.key)
        return {
            "n": self.n,
            "eigenvalue": {"r": self.key.r, "q": self.key.q, "float": self.key.cos()},
            "class": self.class_label(),
            "coefficients": coeffs,
        }


def _state_index(state: "MemoryState | int | str", n: int) -> int:
    if isinstance(state, MemoryState):
        if state.n != n:
            raise ValueError(f"state length {state.n} does not match n={n}")
        return state.index
    if isinstance(state, str):
        return _state_index(MemoryState.from_string(state), n)
    idx = int(state)
    if not 0 <= idx < (1 << n):
        raise ValueError(f"state index {idx} out of range")
    return idx


def _parse_prefix(prefix: "str | Iterable[int]", expected: int) -> tuple[int, ...]:
    if isinstance(prefix, str):
        bits = tuple(int(c) for c in prefix)
    else:
        bits = tuple(int(b) for b in prefix)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("prefix must consist of bits")
    if len(bits) != expected:
        raise ValueError(f"prefix must have length {expected}, got {len(bits)}")
    return bits


def eigenvector_interior(
    n: int,
    ell: int,
    root: AngleFraction,
    prefix: "str | Iterable[int]",
    budget: Budget = DEFAULT,
) -> Eigenvector:
    """Interior-class eigenvector for eigenvalue key r/(ell+2).

    The root must be a zero of U_{ell+1} avoiding all lower-index U_j;
    exactly the reduced fractions with denominator ell+2 qualify.
    """
    if n < 2:
        raise ValueError("interior class needs n >= 2")
    if not 0 <= ell <= n - 2:
        raise ValueError(f"ell must lie in [0, {n - 2}], got {ell}")
    if root.q != ell + 2:
        raise ValueError(
            f"root {root} is not a zero of U_{ell + 1} clear of U_1..U_{ell}: "
            f"its denominator must be exactly {ell + 2}"
        )
    budget.check("dense_n", n, "dense eigenvector construction")
    prefix_bits = _parse_prefix(prefix, n - ell - 2)
    prefix_value = 0
    for b in prefix_bits:
        prefix_value = (prefix_value << 1) | b

    coeffs: dict[int, ChebProduct] = {}
    base = prefix_value << (ell + 2)
    suffix_mask = (1 << ell) - 1
    ten_products: dict[int, ChebProduct] = {}
    for suffix in range(1 << ell):
        bits = tuple((suffix >> (ell - 1 - i)) & 1 for i in range(ell))
        ten_products[suffix] = run_product_reciprocal(bits)
        coeffs[base | (0b10 << ell) | suffix] = ten_products[suffix]
    for suffix in range(1 << ell):
        partner = ten_products[(~suffix) & suffix_mask]
        value = ChebProduct.canonical(-partner.sign, partner.num + (ell,), partner.den)
        if not value.is_zero():
            coeffs[base | (0b01 << ell) | suffix] = value
    return Eigenvector(
        n=n,
        variant=Variant.GAMMA,
        kind=INTERIOR,
        key=root,
        coefficients=coeffs,
        ell=ell,
        prefix=prefix_bits,
    )


def _half_mirrored(n: int, root: AngleFraction, multiplier: ChebProduct) -> dict[int, ChebProduct]:
    """Coefficients: run products on 0-starting strings, multiplied copies
    on their complements."""
    coeffs: dict[int, ChebProduct] = {}
    half = 1 << (n - 1)
    full = (1 << n) - 1
    for idx in range(half):
        bits = tuple((idx >> (n - 1 - i)) & 1 for i in range(n))
        coeffs[idx] = run_product_reciprocal(bits)
    for idx in range(half, 1 << n):
        coeffs[idx] = coeffs[full ^ idx].times(multiplier)
    return coeffs


def eigenvector_top(n: int, root: AngleFraction, budget: Budget = DEFAULT) -> Eigenvector:
    """Top-class eigenvector: key denominator n+2 (zero of U_{n+1} clear
    of all lower-index U_j)."""
    if n < 1:
        raise ValueError("n must be positive")
    if root.q != n + 2:
        raise ValueError(
            f"root {root} is not a zero of U_{n + 1} clear of U_1..U_{n - 1}: "
            f"its denominator must be exactly {n + 2}"
        )
    budget.check("dense_n", n, "dense eigenvector construction")
    multiplier = ChebProduct.canonical(1, (n,), ())
    coeffs = _half_mirrored(n, root, multiplier)
    return Eigenvector(n=n, variant=Variant.GAMMA, kind=TOP, key=root, coefficients=coeffs)


def eigenvector_gamma_prime(n: int, root: AngleFraction, budget: Budget = DEFAULT) -> Eigenvector:
    """Eigenvector of the halved self-loop matrix for key denominator n+1
    (zero of U_n clear of lower-index U_j)."""
    if n < 1:
        raise ValueError("n must be positive")
    if root.q != n + 1:
        raise ValueError(
            f"root {root} is not a zero of U_{n} clear of U_1..U_{n - 1}: "
            f"its denominator must be exactly {n + 1}"
        )
    budget.check("dense_n", n, "dense eigenvector construction")
    multiplier = ChebProduct.canonical(-1, (n - 1,), ())
    coeffs = _half_mirrored(n, root, multiplier)
    return Eigenvector(
        n=n, variant=Variant.GAMMA_PRIME, kind=TOP_PRIME, key=root, coefficients=coeffs
    )


def stationary_fractions(n: int) -> list[Fraction]:
    """Exact stationary distribution of the halved self-loop chain.

    Unnormalized weights are 1/prod(1 + s_i) on 0-starting strings and
    equal on complements; returned normalized to total 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    half = 1 << (n - 1)
    full = (1 << n) - 1
    weights: list[Fraction] = [Fraction(0)] * (1 << n)
    for idx in range(half):
        bits = tuple((idx >> (n - 1 - i)) & 1 for i in range(n))
        product = 1
        for s in run_decomposition(bits).partial_sums():
            product *= 1 + s
        weights[idx] = Fraction(1, product)
    for idx in range(half, 1 << n):
        weights[idx] = weights[full ^ idx]
    total = sum(weights)
    return [w / total for w in weights]


def stationary_vector(n: int) -> np.ndarray:
    """Float view of stationary_fractions(n); nonnegative, sums to 1."""
    return np.array([float(w) for w in stationary_fractions(n)])


def residual(
    vector: "np.ndarray | Eigenvector",
    matrix: AdjacencyMatrix,
    eigenvalue: float,
) -> float:
    """max-norm of (1/2) A v - eigenvalue * v with v scaled to max-norm 1."""
    v = vector.to_array() if isinstance(vector, Eigenvector) else np.asarray(vector, dtype=float)
    if v.shape != (matrix.order,):
        raise ValueError(f"vector has shape {v.shape}, matrix needs ({matrix.order},)")
    scale = np.max(np.abs(v))
    if scale == 0:
        raise ValueError("zero vector has no residual")
    v = v / scale
    return float(np.max(np.abs(0.5 * matrix.matvec(v) - eigenvalue * v)))
