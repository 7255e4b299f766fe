"""Exact integer polynomials and Chebyshev polynomials of the second kind.

The spectral structure of the LIFO transition graph is governed by the
Chebyshev family U_k and by the rescaled family obtained by evaluating
U_k at -x/2, which has integer coefficients in x.  Everything here is
exact: coefficients are Python ints, evaluation accepts ints, Fractions
and floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence, Union

Scalar = Union[int, Fraction, float]


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, constant term first.

    The zero polynomial is the empty tuple and has degree -1; otherwise
    the trailing (leading-degree) coefficient is nonzero.

    >>> p = IntPolynomial.from_coefficients([0, -2, 0, 1])
    >>> p.degree
    3
    >>> p(2)
    4
    >>> p.pretty()
    'x^3 - 2x'
    """

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.coefficients and self.coefficients[-1] == 0:
            raise ValueError("leading coefficient must be nonzero (use from_coefficients)")

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[int]) -> "IntPolynomial":
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls.from_coefficients([c])

    @classmethod
    def variable(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> int:
        if not self.coefficients:
            return 0
        return self.coefficients[-1]

    def is_zero(self) -> bool:
        return not self.coefficients

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        other = _coerce(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial.from_coefficients(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return _coerce(other) + (-self)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        other = _coerce(other)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return IntPolynomial.from_coefficients(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = IntPolynomial.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x: Scalar) -> Scalar:
        """Evaluate by Horner's rule; exact for int and Fraction inputs."""
        acc: Scalar = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    # -- presentation -------------------------------------------------------

    def pretty(self, var: str = "x") -> str:
        """Human-readable form, highest degree first.

        >>> IntPolynomial.from_coefficients([0, 0, -2, 0, 1]).pretty("λ")
        'λ^4 - 2λ^2'
        """
        if not self.coefficients:
            return "0"
        terms: list[str] = []
        for deg in range(self.degree, -1, -1):
            c = self.coefficients[deg]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if deg == 0:
                body = str(mag)
            else:
                power = var if deg == 1 else f"{var}^{deg}"
                body = power if mag == 1 else f"{mag}{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def coefficients_json(self) -> list[str]:
        """Coefficients as decimal strings, index = degree."""
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_coefficients_json(cls, data: Sequence[str]) -> "IntPolynomial":
        return cls.from_coefficients([int(s) for s in data])


def _coerce(value: "IntPolynomial | int") -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial.from_coefficients([value])
    raise TypeError(f"cannot mix IntPolynomial with {type(value).__name__}")


# -- Chebyshev U and its -x/2 rescaling -------------------------------------

_U_CACHE: list[IntPolynomial] = [
    IntPolynomial.one(),
    IntPolynomial((0, 2)),
]
_UNH_CACHE: list[IntPolynomial] = [
    IntPolynomial.one(),
    IntPolynomial((0, -1)),
]


def chebyshev_u(k: int) -> IntPolynomial:
    """Chebyshev polynomial of the second kind U_k.

    U_0 = 1, U_1 = 2x, U_{k+1} = 2x U_k - U_{k-1};
    U_k(cos t) = sin((k+1)t) / sin(t).
    """
    if k < 0:
        raise ValueError("index must be nonnegative")
    while len(_U_CACHE) <= k:
        two_x = _U_CACHE[1]
        _U_CACHE.append(two_x * _U_CACHE[-1] - _U_CACHE[-2])
    return _U_CACHE[k]


def chebyshev_u_neg_half(k: int) -> IntPolynomial:
    """U_k evaluated at -x/2, expanded as an integer polynomial in x.

    Satisfies p_0 = 1, p_1 = -x, p_{k+1} = -x p_k - p_{k-1}; its zeros
    are 2cos(pi r/(k+1)) for r = 1..k, so it carries the same root data
    as U_k on the doubled axis with mirrored sign.
    """
    if k < 0:
        raise ValueError("index must be nonnegative")
    while len(_UNH_CACHE) <= k:
        neg_x = _UNH_CACHE[1]
        _UNH_CACHE.append(neg_x * _UNH_CACHE[-1] - _UNH_CACHE[-2])
    return _UNH_CACHE[k]


def pell_residual(k: int, family: str = "u") -> IntPolynomial:
    """(U_{k+1})^2 - U_{k+2} U_k - 1, which is identically zero.

    family "u" uses U_k, family "u-neg-half" the rescaled polynomials;
    the identity transports to the rescaling unchanged.
    """
    if family == "u":
        fam = chebyshev_u
    elif family == "u-neg-half":
        fam = chebyshev_u_neg_half
    else:
        raise ValueError(f"unknown family {family!r}")
    return fam(k + 1) * fam(k + 1) - fam(k + 2) * fam(k) - IntPolynomial.one()


def pell_identity_holds(k: int, family: str = "u") -> bool:
    return pell_residual(k, family).is_zero()


# -- exact angle bookkeeping --------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class AngleFraction:
    """Reduced fraction r/q (0 < r < q, q >= 2) labelling the number
    2cos(pi r/q).

    These are exact keys for eigenvalues: distinct reduced fractions give
    distinct values.  The order is the numeric order of 2cos(pi r/q),
    i.e. the reverse of the fraction order.

    >>> AngleFraction.reduced(2, 8)
    AngleFraction(r=1, q=4)
    >>> AngleFraction(1, 4) < AngleFraction(1, 3)
    False
    """

    r: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 2 or not 0 < self.r < self.q:
            raise ValueError(f"need 0 < r < q and q >= 2, got {self.r}/{self.q}")
        if math.gcd(self.r, self.q) != 1:
            raise ValueError(f"{self.r}/{self.q} is not reduced")

    @classmethod
    def reduced(cls, r: int, q: int) -> "AngleFraction":
        if q == 0:
            raise ValueError("zero denominator")
        if q < 0:
            r, q = -r, -q
        g = math.gcd(r, q)
        return cls(r // g, q // g)

    def __lt__(self, other: "AngleFraction") -> bool:
        if not isinstance(other, AngleFraction):
            return NotImplemented
        # larger angle means smaller cosine
        return self.r * other.q > other.r * self.q

    @property
    def angle(self) -> Fraction:
        return Fraction(self.r, self.q)

    def cos(self) -> float:
        """cos(pi r/q), the eigenvalue on the halved matrix.

        Evaluated on the first quarter turn so that complementary
        fractions r/q and (q-r)/q give exact float negatives; the right
        angle gives exact 0.0 and the third-turn angles exact +-0.5.
        """
        if 2 * self.r == self.q:
            return 0.0
        flip = 2 * self.r > self.q
        r = self.q - self.r if flip else self.r
        value = 0.5 if 3 * r == self.q else math.cos(math.pi * r / self.q)
        return -value if flip else value

    def eigenvalue(self) -> float:
        """2cos(pi r/q), the eigenvalue on the unscaled matrix."""
        return 2.0 * self.cos()

    def is_zero_of_u(self, k: int) -> bool:
        """Whether cos(pi r/q) is a zero of U_k, i.e. q divides k+1."""
        return k >= 1 and (k + 1) % self.q == 0

    def __str__(self) -> str:
        return f"{self.r}/{self.q}"


def chebyshev_zeros(k: int) -> tuple[AngleFraction, ...]:
    """Zeros of U_k as angle fractions (i+1)/(k+1), i = 0..k-1.

    Ordered by increasing numerator, hence strictly decreasing cosine.
    """
    if k < 0:
        raise ValueError("index must be nonnegative")
    return tuple(AngleFraction.reduced(i + 1, k + 1) for i in range(k))


def chebyshev_u_at(k: int, frac: AngleFraction) -> float:
    """U_k(cos(pi r/q)) with exact zero detection.

    sin((k+1)t)/sin(t) vanishes exactly when q divides (k+1)r, which for
    a reduced fraction means q divides k+1; that case returns exact 0.0.
    """
    if k < 0:
        raise ValueError("index must be nonnegative")
    theta = math.pi * frac.r / frac.q
    if ((k + 1) * frac.r) % frac.q == 0:
        return 0.0
    return math.sin((k + 1) * theta) / math.sin(theta)


def chebyshev_u_value(k: int, x: float) -> float:
    """U_k(x) for float x by the three-term recurrence."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    prev, cur = 1.0, 2.0 * x
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur
