"""States of a binary LIFO memory and their transition rules.

A state is an N-tuple of bits ``(x_0, ..., x_{N-1})``.  Geometrically the
bits trace a monotone staircase across a triangle of side N: read left to
right, a 1 is a unit step right and a 0 a unit step down, starting at the
triangle's top-left corner.  The area swept to the lower left of that
staircase is the stored output; the number of 1s is the stored input.

Transitions follow the last-in-first-out rule:

* an input increase replaces the rightmost 0 with a 1,
* an input decrease replaces the rightmost 1 with a 0.

The move is undefined at the saturated states (all ones / all zeros); the
self-loop variant of the transition graph makes those states loop instead,
which is handled by callers via :meth:`MemoryState.successors`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence


class TransitionError(ValueError):
    """An input move was requested at a state that cannot absorb it."""


@dataclass(frozen=True, order=True)
class MemoryState:
    """Immutable bitstring state with x_0 as the most significant bit."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"state bits must be 0 or 1, got {self.bits!r}")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_string(cls, text: str) -> "MemoryState":
        """Parse a state like ``"10110"``; the empty string is the N=0 state."""
        if any(c not in "01" for c in text):
            raise ValueError(f"state string must contain only 0 and 1, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_index(cls, index: int, n: int) -> "MemoryState":
        """State whose string is the n-digit binary expansion of ``index``."""
        if n < 0:
            raise ValueError("state length must be nonnegative")
        if not 0 <= index < (1 << n):
            raise ValueError(f"index {index} out of range for {n} bits")
        return cls(tuple((index >> (n - 1 - i)) & 1 for i in range(n)))

    # -- basic views ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        """Binary value of the bitstring, x_0 most significant."""
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def as_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __str__(self) -> str:
        return self.as_string()

    # -- transitions -----------------------------------------------------

    def step_up(self) -> "MemoryState":
        """Replace the rightmost 0 with a 1.

        Raises TransitionError at the all-ones state.
        """
        for i in range(self.n - 1, -1, -1):
            if self.bits[i] == 0:
                return MemoryState(self.bits[:i] + (1,) + self.bits[i + 1:])
        raise TransitionError(f"cannot increase input at saturated state {self}")

    def step_down(self) -> "MemoryState":
        """Replace the rightmost 1 with a 0.

        Raises TransitionError at the all-zeros state.
        """
        for i in range(self.n - 1, -1, -1):
            if self.bits[i] == 1:
                return MemoryState(self.bits[:i] + (0,) + self.bits[i + 1:])
        raise TransitionError(f"cannot decrease input at saturated state {self}")

    def successors(self, variant: "str | None" = "gamma") -> frozenset["MemoryState"]:
        """Successor states in the transition graph.

        variant "gamma" drops the undefined boundary moves; "gamma-prime"
        replaces each undefined move with a self-loop, so every state has
        exactly two outgoing edges counted with multiplicity collapsed to
        the set view (the two boundary states have the loop and one move).
        """
        from .adjacency import Variant  # local import to avoid a cycle

        var = Variant.parse(variant)
        out: set[MemoryState] = set()
        for move in (self.step_up, self.step_down):
            try:
                out.add(move())
            except TransitionError:
                if var is Variant.GAMMA_PRIME:
                    out.add(self)
        return frozenset(out)

    # -- stored quantities -------------------------------------------------

    def input_value(self) -> int:
        """Number of 1s; the current input level the state remembers."""
        return sum(self.bits)

    def output_area(self) -> int:
        """Area below-left of the staircase inside the triangle.

        The staircase starts at height N; each 1 is a horizontal segment at
        the current height h from abscissa x to x+1 and contributes h - x,
        each 0 lowers the height by one.  All zeros give 0, all ones give
        the full triangle N(N+1)/2.
        """
        height = self.n
        abscissa = 0
        area = 0
        for b in self.bits:
            if b:
                area += height - abscissa
                abscissa += 1
            else:
                height -= 1
        return area

    def complement(self) -> "MemoryState":
        """Flip every bit.

        This is the up-down symmetry of the rule set: it exchanges
        increase and decrease moves, hence is a graph automorphism.
        """
        return MemoryState(tuple(1 - b for b in self.bits))

    # -- run structure ----------------------------------------------------

    def run_decomposition(self) -> "RunDecomposition":
        return run_decomposition(self.bits)


@dataclass(frozen=True)
class RunDecomposition:
    """Maximal-run lengths of a bitstring, counted from the right.

    ``runs == (j_1, j_2, ..., j_{k+1})`` with k odd, where j_1 is the
    length of the trailing run of 1s (possibly 0), j_2 the run of 0s to
    its left, and so on alternating; j_{k+1} is the leading run of 0s
    (possibly 0).  All interior runs are at least 1, so the bitstring is
    ``0^{j_{k+1}} 1^{j_k} ... 0^{j_2} 1^{j_1}``.
    """

    runs: tuple[int, ...]

    def __post_init__(self) -> None:
        r = self.runs
        if len(r) < 2 or len(r) % 2 != 0:
            raise ValueError("runs must have even length >= 2 (k odd)")
        if any(v < 0 for v in r):
            raise ValueError("run lengths must be nonnegative")
        if any(v < 1 for v in r[1:-1]):
            raise ValueError("interior run lengths must be positive")

    @property
    def k(self) -> int:
        return len(self.runs) - 1

    def partial_sums(self) -> tuple[int, ...]:
        """``(s_1, ..., s_k)`` with ``s_i = j_1 + ... + j_i``."""
        return tuple(accumulate(self.runs[:-1]))

    def reassemble(self) -> str:
        """The unique bitstring with these runs."""
        pieces: list[str] = []
        for i, count in enumerate(self.runs):
            pieces.append(("1" if i % 2 == 0 else "0") * count)
        return "".join(reversed(pieces))


def run_decomposition(bits: "Iterable[int] | str") -> RunDecomposition:
    """Run decomposition of a bitstring (str, tuple of bits, or state)."""
    if isinstance(bits, MemoryState):
        seq: Sequence[int] = bits.bits
    elif isinstance(bits, str):
        seq = [int(c) for c in bits]
        if any(b not in (0, 1) for b in seq):
            raise ValueError(f"bitstring must contain only 0 and 1, got {bits!r}")
    else:
        seq = tuple(bits)
        if any(b not in (0, 1) for b in seq):
            raise ValueError("bits must be 0 or 1")
    runs: list[int] = []
    pos = len(seq)
    want = 1
    while pos > 0:
        count = 0
        while pos > 0 and seq[pos - 1] == want:
            count += 1
            pos -= 1
        runs.append(count)
        want = 1 - want
    if not runs:
        runs = [0, 0]
    elif len(runs) % 2 == 1:
        # leading run of 0s is empty when the string starts with 1
        runs.append(0)
    return RunDecomposition(tuple(runs))


def all_states(n: int) -> Iterator[MemoryState]:
    """All 2**n states of length n in index order."""
    for idx in range(1 << n):
        yield MemoryState.from_index(idx, n)


def apply_input_sequence(
    start: MemoryState,
    deltas: Sequence[int],
    policy: str = "strict",
) -> tuple[MemoryState, ...]:
    """Trajectory of states visited under a sequence of +1/-1 input moves.

    The returned tuple begins with ``start`` and has one further entry per
    move.  policy "strict" raises TransitionError (naming the offending
    1-based step) when a move is undefined; policy "clip" keeps the state
    unchanged at the boundary, matching the self-loop graph variant.
    """
    if policy not in ("strict", "clip"):
        raise ValueError(f"policy must be 'strict' or 'clip', got {policy!r}")
    for delta in deltas:
        if delta not in (1, -1):
            raise ValueError(f"input moves must be +1 or -1, got {delta!r}")
    trajectory = [start]
    state = start
    for step, delta in enumerate(deltas, start=1):
        try:
            state = state.step_up() if delta == 1 else state.step_down()
        except TransitionError as exc:
            if policy == "strict":
                raise TransitionError(f"step {step}: {exc}") from None
            # clip: stay in place
        trajectory.append(state)
    return tuple(trajectory)
