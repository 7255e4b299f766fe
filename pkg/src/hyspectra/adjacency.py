"""Adjacency matrices of the LIFO transition graph, exactly and sparsely.

Vertices are the 2**N states ordered by binary value (x_0 most
significant).  Entry (i, j) = 1 means there is an edge from vertex j to
vertex i: columns index the source.  Halving the self-loop variant then
gives a column-stochastic matrix.

Construction comes in two independent flavours that must agree:
``build_from_rules`` applies the transition rules to every state, while
``build_recursive`` assembles the matrix from two copies of the previous
level plus one cross entry in each off-diagonal block.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .budget import DEFAULT, Budget
from .states import MemoryState, all_states


class Variant(enum.Enum):
    """Plain graph (undefined boundary moves dropped) or self-loop variant."""

    GAMMA = "gamma"
    GAMMA_PRIME = "gamma-prime"

    @classmethod
    def parse(cls, value: "Variant | str | None") -> "Variant":
        if value is None:
            return cls.GAMMA
        if isinstance(value, Variant):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError(
                f"unknown variant {value!r}; expected 'gamma' or 'gamma-prime'"
            ) from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Sparse 0/1 matrix over the 2**n states, entries sorted by (row, col)."""

    n: int
    variant: Variant
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if list(self.entries) != sorted(set(self.entries)):
            raise ValueError("entries must be sorted and duplicate-free")
        order = self.order
        for r, c in self.entries:
            if not (0 <= r < order and 0 <= c < order):
                raise ValueError(f"entry {(r, c)} out of range for order {order}")

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @cached_property
    def _coords(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.entries:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        arr = np.asarray(self.entries, dtype=np.int64)
        return arr[:, 0], arr[:, 1]

    def to_dense(self, budget: Budget = DEFAULT) -> np.ndarray:
        budget.check("dense_n", self.n, "dense conversion")
        dense = np.zeros((self.order, self.order), dtype=np.int64)
        rows, cols = self._coords
        dense[rows, cols] = 1
        return dense

    def to_int_rows(self, budget: Budget = DEFAULT) -> list[list[int]]:
        """Dense matrix as plain Python ints, for exact determinant work."""
        budget.check("dense_n", self.n, "dense conversion")
        dense = [[0] * self.order for _ in range(self.order)]
        for r, c in self.entries:
            dense[r][c] = 1
        return dense

    def column_sums(self) -> list[int]:
        """Exact integer column sums (out-degrees of the source vertices)."""
        sums = [0] * self.order
        for _, c in self.entries:
            sums[c] += 1
        return sums

    def rotate180(self) -> "AdjacencyMatrix":
        """Reverse both row and column order."""
        last = self.order - 1
        rotated = sorted((last - r, last - c) for r, c in self.entries)
        return AdjacencyMatrix(self.n, self.variant, tuple(rotated))

    def transpose_entries(self) -> tuple[tuple[int, int], ...]:
        """Sorted entries of the transposed matrix."""
        return tuple(sorted((c, r) for r, c in self.entries))

    def matvec(self, vector: np.ndarray) -> np.ndarray:
        """Matrix-vector product A @ v without densifying."""
        v = np.asarray(vector, dtype=np.float64)
        if v.shape != (self.order,):
            raise ValueError(f"vector must have shape ({self.order},)")
        rows, cols = self._coords
        return np.bincount(rows, weights=v[cols], minlength=self.order)


def build_recursive(
    n: int, variant: "Variant | str" = Variant.GAMMA, budget: Budget = DEFAULT
) -> AdjacencyMatrix:
    """Assemble the adjacency matrix by block doubling.

    Level 0 is the 1x1 zero matrix.  Level k+1 places two copies of level
    k on the diagonal, one cross entry at the top-left corner of the
    top-right block, and one at the bottom-right corner of the
    bottom-left block.  The self-loop variant additionally sets the first
    and last diagonal entries and needs n >= 1.
    """
    var = Variant.parse(variant)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if var is Variant.GAMMA_PRIME and n < 1:
        raise ValueError("the self-loop variant needs n >= 1")
    budget.check("matrix_n", n, "sparse adjacency build")
    entries: list[tuple[int, int]] = []
    for k in range(n):
        half = 1 << k
        shifted = [(r + half, c + half) for r, c in entries]
        entries.extend(shifted)
        entries.append((0, half))
        entries.append((2 * half - 1, half - 1))
    if var is Variant.GAMMA_PRIME:
        entries.append((0, 0))
        last = (1 << n) - 1
        entries.append((last, last))
    return AdjacencyMatrix(n, var, tuple(sorted(entries)))


def build_from_rules(
    n: int, variant: "Variant | str" = Variant.GAMMA, budget: Budget = DEFAULT
) -> AdjacencyMatrix:
    """Adjacency matrix read off the transition rules, column = source."""
    var = Variant.parse(variant)
    if n < 1:
        raise ValueError("n must be positive")
    budget.check("matrix_n", n, "sparse adjacency build")
    entries: list[tuple[int, int]] = []
    for state in all_states(n):
        source = state.index
        for succ in state.successors(var):
            entries.append((succ.index, source))
    return AdjacencyMatrix(n, var, tuple(sorted(entries)))


def export_structure(matrix: AdjacencyMatrix, format: str = "coordinate-list") -> str:
    """Deterministic text rendering of the sparsity structure.

    coordinate-list: JSON metadata header line, then one 1-based
    "row col" pair per line, sorted.  edge-list: one "source target" pair
    of state strings per line, sorted by the coordinate order.
    """
    header = json.dumps(
        {
            "n": matrix.n,
            "variant": matrix.variant.value,
            "order": matrix.order,
            "nnz": matrix.nnz,
        },
        sort_keys=True,
    )
    if format == "coordinate-list":
        lines = [f"{r + 1} {c + 1}" for r, c in matrix.entries]
        return "\n".join([header] + lines)
    if format == "edge-list":
        lines = []
        for r, c in sorted(matrix.entries, key=lambda rc: (rc[1], rc[0])):
            src = MemoryState.from_index(c, matrix.n).as_string()
            dst = MemoryState.from_index(r, matrix.n).as_string()
            lines.append(f"{src} {dst}")
        return "\n".join([header] + lines)
    raise ValueError(f"unknown export format {format!r}")
