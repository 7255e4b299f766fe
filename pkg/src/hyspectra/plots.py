"""Static figure rendering for the report subcommands.

Each function draws one figure to a file next to the delimited output.
The Agg backend keeps rendering headless and deterministic enough for
reports; figures are presentation views only, never a data source.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .adjacency import AdjacencyMatrix
from .spectrum import DistributionRow, SpectrumTable, devils_staircase


def save_distribution(rows: list[DistributionRow], n: int, path: str) -> None:
    """Step plot of the finite eigenvalue distribution against its limit."""
    xs = [row.x for row in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.step(xs, [float(row.f_n) for row in rows], where="post", label=f"finite, n={n}")
    ax.plot(xs, [row.f_limit for row in rows], lw=1.0, label="limit")
    flagged = [row for row in rows if row.guarded]
    if flagged:
        ax.scatter(
            [row.x for row in flagged],
            [float(row.f_n) for row in flagged],
            s=6,
            color="crimson",
            label="guard band",
            zorder=3,
        )
    ax.set_xlabel("x")
    ax.set_ylabel("fraction of eigenvalues below x")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_spectrum(table: SpectrumTable, path: str) -> None:
    """Stem plot of algebraic multiplicities over the eigenvalue axis."""
    values = [entry.eigenvalue() for entry in table.entries]
    mults = [entry.multiplicity for entry in table.entries]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.stem(values, mults, basefmt=" ")
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("algebraic multiplicity")
    ax.set_title(f"n={table.n}, {table.variant.value}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_matrix(matrix: AdjacencyMatrix, path: str) -> None:
    """Sparsity pattern; rows grow downward as in printed matrices."""
    rows = [r for r, _ in matrix.entries]
    cols = [c for _, c in matrix.entries]
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    size = max(0.3, 40.0 / matrix.order)
    ax.scatter(cols, rows, s=size, marker="s", color="black")
    ax.set_xlim(-0.5, matrix.order - 0.5)
    ax.set_ylim(matrix.order - 0.5, -0.5)
    ax.set_aspect("equal")
    ax.set_xlabel("column (source state)")
    ax.set_ylabel("row (target state)")
    ax.set_title(f"n={matrix.n}, {matrix.variant.value}, nnz={matrix.nnz}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_staircase(path: str, terms: int = 40, points: int = 2000) -> None:
    """The Devil's staircase on [0, 1] from the truncated series."""
    xs = [(i + 0.5) / points for i in range(points)]
    ys = [float(devils_staircase(x, mode="floor-series", terms=terms).value) for x in xs]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(xs, ys, lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("f(x)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_termination_histogram(steps, censored_count: int, seed: int, path: str) -> None:
    """Histogram of termination steps of the absorbing walk."""
    fig, ax = plt.subplots(figsize=(6.5, 4))
    if len(steps):
        upper = int(max(steps))
        bins = range(1, upper + 2)
        ax.hist(steps, bins=bins, color="steelblue", edgecolor="none")
    ax.set_xlabel("termination step")
    ax.set_ylabel("replications")
    title = f"seed={seed}"
    if censored_count:
        title += f", censored={censored_count}"
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
