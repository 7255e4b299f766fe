"""Resource budgets for operations whose cost grows with 2**N.

Every expensive entry point accepts a :class:`Budget` and refuses work
beyond the configured cap with :class:`BudgetError` instead of hanging.
Caps can be overridden process-wide through the ``HYSPECTRA_BUDGET``
environment variable, a comma-separated list of ``key=value`` pairs,
e.g. ``HYSPECTRA_BUDGET="matrix_n=10,charpoly_order=512"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "HYSPECTRA_BUDGET"


class BudgetError(RuntimeError):
    """Raised when a request exceeds the configured resource budget."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative solver hits its iteration cap.

    The final residual is carried in :attr:`residual`.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class Budget:
    """Caps on problem sizes, by the operation family they protect.

    matrix_n:        largest N for sparse adjacency construction (2**N vertices)
    dense_n:         largest N for dense matrix conversion and dense eigenvectors
    expand_n:        largest N for expanding the factored characteristic polynomial
    charpoly_order:  largest matrix order accepted by the exact determinant oracle
    minor_k:         largest recursion level for exact minor determinants
    """

    matrix_n: int = 20
    dense_n: int = 12
    expand_n: int = 12
    charpoly_order: int = 1024
    minor_k: int = 6

    def check(self, field_name: str, requested: int, what: str) -> None:
        """Raise BudgetError if `requested` exceeds the named cap."""
        cap = getattr(self, field_name)
        if requested > cap:
            raise BudgetError(
                f"{what} needs {field_name}={requested}, budget allows {cap}; "
                f"raise it via {ENV_VAR} if intended"
            )


def from_env(base: Budget | None = None, env: str | None = None) -> Budget:
    """Budget with overrides parsed from ``HYSPECTRA_BUDGET``.

    Unknown keys and malformed pairs raise ValueError so typos do not
    silently leave a cap at its default.
    """
    budget = base if base is not None else Budget()
    raw = env if env is not None else os.environ.get(ENV_VAR, "")
    raw = raw.strip()
    if not raw:
        return budget
    known = {f.name for f in fields(Budget)}
    overrides: dict[str, int] = {}
    for pair in raw.split(","):
        pair = pair.strip()
        if not pair:
            continue
        key, sep, value = pair.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise ValueError(f"bad {ENV_VAR} entry {pair!r}: expected key=value with key in {sorted(known)}")
        try:
            overrides[key] = int(value.strip())
        except ValueError:
            raise ValueError(f"bad {ENV_VAR} entry {pair!r}: value must be an integer") from None
    return replace(budget, **overrides)


DEFAULT = Budget()
