"""Random walks on the transition graph and stationary-distribution checks.

The walk follows the probability-1/2 semantics: at every step an
unbiased bit chooses between the increase and the decrease move.  On the
plain graph the move that is undefined at a saturated state terminates
the walk instead; on the self-loop variant it stays in place, giving an
irreducible aperiodic chain whose transition matrix is the halved
self-loop adjacency matrix (columns index the source state).

Randomness comes from the counter-based Philox generator with the
stream key (seed, replication index), so replication r always consumes
the same bit sequence no matter how work is scheduled or batched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.random import Generator, Philox

from .adjacency import Variant, build_recursive
from .budget import DEFAULT, Budget, ConvergenceError
from .chebpoly import AngleFraction
from .states import MemoryState

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class WalkConfig:
    n: int
    variant: Variant = Variant.GAMMA
    seed: int = 0
    max_steps: int = 512
    replications: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")


def replication_bits(seed: int, replication: int, count: int) -> np.ndarray:
    """The deterministic 0/1 draw sequence of one replication stream."""
    key = np.array([seed & _MASK64, replication & _MASK64], dtype=np.uint64)
    return Generator(Philox(key=key)).integers(0, 2, size=count, dtype=np.uint8)


def _bit_matrix(cfg: WalkConfig) -> np.ndarray:
    rows = [replication_bits(cfg.seed, rep, cfg.max_steps) for rep in range(cfg.replications)]
    return np.vstack(rows)


def step_up_indices(states: np.ndarray, n: int) -> np.ndarray:
    """Vectorized increase move on state indices; saturated states stay."""
    mask = np.uint64((1 << n) - 1)
    s = states.astype(np.uint64, copy=False)
    return ((s | (s + np.uint64(1))) & mask).astype(np.int64)


def step_down_indices(states: np.ndarray) -> np.ndarray:
    """Vectorized decrease move on state indices; the zero state stays."""
    s = states.astype(np.uint64, copy=False)
    return (s & (s - np.uint64(1))).astype(np.int64)


@dataclass(frozen=True)
class TerminationSamples:
    """Per-replication termination steps of the absorbing walk.

    steps[r] is the 1-based step at which replication r terminated, or
    the number of steps taken (= max_steps) where censored[r] is True.
    Censored replications are reported, never dropped.
    """

    config: WalkConfig
    start: MemoryState
    steps: np.ndarray
    censored: np.ndarray

    def summary(self) -> dict:
        done = self.steps[~self.censored]
        count = int(done.size)
        mean = float(np.mean(done)) if count else None
        variance = float(np.var(done, ddof=1)) if count > 1 else (0.0 if count else None)
        return {
            "mean": mean,
            "variance": variance,
            "count": count,
            "censored_count": int(np.count_nonzero(self.censored)),
            "seed": self.config.seed,
        }


def simulate_absorbing(cfg: WalkConfig, start: MemoryState) -> TerminationSamples:
    """Absorbing walk on the plain graph.

    Each step draws one bit: 1 attempts the increase move, 0 the
    decrease move.  At the state where that move is undefined the walk
    terminates (probability 1/2 per visit); elsewhere both moves exist
    and the walk never terminates at that step.
    """
    if cfg.variant is not Variant.GAMMA:
        raise ValueError("the absorbing walk is defined on the plain graph only")
    if start.n != cfg.n:
        raise ValueError(f"start state has length {start.n}, expected {cfg.n}")
    bits = _bit_matrix(cfg)
    reps = cfg.replications
    all_ones = (1 << cfg.n) - 1

    states = np.full(reps, start.index, dtype=np.int64)
    steps = np.full(reps, cfg.max_steps, dtype=np.int64)
    alive = np.ones(reps, dtype=bool)
    for t in range(cfg.max_steps):
        if not alive.any():
            break
        b = bits[:, t]
        terminate = alive & (
            ((b == 1) & (states == all_ones)) | ((b == 0) & (states == 0))
        )
        steps[terminate] = t + 1
        alive &= ~terminate
        move = alive
        if move.any():
            ups = move & (b == 1)
            downs = move & (b == 0)
            if ups.any():
                states[ups] = step_up_indices(states[ups], cfg.n)
            if downs.any():
                states[downs] = step_down_indices(states[downs])
    return TerminationSamples(config=cfg, start=start, steps=steps, censored=alive)


def empirical_stationary(
    cfg: WalkConfig,
    start: Optional[MemoryState] = None,
    burn_in: Optional[int] = None,
) -> np.ndarray:
    """Occupancy frequencies of the self-loop chain after burn-in.

    Default burn-in is 10 * 2**n steps per replication; counted samples
    are the states after each post-burn-in step, pooled over
    replications, normalized to total mass exactly 1.
    """
    if cfg.variant is not Variant.GAMMA_PRIME:
        raise ValueError("the stationary chain lives on the self-loop variant")
    if burn_in is None:
        burn_in = 10 * (1 << cfg.n)
    if not 0 <= burn_in < cfg.max_steps:
        raise ValueError(f"burn_in must lie in [0, max_steps), got {burn_in}")
    if start is None:
        start = MemoryState.from_index(0, cfg.n)
    if start.n != cfg.n:
        raise ValueError(f"start state has length {start.n}, expected {cfg.n}")

    bits = _bit_matrix(cfg)
    reps = cfg.replications
    states = np.full(reps, start.index, dtype=np.int64)
    counts = np.zeros(1 << cfg.n, dtype=np.int64)
    for t in range(cfg.max_steps):
        b = bits[:, t]
        ups = b == 1
        if ups.any():
            states[ups] = step_up_indices(states[ups], cfg.n)
        downs = ~ups
        if downs.any():
            states[downs] = step_down_indices(states[downs])
        if t >= burn_in:
            counts += np.bincount(states, minlength=1 << cfg.n)
    total = counts.sum()
    return counts / total


def power_iteration_stationary(
    n: int,
    tol: float = 1e-13,
    max_iterations: int = 200_000,
    budget: Budget = DEFAULT,
) -> np.ndarray:
    """Stationary vector of the halved self-loop matrix by power iteration.

    Iterates v <- (1/2) A v from the uniform vector until the max-norm
    change drops to tol; raises ConvergenceError carrying the final
    change if the iteration cap is hit first.
    """
    matrix = build_recursive(n, Variant.GAMMA_PRIME, budget)
    v = np.full(matrix.order, 1.0 / matrix.order)
    change = float("inf")
    for _ in range(max_iterations):
        w = 0.5 * matrix.matvec(v)
        w /= w.sum()
        change = float(np.max(np.abs(w - v)))
        v = w
        if change <= tol:
            return v
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} in {max_iterations} iterations",
        residual=change,
    )


def leading_eigenvalue(
    n: int, variant: "Variant | str" = Variant.GAMMA
) -> tuple[Optional[AngleFraction], float]:
    """Largest eigenvalue of the halved matrix, exactly keyed.

    Plain graph: cos(pi/(n+2)), the largest zero of U_{n+1}; it
    approaches 1 from below as n grows.  Self-loop variant: exactly 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    var = Variant.parse(variant)
    if var is Variant.GAMMA_PRIME:
        return None, 1.0
    key = AngleFraction(1, n + 2)
    return key, key.cos()
