"""Independent verification machinery for the analytic modules.

Nothing here reuses the closed forms it checks: the objective maximizer is
re-found by brute-force grid evaluation, the analytic derivative is checked
against central differences, and the full-zero probabilities are re-estimated
by simulating the label broadcast on a depth-2 tree (full-zero and isolated
full-zero status of the root depend on nothing outside its 2-ball, so the
truncation is exact, not an approximation).

Randomness is reproducible: sample blocks draw from streams spawned off the
user seed by block index, so serial and parallel accumulation would agree
bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .augment import conditional_p
from .coupling import f_derivative, f_value
from .entropy import RateParams, _check_degree
from .errors import DomainError

__all__ = [
    "McEstimate",
    "grid_argmax_f",
    "mc_broadcast_full_zero",
    "mc_gw_component",
    "fd_derivative_check",
]

_BLOCK = 1 << 16
# Grandchild draws are chunked so the scratch matrix stays small even for
# huge degrees.
_MATRIX_BUDGET = 1 << 22


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate with its standard error (ddof=1)."""

    mean: float
    std_error: float
    samples: int
    seed: int


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(block,)))


def _indicator_estimate(count: int, n: int, seed: int) -> McEstimate:
    mean = count / n
    variance = n * mean * (1.0 - mean) / (n - 1) if n > 1 else 0.0
    return McEstimate(
        mean=mean,
        std_error=math.sqrt(variance / n) if n > 1 else 0.0,
        samples=n,
        seed=seed,
    )


def grid_argmax_f(d: int, alpha: float, n_points: int):
    """Brute-force maximizer of the coupling objective on a uniform grid.

    The oracle for the threshold search: no derivative information, no
    refinement, just n_points evaluations over [0, alpha].
    """
    RateParams(d, alpha)
    if n_points < 10_000:
        raise DomainError(f"n_points must be at least 10000, got {n_points}")
    betas = np.linspace(0.0, alpha, n_points)
    values = f_value(d, alpha, betas)
    i = int(np.argmax(values))
    return float(betas[i]), float(values[i])


def mc_broadcast_full_zero(d: int, alpha: float, samples: int, seed: int = 42):
    """Estimate the full-zero and isolated-full-zero probabilities by
    simulating the label broadcast on a depth-2 tree around the root.

    The root is 1 with probability alpha; each child of a 0-vertex is 1
    independently with probability 1-p and children of a 1-vertex are 0;
    grandchildren follow the same rule.  Returns (full_zero, isolated)
    estimates.
    """
    RateParams(d, alpha)
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples}")
    child_one = 1.0 - conditional_p(alpha)

    n_full_zero = 0
    n_isolated = 0
    done = 0
    block = 0
    chunk = max(1, _MATRIX_BUDGET // d)
    while done < samples:
        size = min(_BLOCK, samples - done)
        rng = _block_rng(seed, block)
        root_is_one = rng.random(size) < alpha
        ones_below_root = rng.binomial(d, child_one, size=size)
        full_zero = ~root_is_one & (ones_below_root == 0)
        n_fz = int(np.count_nonzero(full_zero))
        n_full_zero += n_fz
        # Isolation needs the grandchildren of the d (all-zero) children.
        for start in range(0, n_fz, chunk):
            rows = min(chunk, n_fz - start)
            ones_below_child = rng.binomial(d - 1, child_one, size=(rows, d))
            child_full_zero = ones_below_child == 0
            n_isolated += int(np.count_nonzero(~child_full_zero.any(axis=1)))
        done += size
        block += 1

    return (
        _indicator_estimate(n_full_zero, samples, seed),
        _indicator_estimate(n_isolated, samples, seed),
    )


def mc_gw_component(
    d: int,
    alpha: float,
    samples: int,
    max_size: int = 10**6,
    seed: int = 42,
):
    """Simulate the full-zero component of a root conditioned to be full-zero.

    The root gets d independent chances of a full-zero neighbor, later
    vertices d-1, each succeeding with probability p^(d-1) (evaluated in the
    log domain).  Exploration stops at ``max_size`` vertices per component.
    Returns (mean component size estimate, fraction of truncated runs).
    """
    _check_degree(d)
    if not 0.0 <= alpha < 0.5:
        raise DomainError(f"density must lie in [0, 1/2), got {alpha}")
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples}")
    log_p = math.log1p(-2.0 * alpha) - math.log1p(-alpha)
    q = math.exp((d - 1) * log_p)

    rng = _block_rng(seed, 0)
    sizes = np.ones(samples, dtype=np.int64)
    truncated = np.zeros(samples, dtype=bool)
    active = np.arange(samples)
    generation = rng.binomial(d, q, size=samples).astype(np.int64)
    while active.size:
        counts = generation
        alive = counts > 0
        active = active[alive]
        counts = counts[alive]
        if not active.size:
            break
        sizes[active] += counts
        hit_cap = sizes[active] >= max_size
        if hit_cap.any():
            capped = active[hit_cap]
            truncated[capped] = True
            sizes[capped] = max_size
            active = active[~hit_cap]
            counts = counts[~hit_cap]
        if not active.size:
            break
        generation = rng.binomial((d - 1) * counts, q).astype(np.int64)

    std = float(np.std(sizes, ddof=1)) if samples > 1 else 0.0
    estimate = McEstimate(
        mean=float(np.mean(sizes)),
        std_error=std / math.sqrt(samples) if samples > 1 else 0.0,
        samples=samples,
        seed=seed,
    )
    return estimate, float(np.count_nonzero(truncated) / samples)


def fd_derivative_check(d: int, alpha: float, beta: float, step: float = 1e-7) -> float:
    """Relative disagreement between the analytic derivative and a central
    difference: |analytic - fd| / (1 + |analytic|)."""
    RateParams(d, alpha)
    if not 1e-9 <= step <= 1e-5:
        raise DomainError(f"step must lie in [1e-9, 1e-5], got {step}")
    if not step < beta < alpha - step:
        raise DomainError(
            f"beta must be interior with room for the stencil, got beta={beta}"
        )
    analytic = f_derivative(d, alpha, beta)
    central = (f_value(d, alpha, beta + step) - f_value(d, alpha, beta - step)) / (
        2.0 * step
    )
    return abs(analytic - central) / (1.0 + abs(analytic))
