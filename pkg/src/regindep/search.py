"""Threshold search: the largest density passing the two-copy maximum test.

For a given degree the density ``alpha`` is admissible when the coupling
objective ``f_value(d, alpha, .)`` attains its global maximum on [0, alpha]
at ``beta = alpha**2`` (independent copies).  In the interesting range the
objective has a second local maximum above ``alpha**2`` that migrates
toward ``alpha`` as the degree grows; the threshold is the density at which
the two peaks tie.  ``alpha_star`` brackets and bisects that crossover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coupling import f_derivative, f_value
from .entropy import RateParams, _check_degree
from .errors import DomainError, NumericalError

__all__ = [
    "SmmOutcome",
    "local_maxima",
    "condition_holds",
    "alpha_star",
]

# Margins within the tie tolerance count as passing, so the threshold point
# itself is admissible.
TIE_TOLERANCE = 1e-12

_REFINE_MAX_STEPS = 200
_MIN_GRID = 256
_GEOM_POINTS = 96


@dataclass(frozen=True)
class SmmOutcome:
    """Result of the per-degree threshold search.

    ``maxima`` holds (beta, f) pairs at the certified density: the interior
    local maxima (always including beta = alpha**2) plus the two endpoint
    values.  ``margin_at_threshold`` is f(alpha**2) minus the best competing
    value; it stays above -1e-12 by construction.  ``warning`` is set when
    the post-hoc two-sided crossover check fails.
    """

    d: int
    alpha_star: float
    maxima: tuple[tuple[float, float], ...]
    margin_at_threshold: float
    iterations: int
    warning: str | None = None


def _auto_grid(d: int) -> int:
    return max(2048, 32 * math.ceil(math.sqrt(d)))


def _scan_grid(alpha: float, n: int) -> np.ndarray:
    """Interior scan points: uniform plus geometric refinement toward both
    endpoints (the competing maximum hugs beta = alpha for large degrees)."""
    geom = np.geomspace(1e-12, 0.5, _GEOM_POINTS)
    return np.unique(
        np.concatenate(
            [
                np.linspace(0.0, alpha, n)[1:-1],
                alpha * geom,
                alpha - alpha * geom,
            ]
        )
    )


def _refine_maximum(d: int, alpha: float, lo: float, hi: float) -> float:
    """Bisect the derivative sign change in [lo, hi] down to the maximum."""
    width_tol = 1e-14 * alpha
    for _ in range(_REFINE_MAX_STEPS):
        if hi - lo <= width_tol:
            break
        mid = 0.5 * (lo + hi)
        slope = f_derivative(d, alpha, mid)
        if abs(slope) <= 1e-12:
            return mid
        if slope > 0.0:
            lo = mid
        else:
            hi = mid
    else:
        raise NumericalError(
            f"maximum refinement did not converge in {_REFINE_MAX_STEPS} steps "
            f"(d={d}, alpha={alpha}, bracket=({lo}, {hi}))"
        )
    return 0.5 * (lo + hi)


def local_maxima(d: int, alpha: float, grid_size: int | None = None):
    """All local maxima of f on [0, alpha], plus the endpoint values.

    Interior maxima are located by derivative sign changes on the scan grid
    and refined by bisection to |f'| <= 1e-12 or bracket width 1e-14*alpha.
    The stationary point at beta = alpha**2 is always included (its
    derivative vanishes identically, so sign-based detection around it is
    unreliable).  Returns (beta, f) pairs sorted by beta.
    """
    RateParams(d, alpha)
    if grid_size is None:
        grid_size = _auto_grid(d)
    elif grid_size < _MIN_GRID:
        raise DomainError(f"grid_size must be at least {_MIN_GRID}, got {grid_size}")

    grid = _scan_grid(alpha, grid_size)
    slopes = f_derivative(d, alpha, grid)
    crossings = np.nonzero((slopes[:-1] > 0.0) & (slopes[1:] <= 0.0))[0]

    beta_ind = alpha * alpha
    # Roots this close to alpha**2 are the independent-coupling stationary
    # point rediscovered by the scan, not a separate competitor.
    match_tol = max(1e-8 * alpha, 8.0 * np.spacing(beta_ind))

    points = [(beta_ind, f_value(d, alpha, beta_ind))]
    for i in crossings:
        root = _refine_maximum(d, alpha, float(grid[i]), float(grid[i + 1]))
        if abs(root - beta_ind) <= match_tol:
            continue
        if any(abs(root - b) <= 1e-12 * alpha for b, _ in points):
            continue
        points.append((root, f_value(d, alpha, root)))
    points.append((0.0, f_value(d, alpha, 0.0)))
    points.append((alpha, f_value(d, alpha, alpha)))
    points.sort(key=lambda pair: pair[0])
    return points


def condition_holds(d: int, alpha: float, grid_size: int | None = None):
    """Decide whether beta = alpha**2 is the global maximum of f.

    Returns (holds, margin) where margin = f(alpha**2) minus the best
    competing local maximum or endpoint.  Margins above -1e-12 count as
    passing.
    """
    points = local_maxima(d, alpha, grid_size)
    beta_ind = alpha * alpha
    f_ind = next(f for b, f in points if b == beta_ind)
    competitors = [f for b, f in points if b != beta_ind]
    margin = f_ind - max(competitors)
    return margin >= -TIE_TOLERANCE, margin


@lru_cache(maxsize=1024)
def alpha_star(d: int, tol: float = 1e-9) -> SmmOutcome:
    """Largest density passing the two-copy test, located by bisection.

    Brackets with alpha_lo = 1/d (comfortably admissible) and
    alpha_hi = min(0.499, 4*log(d)/d + 0.2), nudging alpha_hi toward 0.499
    if it unexpectedly passes.  Bisects until the bracket is narrower than
    ``tol`` and returns the certified-passing endpoint.  Results are
    memoized; the computation is pure.

    The crossover is not assumed monotone: the returned outcome carries a
    warning if the condition fails just below the result or passes just
    above it.
    """
    d = _check_degree(d)
    if tol < 1e-12:
        raise DomainError(f"tolerance must be at least 1e-12, got {tol}")

    lo = 1.0 / d
    hi = min(0.499, 4.0 * math.log(d) / d + 0.2)
    iterations = 0

    ok_lo, _ = condition_holds(d, lo)
    iterations += 1
    if not ok_lo:
        raise NumericalError(
            f"bracket construction failed: condition does not hold at alpha={lo}"
        )
    while True:
        ok_hi, _ = condition_holds(d, hi)
        iterations += 1
        if not ok_hi:
            break
        if 0.499 - hi < 1e-6:
            raise NumericalError(
                f"bracket construction failed: condition still holds at alpha={hi}"
            )
        lo = hi
        hi = 0.499 - 0.5 * (0.499 - hi)

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        ok, _ = condition_holds(d, mid)
        iterations += 1
        if ok:
            lo = mid
        else:
            hi = mid

    _, margin = condition_holds(d, lo)
    maxima = tuple(local_maxima(d, lo))

    warning = None
    below = lo - 1e-6
    if below > 0.0 and not condition_holds(d, below)[0]:
        warning = f"condition fails at alpha_star - 1e-6 = {below}"
    above = lo + 1e-5
    if above < 0.5 and condition_holds(d, above)[0]:
        warning = f"condition still holds at alpha_star + 1e-5 = {above}"

    return SmmOutcome(
        d=d,
        alpha_star=lo,
        maxima=maxima,
        margin_at_threshold=margin,
        iterations=iterations,
        warning=warning,
    )
