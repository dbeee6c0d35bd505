"""Thinned independent sets and star-decomposition feasibility.

A set is ``dhat``-thin when every outside vertex has at most ``dhat``
neighbors inside it.  Starting from a Markovian independent set of density
``alpha``, deleting the excess neighbors of violating outside vertices
removes density at most

    (1-alpha) * sum_{l > dhat} (l - dhat) * C(d, l) * (1-p)^l * p^(d-l),

leaving a dhat-thin independent set of density ``alpha_thin``.  Partitioning
the edges into k-stars (d/2 < k < d) needs a thin independent set of density
at least 1 - d/(2k) plus edge-density conditions on the complement that this
toolkit does not verify; every feasibility row says so explicitly.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np
from scipy.special import gammaln

from .augment import conditional_p
from .entropy import _check_degree
from .errors import DomainError

__all__ = [
    "EXTERNAL_CONDITIONS_NOTE",
    "ThinningRow",
    "StarFeasibility",
    "alpha_thin",
    "thinning_table",
    "star_candidates",
    "necessary_bound_k",
    "load_upper_bounds",
]

EXTERNAL_CONDITIONS_NOTE = (
    "density and thinness only; the induced edge-density conditions on the "
    "complement required for a star decomposition are not checked here"
)


@dataclass(frozen=True)
class ThinningRow:
    """Density lost and retained when capping inside-degrees at dhat."""

    d: int
    dhat: int
    deleted: float
    alpha_thin: float


@dataclass(frozen=True)
class StarFeasibility:
    """Whether the thin-density requirement for a k-star decomposition is met.

    ``dhat_min`` is the smallest cap (necessarily below k) whose thinned
    density reaches ``alpha_req = 1 - d/(2k)``, or None if no cap does.
    """

    d: int
    k: int
    alpha_req: float
    dhat_min: int | None
    status: str
    external_conditions_note: str = EXTERNAL_CONDITIONS_NOTE


def _check_density(alpha: float) -> float:
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"density must lie in (0, 1/2), got {alpha}")
    return float(alpha)


def alpha_thin(d: int, alpha: float, dhat: int) -> ThinningRow:
    """Thinned density for one cap, by exact binomial tail summation.

    Each term C(d, l) * (1-p)^l * p^(d-l) is evaluated through log-gamma and
    exponentiated individually, so the sum survives degrees up to 500000;
    the tail is accumulated with compensated summation.
    """
    d = _check_degree(d)
    alpha = _check_density(alpha)
    if isinstance(dhat, bool) or not isinstance(dhat, (int, np.integer)):
        raise DomainError(f"thinness cap must be an integer, got {dhat!r}")
    if not 1 <= dhat < d:
        raise DomainError(f"thinness cap must lie in [1, d), got dhat={dhat}, d={d}")

    log_1mp = math.log(alpha) - math.log1p(-alpha)  # log(1-p) = log(a/(1-a))
    log_p = math.log1p(-2.0 * alpha) - math.log1p(-alpha)
    ell = np.arange(dhat + 1, d + 1)
    log_terms = (
        gammaln(d + 1)
        - gammaln(ell + 1)
        - gammaln(d - ell + 1)
        + ell * log_1mp
        + (d - ell) * log_p
    )
    deleted = (1.0 - alpha) * math.fsum((ell - dhat) * np.exp(log_terms))
    return ThinningRow(d=d, dhat=int(dhat), deleted=deleted, alpha_thin=alpha - deleted)


def _deleted_profile(d: int, alpha: float) -> np.ndarray:
    """Deleted density for every cap at once: index i holds the cap dhat=i,
    for i = 0 .. d-1.

    Uses the tail-of-tail identity sum_{l>m} (l-m)*pmf(l) =
    sum_{j>m} P(X >= j), so the whole profile costs one pmf pass.
    """
    log_1mp = math.log(alpha) - math.log1p(-alpha)
    log_p = math.log1p(-2.0 * alpha) - math.log1p(-alpha)
    ell = np.arange(0, d + 1)
    log_pmf = (
        gammaln(d + 1)
        - gammaln(ell + 1)
        - gammaln(d - ell + 1)
        + ell * log_1mp
        + (d - ell) * log_p
    )
    pmf = np.exp(log_pmf)
    tail = np.cumsum(pmf[::-1])[::-1]  # tail[j] = P(X >= j)
    excess = np.cumsum(tail[::-1])[::-1]  # excess[j] = sum_{m >= j} tail[m]
    # deleted(dhat) = (1-alpha) * sum_{j >= dhat+1} tail[j] = (1-a)*excess[dhat+1]
    return (1.0 - alpha) * excess[1 : d + 1]


def thinning_table(d: int, alpha: float, dhat_lo: int, dhat_hi: int):
    """ThinningRow for every cap in [dhat_lo, dhat_hi]."""
    d = _check_degree(d)
    alpha = _check_density(alpha)
    if not 1 <= dhat_lo <= dhat_hi < d:
        raise DomainError(
            f"cap range must satisfy 1 <= lo <= hi < d, got [{dhat_lo}, {dhat_hi}]"
        )
    profile = _deleted_profile(d, alpha)
    return [
        ThinningRow(d=d, dhat=i, deleted=float(profile[i]),
                    alpha_thin=alpha - float(profile[i]))
        for i in range(dhat_lo, dhat_hi + 1)
    ]


def star_candidates(d: int, alpha: float):
    """Feasibility rows for every star size k with d/2 < k < d.

    For each k the row reports the density requirement 1 - d/(2k) and the
    smallest cap below k whose thinned density meets it (a thin independent
    set that is too dense always contains one of exactly the required
    density, so only the density comparison matters).
    """
    d = _check_degree(d)
    alpha = _check_density(alpha)
    thin = alpha - _deleted_profile(d, alpha)  # index i: cap dhat = i
    rows = []
    for k in range(d // 2 + 1, d):
        alpha_req = 1.0 - d / (2.0 * k)
        usable = thin[1:k]  # caps 1 .. k-1, nondecreasing
        idx = int(np.searchsorted(usable, alpha_req, side="left"))
        dhat_min = idx + 1 if idx < usable.size else None
        rows.append(
            StarFeasibility(
                d=d,
                k=k,
                alpha_req=alpha_req,
                dhat_min=dhat_min,
                status="density-met" if dhat_min is not None else "density-not-met",
            )
        )
    return rows


def necessary_bound_k(d: int, alpha_upper: float) -> int:
    """Largest star size not ruled out by an upper bound on the independence
    ratio: floor(d / (2*(1 - alpha_upper)))."""
    d = _check_degree(d)
    if not 0.0 <= alpha_upper < 0.5:
        raise DomainError(
            f"upper bound on the ratio must lie in [0, 1/2), got {alpha_upper}"
        )
    return math.floor(d / (2.0 * (1.0 - alpha_upper)))


def load_upper_bounds() -> dict[int, float]:
    """Bundled reference upper bounds on the independence ratio, by degree.

    Static data consumed by the star-decomposition necessary-size report;
    nothing in this package computes upper bounds.
    """
    text = resources.files("regindep").joinpath("data/upper_bounds.csv").read_text()
    reader = csv.DictReader(text.splitlines())
    return {int(row["d"]): float(row["upper_bound"]) for row in reader}
