"""Augmenting a Markovian independent set with full-zero vertices.

A vertex is *full-zero* when it and all its neighbors carry label 0.  The
components induced by full-zero vertices are finite whenever the associated
branching process (offspring mean (d-1)*p^(d-1), with p the zero-given-zero
conditional probability) is subcritical, and then an independent set of at
least half of each component can be added.  Isolated full-zero vertices are
added whole, which yields the density gain

    alpha_hat = alpha + (1-alpha)*p^d * (1 + (1-p^(d-1))^d) / 2.

All powers are evaluated in the log domain so degrees up to 500000 stay
finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import _check_degree
from .errors import DomainError, SupercriticalError
from .search import alpha_star

__all__ = [
    "AugmentationReport",
    "conditional_p",
    "full_zero_prob",
    "isolated_full_zero_prob",
    "gw_offspring_mean",
    "alpha_hat",
    "augmentation_report",
    "lower_bound",
    "asymptotic_reference",
]

# Offspring means this close to (but not above) 1 are flagged as borderline.
_BORDERLINE_WINDOW = 1e-9


@dataclass(frozen=True)
class AugmentationReport:
    """Per-degree augmentation quantities at a given starting density."""

    d: int
    alpha: float
    p: float
    q_full_zero: float
    q_isolated: float
    gw_offspring_mean: float
    alpha_hat: float
    gw_ok: bool
    gw_borderline: bool = False


def _check_alpha(alpha: float) -> float:
    if not 0.0 <= alpha < 0.5:
        raise DomainError(f"density must lie in [0, 1/2), got {alpha}")
    return float(alpha)


def conditional_p(alpha: float) -> float:
    """Probability that a vertex is 0 given that a fixed neighbor is 0:
    (1 - 2*alpha) / (1 - alpha)."""
    alpha = _check_alpha(alpha)
    return (1.0 - 2.0 * alpha) / (1.0 - alpha)


def _log_p(alpha: float) -> float:
    # log((1-2a)/(1-a)) without forming the quotient; exact at alpha = 0.
    return math.log1p(-2.0 * alpha) - math.log1p(-alpha)


def full_zero_prob(d: int, alpha: float) -> float:
    """Probability that a vertex is full-zero: (1-alpha) * p^d."""
    d = _check_degree(d)
    alpha = _check_alpha(alpha)
    return (1.0 - alpha) * math.exp(d * _log_p(alpha))


def _isolation_factor(d: int, alpha: float) -> float:
    """(1 - p^(d-1))^d, the probability that none of the d neighbors of a
    full-zero vertex is itself full-zero."""
    log_p = _log_p(alpha)
    one_minus = -math.expm1((d - 1) * log_p)  # 1 - p^(d-1), accurate near 0
    if one_minus <= 0.0:
        return 0.0
    return math.exp(d * math.log(one_minus))


def isolated_full_zero_prob(d: int, alpha: float) -> float:
    """Probability of a full-zero vertex with no full-zero neighbor."""
    d = _check_degree(d)
    alpha = _check_alpha(alpha)
    return full_zero_prob(d, alpha) * _isolation_factor(d, alpha)


def gw_offspring_mean(d: int, alpha: float) -> float:
    """Offspring mean (d-1) * p^(d-1) of the full-zero branching process."""
    d = _check_degree(d)
    alpha = _check_alpha(alpha)
    return (d - 1) * math.exp((d - 1) * _log_p(alpha))


def alpha_hat(d: int, alpha: float) -> float:
    """Density after adding isolated full-zero vertices and half of the rest.

    Requires the full-zero process to be subcritical (offspring mean <= 1);
    otherwise the finite-component argument breaks down and
    :class:`SupercriticalError` is raised instead of computing a number.
    """
    mean = gw_offspring_mean(d, alpha)
    if mean > 1.0:
        raise SupercriticalError(
            f"full-zero branching process is supercritical at (d={d}, "
            f"alpha={alpha}): offspring mean {mean} > 1",
            offspring_mean=mean,
        )
    return alpha + full_zero_prob(d, alpha) * (1.0 + _isolation_factor(d, alpha)) / 2.0


def augmentation_report(d: int, alpha: float) -> AugmentationReport:
    """Assemble every augmentation quantity at (d, alpha).

    ``alpha_hat`` is NaN when the branching process is supercritical; the
    report flags that through ``gw_ok`` rather than raising.
    """
    d = _check_degree(d)
    alpha = _check_alpha(alpha)
    mean = gw_offspring_mean(d, alpha)
    gw_ok = mean <= 1.0
    q_fz = full_zero_prob(d, alpha)
    return AugmentationReport(
        d=d,
        alpha=alpha,
        p=conditional_p(alpha),
        q_full_zero=q_fz,
        q_isolated=q_fz * _isolation_factor(d, alpha),
        gw_offspring_mean=mean,
        alpha_hat=alpha_hat(d, alpha) if gw_ok else math.nan,
        gw_ok=gw_ok,
        gw_borderline=gw_ok and mean > 1.0 - _BORDERLINE_WINDOW,
    )


def lower_bound(d: int, tol: float = 1e-9) -> AugmentationReport:
    """Headline lower bound for degree d: threshold search then augmentation."""
    outcome = alpha_star(d, tol)
    return augmentation_report(d, outcome.alpha_star)


def asymptotic_reference(d: int) -> float:
    """Large-degree comparator (2/d)*(log d - log log d + 1 - log 2).

    A consistency yardstick only; it never enters the computed bounds and
    carries no accuracy claim at small degrees.
    """
    d = _check_degree(d)
    return (2.0 / d) * (math.log(d) - math.log(math.log(d)) + 1.0 - math.log(2.0))
