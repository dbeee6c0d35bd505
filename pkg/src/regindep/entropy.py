"""Entropy primitives for edge-label distributions of independent sets.

An independent set of density ``alpha`` in a d-regular graph induces, on a
uniform random directed edge, the exchangeable pair distribution

    p11 = 0,   p01 = p10 = alpha,   p00 = 1 - 2*alpha,

with vertex marginal (alpha, 1 - alpha).  The annealed growth rate of the
expected number of labelings with these edge statistics is

    sigma = (d/2) * H(edge) - (d-1) * H(vertex),

which is the quantity everything downstream compares against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError

__all__ = [
    "MAX_DEGREE",
    "EdgeDistribution",
    "RateParams",
    "entropy_term",
    "edge_entropy",
    "vertex_entropy",
    "sigma_rate",
]

_SLACK = 1e-12
MAX_DEGREE = 500_000


def entropy_term(x):
    """Entropy summand h(x) = -x*log(x) (natural log), with h(0) = 0.

    Accepts scalars or arrays.  Values within 1e-12 outside [0, 1] are
    clamped; the optimizers legitimately touch the boundary with rounding
    noise.  Anything further out raises :class:`DomainError`.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -_SLACK) or np.any(arr > 1.0 + _SLACK):
        raise DomainError(f"entropy argument outside [0, 1]: {x!r}")
    arr = np.clip(arr, 0.0, 1.0)
    out = special.entr(arr)
    return float(out) if np.ndim(out) == 0 else out


def _check_degree(d) -> int:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise DomainError(f"degree must be an integer, got {d!r}")
    if not 3 <= d <= MAX_DEGREE:
        raise DomainError(f"degree must lie in [3, {MAX_DEGREE}], got {d}")
    return int(d)


@dataclass(frozen=True)
class EdgeDistribution:
    """Exchangeable distribution of the label pair on a random directed edge.

    ``pXY`` is the probability that the tail carries label X and the head
    label Y.  Exchangeability forces p01 == p10.  For independent-set
    labelings p11 is exactly zero.
    """

    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self):
        cells = (self.p00, self.p01, self.p10, self.p11)
        if any(c < -_SLACK for c in cells):
            raise DomainError(f"negative cell probability: {cells}")
        if abs(self.p01 - self.p10) > _SLACK:
            raise DomainError("edge distribution must be exchangeable (p01 == p10)")
        if abs(sum(cells) - 1.0) > _SLACK:
            raise DomainError(f"cell probabilities must sum to 1, got {sum(cells)}")
        for name in ("p00", "p01", "p10", "p11"):
            if getattr(self, name) < 0.0:
                object.__setattr__(self, name, 0.0)

    @classmethod
    def independent_set(cls, alpha: float) -> "EdgeDistribution":
        """Edge marginal of the Markovian independent set of density alpha."""
        if not 0.0 <= alpha < 0.5:
            raise DomainError(f"density must lie in [0, 1/2), got {alpha}")
        return cls(p00=1.0 - 2.0 * alpha, p01=alpha, p10=alpha, p11=0.0)

    @property
    def marginal_one(self) -> float:
        """Probability that a vertex carries label 1."""
        return self.p01 + self.p11

    @property
    def marginal_zero(self) -> float:
        return self.p00 + self.p01


@dataclass(frozen=True)
class RateParams:
    """Degree and independent-set density for the rate computations."""

    d: int
    alpha: float

    def __post_init__(self):
        _check_degree(self.d)
        if not 0.0 < self.alpha < 0.5:
            raise DomainError(f"density must lie in (0, 1/2), got {self.alpha}")


def edge_entropy(pi: EdgeDistribution) -> float:
    """Shannon entropy of the edge distribution: sum of h over the four cells."""
    return float(
        entropy_term(pi.p00)
        + entropy_term(pi.p01)
        + entropy_term(pi.p10)
        + entropy_term(pi.p11)
    )


def vertex_entropy(alpha: float) -> float:
    """Entropy h(alpha) + h(1 - alpha) of the vertex-label marginal."""
    if not -_SLACK <= alpha <= 0.5 + _SLACK:
        raise DomainError(f"vertex density must lie in [0, 1/2], got {alpha}")
    a = min(max(alpha, 0.0), 0.5)
    return float(entropy_term(a) + entropy_term(1.0 - a))


def sigma_rate(d: int, alpha: float) -> float:
    """Annealed rate (d/2)*(2h(alpha) + h(1-2*alpha)) - (d-1)*(h(alpha) + h(1-alpha)).

    Nonnegative exactly when labelings with the given edge statistics are
    not exponentially rare; every density certified by the threshold search
    satisfies sigma_rate >= 0.
    """
    RateParams(d, alpha)
    edge = 2.0 * entropy_term(alpha) + entropy_term(1.0 - 2.0 * alpha)
    vtx = entropy_term(alpha) + entropy_term(1.0 - alpha)
    return 0.5 * d * edge - (d - 1) * vtx
