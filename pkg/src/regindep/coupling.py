"""Two-copy couplings of the independent-set edge marginal.

A coupling assigns each vertex a red and a blue label, both marginally the
edge distribution of a density-``alpha`` independent set.  Because neither
copy may place two 1s on an edge, the whole 16-cell table is pinned down by
two scalars:

    beta  = P(a vertex is 1 in both copies),
    gamma = P(an edge carries opposite (1,0)/(0,1) mixed pairs).

The nonzero cells are then beta (twice), gamma (twice), alpha-beta-gamma
(four times) and 1-4*alpha+2*beta+2*gamma.  For fixed (alpha, beta) the
coupling entropy is maximized at a closed-form gamma_star, and plugging it
in yields the one-variable objective ``f_value`` whose global maximizer
decides the second-moment condition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import _check_degree, entropy_term
from .errors import DomainError, InfeasiblePointError

__all__ = [
    "CouplingPoint",
    "gamma_star",
    "coupling_cells",
    "f_value",
    "f_derivative",
]

_SLACK = 1e-12


def _check_alpha(alpha: float) -> float:
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"density must lie in (0, 1/2), got {alpha}")
    return float(alpha)


def _clamp_beta(alpha: float, beta):
    """Validate beta in [0, alpha] (1e-12 slack) and clamp into range."""
    arr = np.asarray(beta, dtype=float)
    if np.any(arr < -_SLACK) or np.any(arr > alpha + _SLACK):
        raise DomainError(f"beta must lie in [0, alpha={alpha}], got {beta!r}")
    return np.clip(arr, 0.0, alpha)


def gamma_star(alpha: float, beta):
    """Mixed-pair probability maximizing the coupling entropy for fixed beta.

    Closed form (alpha - 1/2) + sqrt((alpha - 1/2)^2 + (alpha - beta)^2),
    evaluated as (alpha - beta)^2 / (sqrt(...) + (1/2 - alpha)) so that no
    cancellation occurs when beta is close to alpha, which is where the
    competing maximizer sits for large degrees.  The result lies in
    [0, alpha - beta].  Accepts scalar or array beta.
    """
    alpha = _check_alpha(alpha)
    b = _clamp_beta(alpha, beta)
    diff = alpha - b
    s = 0.5 - alpha
    out = diff * diff / (np.sqrt(s * s + diff * diff) + s)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class CouplingPoint:
    """All cell probabilities of a two-copy coupling at (alpha, beta, gamma).

    ``p_11`` is the vertex-marginal mass on doubly-1 vertices (equal to
    beta); the remaining fields are edge cells, named by the label pattern
    of one representative cell in each symmetry class.
    """

    alpha: float
    beta: float
    gamma: float
    p_11: float
    p_0011: float
    p_0110: float
    p_0100: float
    p_0000: float

    @property
    def edge_entropy(self) -> float:
        """Entropy of the 16-cell edge table (7 cells are identically zero)."""
        return float(
            2.0 * entropy_term(self.p_0011)
            + 2.0 * entropy_term(self.p_0110)
            + 4.0 * entropy_term(self.p_0100)
            + entropy_term(self.p_0000)
        )

    @property
    def vertex_entropy(self) -> float:
        return float(
            entropy_term(self.p_11)
            + 2.0 * entropy_term(self.alpha - self.beta)
            + entropy_term(1.0 - 2.0 * self.alpha + self.beta)
        )

    def rate(self, d: int) -> float:
        """Annealed rate (d/2)*H(edge) - (d-1)*H(vertex) of this coupling."""
        _check_degree(d)
        return 0.5 * d * self.edge_entropy - (d - 1) * self.vertex_entropy


def coupling_cells(alpha: float, beta: float, gamma: float) -> CouplingPoint:
    """Populate the full cell table at (alpha, beta, gamma).

    Raises :class:`InfeasiblePointError` if any cell falls below -1e-12;
    cells in [-1e-12, 0) are clamped to zero.  The 16-cell mass (with the
    multiplicities 2, 2, 4, 1) sums to one identically.
    """
    alpha = _check_alpha(alpha)
    beta = float(_clamp_beta(alpha, beta))
    gamma = float(gamma)
    p_0100 = alpha - beta - gamma
    p_0000 = 1.0 - 4.0 * alpha + 2.0 * beta + 2.0 * gamma
    cells = {"gamma": gamma, "alpha-beta-gamma": p_0100, "zero-zero": p_0000}
    for name, value in cells.items():
        if value < -_SLACK:
            raise InfeasiblePointError(
                f"cell {name} = {value} is negative at "
                f"(alpha={alpha}, beta={beta}, gamma={gamma})"
            )
    mass = 2.0 * beta + 2.0 * gamma + 4.0 * p_0100 + p_0000
    if abs(mass - 1.0) > _SLACK:
        raise InfeasiblePointError(f"cell mass {mass} deviates from 1")
    gamma = max(gamma, 0.0)
    p_0100 = max(p_0100, 0.0)
    p_0000 = max(p_0000, 0.0)
    return CouplingPoint(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        p_11=beta,
        p_0011=beta,
        p_0110=gamma,
        p_0100=p_0100,
        p_0000=p_0000,
    )


def f_value(d: int, alpha: float, beta):
    """Best two-copy rate over all couplings with overlap beta.

    Evaluates (d/2)*H(edge) - (d-1)*H(vertex) with gamma set to
    ``gamma_star(alpha, beta)``.  At beta = alpha**2 this equals twice the
    single-copy rate (independent copies); at beta = alpha it equals the
    single-copy rate (identical copies).  Accepts scalar or array beta.
    """
    d = _check_degree(d)
    alpha = _check_alpha(alpha)
    b = _clamp_beta(alpha, beta)
    g = gamma_star(alpha, b)
    edge = (
        2.0 * entropy_term(b)
        + 2.0 * entropy_term(g)
        + 4.0 * entropy_term(alpha - b - g)
        + entropy_term(1.0 - 4.0 * alpha + 2.0 * b + 2.0 * g)
    )
    vtx = (
        entropy_term(b)
        + 2.0 * entropy_term(alpha - b)
        + entropy_term(1.0 - 2.0 * alpha + b)
    )
    out = 0.5 * d * edge - (d - 1) * vtx
    return float(out) if np.ndim(out) == 0 else out


def f_derivative(d: int, alpha: float, beta):
    """Analytic d/d(beta) of ``f_value`` on the open interval (0, alpha).

    gamma_star is a stationary point of the edge entropy in gamma, so the
    derivative only sees the explicit beta dependence:

        (d/2) * [-2*log(beta) + 4*log(alpha-beta-g) - 2*log(1-4a+2b+2g)]
        - (d-1) * [-log(beta) + 2*log(alpha-beta) - log(1-2a+b)].

    Boundary beta (0 or alpha) is rejected; the logs degenerate there.
    """
    d = _check_degree(d)
    alpha = _check_alpha(alpha)
    b = np.asarray(beta, dtype=float)
    if np.any(b <= 0.0) or np.any(b >= alpha):
        raise DomainError(f"derivative requires beta strictly inside (0, {alpha})")
    g = gamma_star(alpha, b)
    t = alpha - b - g
    z = 1.0 - 4.0 * alpha + 2.0 * b + 2.0 * g
    edge = -2.0 * np.log(b) + 4.0 * np.log(t) - 2.0 * np.log(z)
    vtx = -np.log(b) + 2.0 * np.log(alpha - b) - np.log(1.0 - 2.0 * alpha + b)
    out = 0.5 * d * edge - (d - 1) * vtx
    return float(out) if np.ndim(out) == 0 else out
