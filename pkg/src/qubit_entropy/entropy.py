"""Spectral entropies and the bipartite subadditivity report."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import DensityMatrix, partial_trace, purity

__all__ = [
    "EntropyReport",
    "NonPositiveQ",
    "analyze_bipartite",
    "tsallis_entropy",
    "von_neumann_entropy",
]

# |q - 1| below this routes to the von Neumann limit; the spectral
# formula divides by (q - 1) and loses accuracy long before it hits a
# literal zero.
VON_NEUMANN_WINDOW = 1e-6


class NonPositiveQ(ValueError):
    """Entropic index q must be positive."""


def _spectrum(rho: DensityMatrix) -> np.ndarray:
    evals = np.linalg.eigvalsh(rho.entries)
    # rounding can leave tiny negatives even after upstream clamping
    return np.clip(evals, 0.0, None)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S = -sum(p * ln p) over the spectrum, with 0 ln 0 = 0."""
    p = _spectrum(rho)
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def tsallis_entropy(rho: DensityMatrix, q: float) -> float:
    """Tsallis entropy S_q = (1 - sum(p^q)) / (q - 1).

    Continuous in q: for |q - 1| < 1e-6 the von Neumann value is
    returned, which the spectral formula approaches in that limit.
    """
    if q <= 0:
        raise NonPositiveQ(f"entropic index must be positive, got q={q}")
    if abs(q - 1.0) < VON_NEUMANN_WINDOW:
        return von_neumann_entropy(rho)
    p = _spectrum(rho)
    return float((1.0 - (p**q).sum()) / (q - 1.0))


@dataclass(frozen=True)
class EntropyReport:
    """Joint and marginal entropies of a two-mode state at one q."""

    q: float
    s_joint: float
    s_first: float
    s_second: float
    subadditivity_margin: float
    mutual_info: float
    purity: float
    temperature: float | None


def analyze_bipartite(rho: DensityMatrix, q: float = 1.0) -> EntropyReport:
    """Entropies of a two-mode state and both marginals.

    The margin ``s_first + s_second - s_joint`` is reported as both the
    subadditivity margin and the mutual information; they coincide by
    definition.  For q = 1 the margin is non-negative for every state.
    Away from q = 1 it can be legitimately negative (Tsallis entropy is
    not additive over products), so callers should treat it as a
    diagnostic rather than an inequality.
    """
    s_joint = tsallis_entropy(rho, q)
    s_first = tsallis_entropy(partial_trace(rho, 1), q)
    s_second = tsallis_entropy(partial_trace(rho, 2), q)
    margin = s_first + s_second - s_joint
    return EntropyReport(
        q=q,
        s_joint=s_joint,
        s_first=s_first,
        s_second=s_second,
        subadditivity_margin=margin,
        mutual_info=margin,
        purity=purity(rho),
        temperature=rho.temperature,
    )
