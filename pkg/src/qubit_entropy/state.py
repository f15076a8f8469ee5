"""Thermal density matrices, basis changes, and truncation diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .hermite import DEFAULT_QUAD_ORDER
from .model import CircuitParams, NormalModes
from .transform import TransformMethod, TransformTensor, build_transform

__all__ = [
    "Basis",
    "DensityMatrix",
    "DimensionMismatch",
    "NonPositiveTemperature",
    "NotAProductDimension",
    "SubspaceDiagnostics",
    "density_from_array",
    "partial_trace",
    "purity",
    "subspace_validity",
    "thermal_density",
    "transform_density",
]

# Eigenvalues in [-PSD_CLAMP, 0) are treated as rounding debris and
# clamped to zero; anything below that is a genuine violation.
PSD_CLAMP = 1e-10

# Below this temperature every excited Boltzmann weight underflows;
# return the exact ground-state projector instead.
GROUND_STATE_T = 1e-8


class NonPositiveTemperature(ValueError):
    """Thermal states need T > 0."""


class DimensionMismatch(ValueError):
    """Operator dimensions do not agree."""


class NotAProductDimension(ValueError):
    """Partial trace needs a dimension that is a perfect square."""


class Basis(Enum):
    NORMAL_MODE = "normal-mode"
    PHYSICAL = "physical"


@dataclass(frozen=True)
class DensityMatrix:
    """Real symmetric density matrix tagged with its basis and origin.

    Build instances through :func:`density_from_array` or the producers
    in this module; they symmetrize, clamp rounding-level negative
    eigenvalues, and normalize the trace.
    """

    entries: np.ndarray
    basis: Basis
    temperature: float | None = None

    def __post_init__(self) -> None:
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError(f"density matrix must be square, got {self.entries.shape}")
        if not np.all(np.isfinite(self.entries)):
            raise ValueError("density matrix contains non-finite entries")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def density_from_array(
    entries: np.ndarray,
    basis: Basis = Basis.PHYSICAL,
    temperature: float | None = None,
) -> DensityMatrix:
    """Canonicalize an array into a DensityMatrix.

    The array is symmetrized, scaled to unit trace, and eigenvalues in
    ``[-1e-10, 0)`` are clamped to zero (with one more trace fix).  A
    smaller eigenvalue raises ValueError: that is not rounding noise.
    """
    arr = np.array(entries, dtype=float)
    arr = 0.5 * (arr + arr.T)
    trace = float(np.trace(arr))
    if not trace > 0:
        raise ValueError(f"trace must be positive, got {trace}")
    arr /= trace
    evals, vecs = np.linalg.eigh(arr)
    if evals[0] < -PSD_CLAMP:
        raise ValueError(
            f"matrix is not positive semidefinite (min eigenvalue {evals[0]:.3e})"
        )
    if evals[0] < 0.0:
        evals = np.clip(evals, 0.0, None)
        arr = (vecs * evals) @ vecs.T
        arr = 0.5 * (arr + arr.T)
        arr /= float(np.trace(arr))
    return DensityMatrix(arr, basis, temperature)


def thermal_density(modes: NormalModes, temperature: float, d: int) -> DensityMatrix:
    """Thermal state of the two normal modes, truncated to d levels each.

    Diagonal in the normal-mode number basis with weights
    ``exp(-(n*omega1 + m*omega2)/T)`` normalized by the truncated sum;
    the zero-point energy cancels against the ground state.  Row index
    is ``n*d + m`` (second label fastest).
    """
    if temperature <= 0:
        raise NonPositiveTemperature(f"temperature must be positive, got {temperature}")
    if d < 2:
        raise ValueError(f"need at least two levels per mode, got d={d}")
    weights = np.zeros(d * d)
    if temperature < GROUND_STATE_T:
        weights[0] = 1.0
    else:
        n = np.arange(d, dtype=float)
        gaps = modes.omega1 * n[:, None] + modes.omega2 * n[None, :]
        weights = np.exp(-gaps / temperature).ravel()
        weights /= weights.sum()
    return DensityMatrix(np.diag(weights), Basis.NORMAL_MODE, temperature)


def transform_density(rho: DensityMatrix, transform: TransformTensor) -> DensityMatrix:
    """Express a normal-mode state in the bare product basis.

    Applies ``U^T rho U`` with the truncated overlap tensor, then
    symmetrizes and renormalizes; truncation makes U only approximately
    orthogonal, so a little weight is shed and restored by the
    normalization.
    """
    if rho.basis is not Basis.NORMAL_MODE:
        raise ValueError(f"expected a normal-mode state, got basis={rho.basis}")
    u = transform.entries
    if rho.dim != u.shape[0]:
        raise DimensionMismatch(
            f"state dimension {rho.dim} does not match transform {u.shape[0]}"
        )
    rotated = u.T @ rho.entries @ u
    return density_from_array(rotated, Basis.PHYSICAL, rho.temperature)


def partial_trace(rho: DensityMatrix, subsystem: int) -> DensityMatrix:
    """Trace out one mode of a two-mode state.

    ``subsystem`` selects the mode that is kept: 1 keeps the first
    label of the ``n*d + m`` composite index, 2 keeps the second.
    """
    if subsystem not in (1, 2):
        raise ValueError(f"subsystem must be 1 or 2, got {subsystem}")
    d = math.isqrt(rho.dim)
    if d * d != rho.dim:
        raise NotAProductDimension(
            f"dimension {rho.dim} is not a product of two equal factors"
        )
    blocks = rho.entries.reshape(d, d, d, d)
    if subsystem == 1:
        reduced = np.einsum("imjm->ij", blocks)
    else:
        reduced = np.einsum("ninj->ij", blocks)
    return density_from_array(reduced, rho.basis, rho.temperature)


def purity(rho: DensityMatrix) -> float:
    """Tr rho^2; for a symmetric matrix this is the squared Frobenius norm."""
    return float(np.sum(rho.entries * rho.entries))


class SubspaceDiagnostics(NamedTuple):
    mu_block: float
    mu_complement: float
    offdiag_sum: float


def subspace_validity(
    modes: NormalModes,
    params: CircuitParams,
    temperature: float,
    d_small: int = 2,
    d_big: int = 6,
    transform: TransformTensor | None = None,
    order: int = DEFAULT_QUAD_ORDER,
) -> SubspaceDiagnostics:
    """How well the d_small^2 block approximates the d_big^2 state.

    The thermal state is built at d_big levels per mode, expressed in
    the bare basis, and split into the block spanned by bare levels
    below d_small and its complement.  Reported are the purity of the
    renormalized block (mu_block), the raw squared weight of the
    complement block without renormalization (mu_complement, which
    vanishes as T -> 0), and the absolute sum of off-diagonal elements
    of the renormalized block.

    Parameters
    ----------
    transform : TransformTensor, optional
        A prebuilt d_big tensor, so sweeps can reuse one across
        temperatures.  Built on the fly by quadrature when omitted.
    """
    if d_small < 2:
        raise ValueError(f"need at least two retained levels, got {d_small}")
    if d_big <= d_small:
        raise ValueError(f"d_big must exceed d_small, got {d_big} <= {d_small}")
    if transform is None:
        transform = build_transform(
            params, modes, d=d_big, method=TransformMethod.QUADRATURE, order=order
        )
    elif transform.d != d_big:
        raise DimensionMismatch(
            f"prebuilt transform has d={transform.d}, expected {d_big}"
        )
    state = transform_density(thermal_density(modes, temperature, d_big), transform)
    kept = [n * d_big + m for n in range(d_small) for m in range(d_small)]
    rest = [i for i in range(d_big * d_big) if i not in kept]
    block = state.entries[np.ix_(kept, kept)]
    block_weight = float(np.trace(block))
    block = block / block_weight
    complement = state.entries[np.ix_(rest, rest)]
    mu_block = float(np.sum(block * block))
    mu_complement = float(np.sum(complement * complement))
    offdiag = float(np.sum(np.abs(block)) - np.sum(np.abs(np.diag(block))))
    return SubspaceDiagnostics(mu_block, mu_complement, offdiag)
