"""Circuit parameters and normal-mode diagonalization.

Two LC circuits coupled through a mutual inductance map onto a pair of
unit-mass harmonic oscillators with a bilinear coordinate coupling.  In
dimensionless form the first oscillator has unit frequency, the second
has frequency ``lam``, and the coupling strength is
``g = L12 / sqrt(L1 * L2)``.  A rotation of the two coordinates by an
angle ``phi`` removes the cross term and yields the normal-mode
frequencies ``omega1`` and ``omega2``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "CircuitParams",
    "DegenerateFrequencies",
    "FrequencyMethod",
    "NormalModes",
    "UnstableMode",
    "normal_modes",
    "rotation_angle_exact",
    "rotation_angle_small",
]

# |phi| at or above this is outside the regime the linearized rotation
# was derived for; callers get a warning rather than an error.
SMALL_ANGLE_LIMIT = 0.3

_INDUCTANCE_RTOL = 1e-12


class DegenerateFrequencies(ValueError):
    """The small-angle rotation formula is singular at lam = 1."""


class UnstableMode(ValueError):
    """A squared normal-mode frequency came out non-positive."""


class FrequencyMethod(Enum):
    SMALL_ANGLE = "small-angle"
    EXACT = "exact"


@dataclass(frozen=True)
class CircuitParams:
    """Dimensionless parameters of the coupled pair.

    Parameters
    ----------
    lam : float
        Frequency ratio of the bare oscillators (second over first).
    g : float
        Coupling strength.  ``|g| < 1`` keeps both normal modes stable.
    l1, l2, l12 : float, optional
        Physical inductances.  When all three are supplied they must
        reproduce ``g`` through ``l12 / sqrt(l1 * l2)``.
    """

    lam: float
    g: float
    l1: float | None = None
    l2: float | None = None
    l12: float | None = None

    def __post_init__(self) -> None:
        if not self.lam > 0:
            raise ValueError(f"frequency ratio must be positive, got {self.lam}")
        if not abs(self.g) < 1:
            raise ValueError(f"|g| < 1 required for stable modes, got g={self.g}")
        given = [x is not None for x in (self.l1, self.l2, self.l12)]
        if any(given) and not all(given):
            raise ValueError("give all of l1, l2, l12 or none of them")
        if all(given):
            if self.l1 <= 0 or self.l2 <= 0:
                raise ValueError("self-inductances must be positive")
            g_from_l = self.l12 / math.sqrt(self.l1 * self.l2)
            if abs(g_from_l - self.g) > _INDUCTANCE_RTOL * max(abs(self.g), 1e-300):
                raise ValueError(
                    f"inconsistent coupling: g={self.g} but "
                    f"l12/sqrt(l1*l2)={g_from_l}"
                )

    @classmethod
    def from_inductances(
        cls, l1: float, l2: float, l12: float, lam: float
    ) -> "CircuitParams":
        """Build params from physical inductances, deriving g."""
        if l1 <= 0 or l2 <= 0:
            raise ValueError("self-inductances must be positive")
        g = l12 / math.sqrt(l1 * l2)
        return cls(lam=lam, g=g, l1=l1, l2=l2, l12=l12)


@dataclass(frozen=True)
class NormalModes:
    """Rotation angle and normal-mode frequencies for one parameter set."""

    phi: float
    omega1: float
    omega2: float
    method: FrequencyMethod


def rotation_angle_small(params: CircuitParams) -> float:
    """Leading-order rotation angle ``g * lam / (lam**2 - 1)``.

    Raises
    ------
    DegenerateFrequencies
        If ``lam == 1``, where the linearized expression blows up.
    """
    if params.lam == 1:
        raise DegenerateFrequencies(
            "small-angle rotation is singular at lam = 1; use the exact method"
        )
    phi = params.g * params.lam / (params.lam**2 - 1)
    if abs(phi) >= SMALL_ANGLE_LIMIT:
        warnings.warn(
            f"rotation angle {phi:.3f} is outside the small-angle regime",
            stacklevel=2,
        )
    return phi


def rotation_angle_exact(params: CircuitParams) -> float:
    """Exact diagonalizing rotation angle.

    Solves ``tan(2*phi) = 2*g*lam / (lam**2 - 1)`` on the branch that is
    continuous in g with ``phi(g=0) = 0``, so mode labels follow the
    bare oscillators rather than frequency ordering.  At ``lam == 1``
    the limit from above is taken, giving ``pi/4`` for positive g.
    """
    lam, g = params.lam, params.g
    if g == 0:
        return 0.0
    if lam >= 1:
        return 0.5 * math.atan2(2 * g * lam, lam**2 - 1)
    # lam < 1: atan2 lands near +-pi/2; fold back to the branch through zero
    return 0.5 * math.atan(2 * g * lam / (lam**2 - 1))


def normal_modes(
    params: CircuitParams,
    method: FrequencyMethod = FrequencyMethod.SMALL_ANGLE,
) -> NormalModes:
    """Diagonalize the coupled pair into normal modes.

    The small-angle method evaluates the linearized frequency formulas
    ``omega1**2 = 1 - 2*g*lam*phi + lam**2*phi**2`` and
    ``omega2**2 = phi**2 + lam**2 + 2*g*lam*phi`` at the leading-order
    angle.  The exact method evaluates the full rotated quadratic form
    at the exact angle, which reproduces the eigenvalues of the
    potential matrix ``[[1, g*lam], [g*lam, lam**2]]``.
    """
    lam, g = params.lam, params.g
    if g == 0:
        # no rotation needed; keep (1, lam) free of rounding
        return NormalModes(0.0, 1.0, lam, method)
    if method is FrequencyMethod.SMALL_ANGLE:
        phi = rotation_angle_small(params)
        w1_sq = 1 - 2 * g * lam * phi + lam**2 * phi**2
        w2_sq = phi**2 + lam**2 + 2 * g * lam * phi
    else:
        phi = rotation_angle_exact(params)
        c, s = math.cos(phi), math.sin(phi)
        w1_sq = lam**2 * s**2 + c**2 - 2 * g * lam * s * c
        w2_sq = s**2 + lam**2 * c**2 + 2 * g * lam * s * c
    if w1_sq <= 0 or w2_sq <= 0:
        raise UnstableMode(
            f"non-positive squared frequency (omega1^2={w1_sq}, omega2^2={w2_sq})"
        )
    return NormalModes(phi, math.sqrt(w1_sq), math.sqrt(w2_sq), method)
