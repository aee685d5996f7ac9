"""Resting cavity: closed-form modes and the stationary decay probability.

A massive scalar field in an ideal cavity of proper length L with
Dirichlet mirrors at x = -L/2 and x = +L/2 has mode frequencies
omega_k = sqrt((k pi / L)^2 + m^2) and spatial profiles

    F_k(x) = sin(k pi (x + L/2) / L) / sqrt(omega_k L),

normalized so the Klein-Gordon norm 2 omega_k * integral F_k^2 dx is 1.
A two-level detector at rest at x0, coupled for a proper time tau, decays
with probability

    P = sum_k [eps * F_k(x0) * tau * sinc((omega_k - omega) tau / 2)]^2,

the first-order perturbative mode sum in its resonance-stable form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .detector import DecayResult, DetectorConfig, rest_position, sum_mode_terms
from .errors import DomainError

__all__ = [
    "CavityGeometry",
    "InertialMode",
    "mode_frequency",
    "mode_function",
    "decay_probability_rest",
]


@dataclass(frozen=True)
class CavityGeometry:
    """Proper length and field mass of the cavity, in natural units."""

    length: float
    mass: float = 0.0

    def __post_init__(self) -> None:
        if not (self.length > 0.0 and math.isfinite(self.length)):
            raise DomainError(f"cavity length must be > 0, got {self.length!r}")
        if not (self.mass >= 0.0 and math.isfinite(self.mass)):
            raise DomainError(f"field mass must be >= 0, got {self.mass!r}")


@dataclass(frozen=True)
class InertialMode:
    """Mode index and frequency of the resting cavity."""

    k: int
    omega: float


def _check_index(k: int) -> int:
    if not (isinstance(k, int) and k >= 1):
        raise DomainError(f"mode index must be an integer >= 1, got {k!r}")
    return k


def mode_frequency(geom: CavityGeometry, k: int) -> float:
    """Frequency omega_k = sqrt((k pi / L)^2 + m^2) of mode k."""
    _check_index(k)
    return math.hypot(k * math.pi / geom.length, geom.mass)


def mode_function(geom: CavityGeometry, k: int, x: float) -> float:
    """Normalized mode profile F_k(x); vanishes at the mirrors x = +-L/2."""
    _check_index(k)
    half = 0.5 * geom.length
    if not (-half <= x <= half):
        raise DomainError(
            f"position x = {x!r} outside the mirrors at +-{half:g}"
        )
    omega = mode_frequency(geom, k)
    return math.sin(k * math.pi * (x + half) / geom.length) / math.sqrt(
        omega * geom.length
    )


def decay_probability_rest(
    geom: CavityGeometry,
    det: DetectorConfig,
    k_max: int = 64,
    *,
    rel_tol: float = 1.0e-10,
) -> DecayResult:
    """Decay probability of a resting detector, truncated at k_max modes.

    The detector sits at the rest-frame position its placement denotes
    (the cavity center, or a node of the placement's reference mode).
    Terms fall off like 1/omega_k^3, and the result carries a ``converged``
    flag from the standard 5-term tail criterion; a TruncationWarning is
    issued when the tail still exceeds ``rel_tol`` times the sum.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max!r}")
    x0 = rest_position(geom.length, det.placement)
    entries = []
    for k in range(1, k_max + 1):
        omega_k = mode_frequency(geom, k)
        entries.append((k, omega_k, mode_function(geom, k, x0)))
    return sum_mode_terms(entries, det, rel_tol=rel_tol)
