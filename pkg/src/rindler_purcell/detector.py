"""Two-level detector: placements, configuration, and decay probability.

A pointlike detector with gap frequency omega couples linearly to the
field for a proper time tau.  To first order in the coupling eps, the
decay probability is a sum over cavity modes

    P = sum_k [ eps * F_k(chi_d) * tau * sinc((Omega_k - omega) tau / 2) ]^2

with sinc(y) = sin(y)/y extended by sinc(0) = 1, which is the
resonance-stable rewriting of |e^{i Delta tau} - 1|^2 / Delta^2 and is
entire in the detuning, so curves stay finite and continuous when a mode
crosses the detector frequency.  Every term is non-negative and scales
exactly as eps^2.

Placements are expressed relative to the resting cavity: the center, or
a node x = -L/2 + j L/n of resting mode n, which co-moves to
chi = chi1 + j L/n in the accelerated frame (the cavity is rigid in its
own frame).  The detector is tuned once to a resting resonance and not
retuned as the acceleration changes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from .errors import DomainError, TruncationWarning
from .rindler import RindlerGeometry, massless_modes, mode_value

if TYPE_CHECKING:
    from .inertial import CavityGeometry
    from .rindler import RindlerMode

__all__ = [
    "Center",
    "Node",
    "Placement",
    "DetectorConfig",
    "DecayResult",
    "node_positions",
    "rest_position",
    "chi_position",
    "sum_mode_terms",
    "decay_probability_accelerated",
    "decay_probability_massless",
]


@dataclass(frozen=True)
class Center:
    """Detector at the cavity center: x = 0 at rest, chi = 1/a accelerated."""


@dataclass(frozen=True)
class Node:
    """Detector at node j (of n-1, counted rear to front) of resting mode n."""

    n: int
    j: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and self.n >= 2):
            raise DomainError(f"reference mode n must be >= 2, got {self.n!r}")
        if not (isinstance(self.j, int) and 1 <= self.j <= self.n - 1):
            raise DomainError(
                f"node index must lie in 1..{self.n - 1}, got {self.j!r}"
            )


Placement = Union[Center, Node]


@dataclass(frozen=True)
class DetectorConfig:
    """Gap frequency, coupling, interaction time, and placement."""

    omega: float
    epsilon: float = 1.0
    tau: float = 0.0
    placement: Placement = Center()

    def __post_init__(self) -> None:
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise DomainError(f"gap frequency must be > 0, got {self.omega!r}")
        if not (self.epsilon > 0.0 and math.isfinite(self.epsilon)):
            raise DomainError(f"coupling must be > 0, got {self.epsilon!r}")
        if not (self.tau >= 0.0 and math.isfinite(self.tau)):
            raise DomainError(f"interaction time must be >= 0, got {self.tau!r}")

    @classmethod
    def resonant(
        cls,
        geom: "CavityGeometry",
        n: int,
        *,
        tau: float,
        epsilon: float = 1.0,
        placement: Placement = Center(),
    ) -> "DetectorConfig":
        """Detector tuned to the resting resonance omega_n of mode n."""
        if not (isinstance(n, int) and n >= 1):
            raise DomainError(f"resonant mode must be an integer >= 1, got {n!r}")
        # same dispersion as the resting spectrum, valid for m = 0 too
        omega = math.hypot(n * math.pi / geom.length, geom.mass)
        return cls(omega=omega, epsilon=epsilon, tau=tau, placement=placement)


@dataclass(frozen=True)
class DecayResult:
    """Mode-summed decay probability with its per-mode breakdown.

    ``per_mode_terms`` holds (k, Omega_k, term) triples whose exact sum
    (math.fsum) is ``probability``; ``converged`` reports the 5-term tail
    criterion of the truncated sum.
    """

    probability: float
    per_mode_terms: tuple[tuple[int, float, float], ...]
    truncation_k: int
    converged: bool


def rest_position(length: float, placement: Placement) -> float:
    """Rest-frame detector coordinate x0 of a placement."""
    if isinstance(placement, Center):
        return 0.0
    if isinstance(placement, Node):
        return -0.5 * length + placement.j * length / placement.n
    raise DomainError(f"unknown placement {placement!r}")


def node_positions(geom: RindlerGeometry, n: int) -> list[float]:
    """Accelerated-frame coordinates of the n-1 nodes of resting mode n.

    Returned in increasing chi (rear to front); all lie strictly between
    the mirrors.
    """
    if not (isinstance(n, int) and n >= 2):
        raise DomainError(f"reference mode n must be >= 2, got {n!r}")
    return [geom.chi1 + j * geom.length / n for j in range(1, n)]


def chi_position(geom: RindlerGeometry, placement: Placement) -> float:
    """Accelerated-frame detector coordinate chi of a placement."""
    if isinstance(placement, Center):
        return 1.0 / geom.accel
    if isinstance(placement, Node):
        return geom.chi1 + placement.j * geom.length / placement.n
    raise DomainError(f"unknown placement {placement!r}")


def _sinc(y: float) -> float:
    if y == 0.0:
        return 1.0
    return math.sin(y) / y


def sum_mode_terms(
    entries,
    det: DetectorConfig,
    *,
    rel_tol: float = 1.0e-10,
) -> DecayResult:
    """Assemble the decay probability from (k, Omega_k, F_k(chi_d)) entries.

    The tail criterion checks the last five supplied terms against
    ``rel_tol`` times the total; a failed check flags the result as
    unconverged and issues a TruncationWarning.  Sums over fewer than
    five modes (for example a single resonant channel) are exact by
    construction and count as converged.
    """
    terms = []
    for k, omega_k, f_val in entries:
        amp = (
            det.epsilon
            * f_val
            * det.tau
            * _sinc(0.5 * (omega_k - det.omega) * det.tau)
        )
        terms.append((k, omega_k, amp * amp))
    probability = math.fsum(t for _, _, t in terms)
    if len(terms) >= 5:
        tail = max(t for _, _, t in terms[-5:])
        converged = tail <= rel_tol * probability
    else:
        converged = True
    if not converged:
        warnings.warn(
            f"mode sum truncated at k={terms[-1][0]} with tail above "
            f"{rel_tol:g} of the total",
            TruncationWarning,
            stacklevel=3,
        )
    return DecayResult(
        probability=probability,
        per_mode_terms=tuple(terms),
        truncation_k=max(k for k, _, _ in terms) if terms else 0,
        converged=converged,
    )


def decay_probability_accelerated(
    geom: RindlerGeometry,
    modes: "list[RindlerMode]",
    det: DetectorConfig,
    *,
    rel_tol: float = 1.0e-10,
) -> DecayResult:
    """Decay probability of the accelerated detector over supplied modes.

    The modes must be solved and normalized; the placement is mapped to
    its co-moving coordinate and each mode contributes the stable sinc
    form term.  Restricting ``modes`` to a subset isolates individual
    channels (for example the resonant mode alone).
    """
    chi_d = chi_position(geom, det.placement)
    entries = [
        (mode.k, mode.Omega, mode_value(geom, mode, chi_d)) for mode in modes
    ]
    return sum_mode_terms(entries, det, rel_tol=rel_tol)


def decay_probability_massless(
    geom: RindlerGeometry,
    det: DetectorConfig,
    k_max: int,
    *,
    rel_tol: float = 1.0e-10,
) -> DecayResult:
    """Massless decay probability at the cavity center, k_max modes.

    Uses the closed-form spectrum Omega_k = k pi / L' and center values
    sin(k pi (-ln(1 - aL/2)) / (a L')) / sqrt(k pi); the detector must
    sit at the center, where the resting resonance is omega_n = n pi / L.
    """
    if geom.mass != 0.0:
        raise DomainError("decay_probability_massless requires m = 0")
    if not isinstance(det.placement, Center):
        raise DomainError(
            "the massless reduction is defined for a center detector"
        )
    modes = massless_modes(geom, k_max)
    return decay_probability_accelerated(geom, modes, det, rel_tol=rel_tol)
