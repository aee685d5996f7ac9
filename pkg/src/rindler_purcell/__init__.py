"""Decay of an accelerated atom in a co-accelerating cavity.

Computes Purcell-modified decay probabilities for a two-level detector
coupled to a scalar field inside an ideal cavity, both at rest and under
uniform proper acceleration (Rindler coordinates), and provides the sweep
and CLI tooling used to generate probability-versus-acceleration curves.
"""

__version__ = "0.1.0"

from .detector import (
    Center,
    DecayResult,
    DetectorConfig,
    Node,
    decay_probability_accelerated,
    decay_probability_massless,
    node_positions,
)
from .errors import (
    BracketingError,
    ConvergenceError,
    DomainError,
    NumericalError,
    PoleError,
    PrecisionLossError,
    QuadratureError,
    TruncationWarning,
)
from .inertial import (
    CavityGeometry,
    InertialMode,
    decay_probability_rest,
    mode_frequency,
    mode_function,
)
from .rindler import (
    RindlerGeometry,
    RindlerMode,
    massless_frequency,
    massless_modes,
    mode_value,
    normalize_mode,
    solve_eigenfrequencies,
)
from .specfun import (
    backend_name,
    bessel_cross_product,
    bessel_cross_product_scaled,
    bessel_I_imag_order,
    bessel_I_imag_order_scaled,
    complex_gamma,
)
from .sweep import SweepPlan, SweepResult, figure_plan, local_maxima, node_ranking, run_sweep

__all__ = [
    "__version__",
    "BracketingError",
    "CavityGeometry",
    "Center",
    "ConvergenceError",
    "DecayResult",
    "DetectorConfig",
    "DomainError",
    "InertialMode",
    "Node",
    "NumericalError",
    "PoleError",
    "PrecisionLossError",
    "QuadratureError",
    "RindlerGeometry",
    "RindlerMode",
    "SweepPlan",
    "SweepResult",
    "TruncationWarning",
    "backend_name",
    "bessel_I_imag_order",
    "bessel_I_imag_order_scaled",
    "bessel_cross_product",
    "bessel_cross_product_scaled",
    "complex_gamma",
    "decay_probability_accelerated",
    "decay_probability_massless",
    "decay_probability_rest",
    "figure_plan",
    "local_maxima",
    "massless_frequency",
    "massless_modes",
    "mode_frequency",
    "mode_function",
    "mode_value",
    "node_positions",
    "node_ranking",
    "normalize_mode",
    "run_sweep",
    "solve_eigenfrequencies",
]
