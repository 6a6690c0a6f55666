"""Parallel transport, holonomy and Foucault pendulum precession on surfaces of revolution."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .geometry import (
    EPS_POLE,
    ChristoffelSet,
    FirstFundamentalForm,
    FrameTriad,
    LatitudeCircle,
    PoleProximity,
    SurfaceOfRevolution,
    sphere,
)
from .numerics import (
    IntegratorSpec,
    InvalidPanelCount,
    NonFiniteState,
    OdeTrace,
    StepLimitExceeded,
    integrate,
    quadrature,
)
from .pendulum import (
    BetaAlphaSeparationViolated,
    DegenerateTrace,
    PendulumConfig,
    PendulumTrace,
    PrecessionReport,
    closed_form_solution,
    closed_form_trace,
    compare_with_holonomy,
    effective_beta,
    extract_precession,
    oscillation_field,
    simulate,
)
from .transport import (
    HolonomyReport,
    InsufficientSamples,
    ParallelismResidual,
    TangentField,
    TransportTrace,
    geodesic_curvature,
    geodesic_curvature_parallel,
    holonomy_closed,
    holonomy_numeric,
    parallel_transport,
    parallelism_residual,
    transport_angle_integral,
)
