"""Mean-field quadrature squeezing in the two-photon Dicke model."""
__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateAngle,
    Dicke2PError,
    DomainError,
    InsufficientPoints,
    NonPositiveFrequency,
    NotSuperradiant,
    OracleMismatch,
    ParameterError,
    StepTooLarge,
    TooFewPeriods,
    UnboundedRegion,
    ZeroQubits,
)
from .model import (  # noqa: E402
    MeanFieldSolution,
    ModelParams,
    Phase,
    PhaseTag,
    bogoliubov_angle,
    classify_phase,
    critical_coupling,
    effective_coupling,
    excitation_frequency,
    ground_state_energy,
    order_parameter,
    solve_mean_field,
    validate_params,
)
from .dynamics import (  # noqa: E402
    QuadratureCoefficients,
    SqueezingSample,
    SqueezingSeries,
    coefficients,
    min_squeezing,
    optimal_angle,
    quadrature_series,
    squeezing_at_angle,
)
