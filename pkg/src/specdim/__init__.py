"""specdim: spectral asymptotics toolkit.

Step-function rearrangements, polynomial order estimation, eccentricity
profiles, spectral-dimension classification, and lattice heat traces.
"""

from .errors import (
    BranchContradictionError,
    CsvFormatError,
    IndeterminateError,
    InfiniteMeasureError,
    InputError,
    OracleMismatchError,
    PositivityViolationError,
    ResourceLimitError,
    SpecdimError,
)
from .stepfn import (
    End,
    MassSample,
    StepFunction,
    distribution,
    integrate,
    rearrange,
    round_trip,
)
from .orders import (
    GridSpec,
    OrderEstimate,
    estimate_from_corners,
    order_at_infinity,
    order_at_zero,
    order_via_distribution,
    power_scale,
    slope_estimate,
)
from .models import (
    Besicovitch,
    External,
    Model,
    PowerLaw,
    PowerLog,
    TorusLaplacian,
    parse_model,
)
from .dimension import (
    DimensionReport,
    DixmierTrajectory,
    DoublingEstimate,
    HausdorffBracket,
    RegularityReport,
    box_dimension,
    dimension_report,
    dixmier_trajectory,
    hausdorff_dimension,
    partial_sum_doubling,
    regularity_tests,
)
from .eccentricity import (
    DoublingProfile,
    classify_integrability,
    doubling_profile,
    eccentric_verdict,
    s_infinity,
    s_zero,
)
from .heat import (
    DualityCount,
    FiniteKernel,
    HeatTrace,
    NsNumbers,
    SpectralCounting,
    asdim,
    asdim_sup_form,
    counting_duality,
    generic_probe_times,
    laplace_stieltjes,
    lattice_return_probability,
    ns_numbers,
    one_inf_norm,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SpecdimError",
    "InputError",
    "CsvFormatError",
    "InfiniteMeasureError",
    "IndeterminateError",
    "BranchContradictionError",
    "PositivityViolationError",
    "ResourceLimitError",
    "OracleMismatchError",
    "End",
    "StepFunction",
    "MassSample",
    "rearrange",
    "distribution",
    "round_trip",
    "integrate",
    "GridSpec",
    "OrderEstimate",
    "slope_estimate",
    "estimate_from_corners",
    "order_at_infinity",
    "order_at_zero",
    "order_via_distribution",
    "power_scale",
    "Model",
    "PowerLaw",
    "PowerLog",
    "Besicovitch",
    "TorusLaplacian",
    "External",
    "parse_model",
    "HausdorffBracket",
    "DixmierTrajectory",
    "RegularityReport",
    "DoublingEstimate",
    "DimensionReport",
    "box_dimension",
    "hausdorff_dimension",
    "dixmier_trajectory",
    "regularity_tests",
    "partial_sum_doubling",
    "dimension_report",
    "DoublingProfile",
    "classify_integrability",
    "s_zero",
    "s_infinity",
    "doubling_profile",
    "eccentric_verdict",
    "HeatTrace",
    "SpectralCounting",
    "FiniteKernel",
    "DualityCount",
    "NsNumbers",
    "lattice_return_probability",
    "asdim",
    "asdim_sup_form",
    "one_inf_norm",
    "counting_duality",
    "generic_probe_times",
    "laplace_stieltjes",
    "ns_numbers",
]
