"""Gaussian-channel toolkit for a pumped cavity electro-optic converter.

The package builds the converter's port scattering matrix from its Langevin
description, reduces it to a single-mode Gaussian channel (T, N), and scores
that channel: transmissivity, added noise, and a quantum-capacity lower
bound. On top sit the symplectic utilities (Bloch-Messiah, CP checks), the
squeezed-frame (Bogoliubov) analysis of the detuned system, the
half-matching/squeezer-plan machinery, and a sweep CLI with presets for the
package's reference figures.
"""

__version__ = "0.1.0"

from .bogoliubov_frame import (
    BogoliubovFrame,
    RwaReport,
    amplified_noise,
    bogoliubov_channel_metrics,
    build_frame,
    effective_squeezing,
    elimination_params,
    eta_bogoliubov,
    rwa_validity,
    squeezed_bath_noise,
)
from .channel_metrics import (
    ChannelMetrics,
    GaussianChannel,
    added_noise,
    capacity_lower_bound,
    eta_bandwidth,
    eta_closed_form,
    eta_detuned,
    half_matching_cnu,
    metrics_from_channel,
    squeezing_db,
    stability_check,
    thermal_entropy,
    thermal_occupancy,
    thermal_occupancy_log10,
    transmissivity,
)
from .errors import (
    ConfigError,
    ConventionError,
    DimensionError,
    NearSingularWarning,
    OutOfRegimeError,
    PhysicalityError,
    PreconditionError,
    RegimeWarning,
    SingularityError,
    StabilityError,
    TransductionError,
)
from .matching_analysis import (
    HalfMatchedForm,
    QuadratureRelations,
    SqueezerPlan,
    composed_channel,
    detect_half_matched,
    perfect_transduction_plan,
    quadrature_relations,
    signal_scattering,
    two_way_channels,
    two_way_plan,
)
from .symplectic_core import (
    BlochMessiahFactors,
    CovarianceMatrix,
    LadderMatrix,
    QuadratureMatrix,
    SymplecticForm,
    bloch_messiah,
    cp_check,
    is_symplectic,
    ladder_to_quadrature,
    quadrature_to_ladder,
    random_symplectic,
    random_symplectic_orthogonal,
    symplectic_form,
)
from .sweep_cli import (
    PRESETS,
    ResultTable,
    SweepAxis,
    SweepConfig,
    list_presets,
    read_table,
    run_sweep,
    write_table,
)
from .transducer_model import (
    BathSpec,
    ChannelDirection,
    PortBath,
    SystemParams,
    assemble_environment_covariance,
    build_dynamical_matrix,
    coupling_matrix,
    extract_channel,
    is_dynamically_stable,
    random_stable_params,
    scattering_ladder,
    scattering_quadrature,
)

__all__ = [name for name in dir() if not name.startswith("_")]
