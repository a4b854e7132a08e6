"""Direct-coupling coherent observers for closed linear quantum systems."""

from .ccr import (
    DEFAULT_TOL,
    BetaReport,
    CommutationStructure,
    PlantSpec,
    QuantumLinearSystem,
    RealizabilityReport,
    check_realizability,
    dynamics_from_hamiltonian,
    hamiltonian_from_dynamics,
    make_plant,
    make_theta,
    realizability_residual,
    validate_beta,
)
from .closed_form import (
    CoefficientMap,
    coefficient_map,
    exp_norm_bound,
    observer_block,
    output_maps,
    plant_block,
    plant_block_quadrature,
    plant_secular_matrix,
)
from .linalg import (
    DefinitenessReport,
    SpectrumReport,
    eigenvalues,
    eigenvalues_mp,
    expm,
    is_positive_definite,
    spectral_norm,
)
from .scenarios import (
    ArtifactBundle,
    ConfigError,
    ScenarioConfig,
    run_custom,
    run_measurement_sequence,
    run_one_mode,
    run_scenario,
)
from .simulation import (
    AverageSeries,
    ConvergenceReport,
    InvariantReport,
    PropagatorSeries,
    Segment,
    convergence_diagnostics,
    exact_propagator_average,
    invariant_monitor,
    propagate,
    propagate_schedule,
    schedule_grid,
    time_average,
    uniform_grid,
)
from .synthesis import (
    AugmentedSystem,
    ObserverConditionsReport,
    ObserverSpec,
    assemble_augmented,
    synthesize_observer,
    verify_observer_conditions,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "ArtifactBundle",
    "AugmentedSystem",
    "AverageSeries",
    "BetaReport",
    "CoefficientMap",
    "CommutationStructure",
    "ConfigError",
    "ConvergenceReport",
    "DefinitenessReport",
    "InvariantReport",
    "ObserverConditionsReport",
    "ObserverSpec",
    "PlantSpec",
    "PropagatorSeries",
    "QuantumLinearSystem",
    "RealizabilityReport",
    "ScenarioConfig",
    "Segment",
    "SpectrumReport",
    "assemble_augmented",
    "check_realizability",
    "coefficient_map",
    "convergence_diagnostics",
    "dynamics_from_hamiltonian",
    "eigenvalues",
    "eigenvalues_mp",
    "exact_propagator_average",
    "exp_norm_bound",
    "expm",
    "hamiltonian_from_dynamics",
    "invariant_monitor",
    "is_positive_definite",
    "make_plant",
    "make_theta",
    "observer_block",
    "output_maps",
    "plant_block",
    "plant_block_quadrature",
    "plant_secular_matrix",
    "propagate",
    "propagate_schedule",
    "realizability_residual",
    "run_custom",
    "run_measurement_sequence",
    "run_one_mode",
    "run_scenario",
    "schedule_grid",
    "spectral_norm",
    "synthesize_observer",
    "time_average",
    "uniform_grid",
    "validate_beta",
    "verify_observer_conditions",
]
