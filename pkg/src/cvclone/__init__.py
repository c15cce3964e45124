"""Distributing an unknown coherent state to m receivers through noisy
channels: nonlocal distribution over shared multimode entanglement versus
local cloning plus direct transmission, with closed forms, matrix
pipelines, Monte Carlo checks and crossover thresholds."""

__version__ = "0.1.0"

from .errors import DomainError, NumericalError
from .gaussian import (
    GaussianState,
    MeasurementOutcome,
    ModePartition,
    ThermalLossParams,
    apply_thermal_loss,
    coherent_state,
    condition_on_double_homodyne,
    displace,
    fidelity_to_coherent,
    partial_trace,
    ppt_min_symplectic,
    symplectic_eigenvalues,
)
from .source import (
    FockAmplitudes,
    Sum1Params,
    SymmetricSum1,
    check_full_inseparability,
    covariance_from_fock_oracle,
    covariance_matrix,
    fock_state_amplitudes,
)
from .telecloning import (
    CloneResult,
    OptimalStrategy,
    TelecloningConfig,
    clone_fidelity_closed,
    monte_carlo_protocol,
    noisy_support,
    numeric_optimal,
    optimal_symmetric,
    symmetric_fidelity,
    telecloning_pipeline,
    useful_time_thresholds,
)
from .lcdt import (
    GaussianAlphabet,
    LcdtConfig,
    admissible_amplitude_sq,
    apply_cloning_map,
    averaged_fidelity,
    averaged_fidelity_quadrature,
    lcdt_fidelity,
    lcdt_fidelity_pipeline,
    omega_thresholds,
    optimize_cloner_location,
    scan_cloner_location,
    stationary_tauc,
)
from .experiments import (
    ComparisonRecord,
    ReportTable,
    SweepSpec,
    compare,
    reproduce_figure,
    reproduce_table1,
    run_sweep,
)
