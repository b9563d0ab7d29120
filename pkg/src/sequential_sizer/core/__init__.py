"""Core procedure logic and data models."""

from .models import (
    ProcedureConfig,
    Observation,
    ObservationBatch,
    StoppingResult,
    TraceEntry,
    EtaValue,
    ValidationResult
)
from .interfaces import (
    ObservationSource,
    VarianceTracker
)
from .formulas import optimal_sample_size, theoretical_risk, strict_floor, final_sample_size
from .validation import validate_config
from .regression import (
    RegressionFit,
    fit_init,
    fit_update,
    fit_merge,
    fit_solve,
    loss_value,
    loss_value_inverse_weighted
)
from .chi_square import chi2_sf, positive_part_excess, eta, projected_overshoot
from .engine import FitVarianceTracker, SequentialProcedure, run_procedure, run_procedure_traced

__all__ = [
    'ProcedureConfig',
    'Observation',
    'ObservationBatch',
    'StoppingResult',
    'TraceEntry',
    'EtaValue',
    'ValidationResult',
    'ObservationSource',
    'VarianceTracker',
    'validate_config',
    'optimal_sample_size',
    'theoretical_risk',
    'strict_floor',
    'final_sample_size',
    'RegressionFit',
    'fit_init',
    'fit_update',
    'fit_merge',
    'fit_solve',
    'loss_value',
    'loss_value_inverse_weighted',
    'chi2_sf',
    'positive_part_excess',
    'eta',
    'projected_overshoot',
    'FitVarianceTracker',
    'SequentialProcedure',
    'run_procedure',
    'run_procedure_traced'
]
