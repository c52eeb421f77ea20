"""Complexity and energy cost of sequential single-qubit phase estimation.

A phase is written onto a qubit probe by repeating an imperfect rotation
gate N times; estimating it to a target variance costs gates (photons)
and per-round external work. This package builds the two averaged noise
channels (random rotation axis, noisy driving field), propagates exact
Fisher-information series, turns them into integer round plans and energy
budgets, and exposes the thermodynamic corrections for state preparation
and measurement. The command-line entry point (qpecost) emits the
figure-ready datasets.
"""

from .bloch import (BlochMap, BlochVector, DensityMatrix, Povm, apply,
                    bloch_from_density, cfi, density_from_bloch, qfi_bloch,
                    qfi_sld_oracle, rodrigues, sld_povm)
from .channels import (ChannelWithDerivative, FieldIntegrals, FieldParams,
                       VmfParams, delta_of_g, field_channel, field_integrals,
                       lambdas_of_map, mc_channel_oracle, optimal_squeezing,
                       vmf_channel, vmf_lambda_perp_derivative, vmf_lambdas)
from .config import ExperimentConfig, GridSpec, SweepSpec, validate_config
from .errors import (ConfigError, DomainError, Error,
                     NonInformativeMeasurementError, NumericError,
                     SingularOutcomeError, StructuralError,
                     UnattainableTargetError)
from .fisher import (CorrectionSpec, QfiSeries, apply_corrections,
                     correction_factor, default_n_max,
                     prep_corrected_series_exact, sequence_qfi,
                     sequence_qfi_approx_field, sequence_qfi_approx_vmf)
from .protocol import (ResourceBreakdown, RoundPlan, SweetSpot, Target,
                       approx_resource_with_cooling, optimal_resource,
                       plan_round, raw_complexity, reps_needed,
                       resource_of_plan, sweet_spot, true_complexity)
from .quadrature import adaptive_quad
from .thermo import (CoolingSpec, ThermalEnv, cooled_temperature,
                     exact_pointer_cost, measurement_cost_bound,
                     measurement_epsilon, purity_gamma, state_prep_cost,
                     work_per_qubit)

__version__ = "0.1.0"
