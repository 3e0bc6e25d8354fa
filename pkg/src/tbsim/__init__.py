"""tbsim: high-gain twin-beam generation in nonlinear waveguides.

Solves the discretized spatial Heisenberg equations for parametric
down-conversion (delta = 1) and spontaneous four-wave mixing (delta = 2)
under an undepleted classical pump, verifies the SU(1,1) structure of the
resulting propagator, and extracts squeezing parameters, Schmidt modes, the
joint spectral amplitude, and the phase-sensitive moment matrix.
"""

__version__ = "1.0.0"

from .analytic import (
    LowGainConfig,
    first_order_propagator,
    kappa_optimal,
    lowgain_jsa,
    phase_matching_phi,
    symmetric_gvm_velocities,
)
from .config import RunConfig, RunResult, load_config, parse_config, run_simulation
from .coupling import (
    CouplingEstimate,
    GeneratorMatrices,
    GeneratorSampler,
    WaveguideSpec,
    assemble_F,
    assemble_G,
    assemble_H,
    assemble_Q,
    delta_k,
    estimate_gamma,
    su11_metric,
)
from .decompose import (
    TwinBeamDecomposition,
    TwinBeamObservables,
    aligned_relative_l2,
    jsa,
    kernel_schmidt_number,
    moment_matrix,
    observables,
    schmidt_decompose,
)
from .exceptions import ConfigurationError, DecompositionError, SolverError, TbsimError
from .grid import FrequencyGrid, make_grid, matrix_to_transfer, transfer_to_matrix
from .profiles import PiecewiseConstant
from .propagator import (
    Propagator,
    Su11Report,
    check_su11,
    dress_in_out,
    propagate_adaptive,
    propagate_trotter,
    propagate_uniform,
    read_matrix_dump,
    write_matrix_dump,
)
from .pump import PumpField, PumpSpec, gaussian_envelope
from .validate import CheckResult, example_config, run_checks

__all__ = [
    "__version__",
    "ConfigurationError",
    "DecompositionError",
    "SolverError",
    "TbsimError",
    "FrequencyGrid",
    "make_grid",
    "matrix_to_transfer",
    "transfer_to_matrix",
    "PiecewiseConstant",
    "PumpField",
    "PumpSpec",
    "gaussian_envelope",
    "WaveguideSpec",
    "GeneratorMatrices",
    "GeneratorSampler",
    "CouplingEstimate",
    "estimate_gamma",
    "assemble_F",
    "assemble_G",
    "assemble_H",
    "assemble_Q",
    "delta_k",
    "su11_metric",
    "Propagator",
    "Su11Report",
    "propagate_uniform",
    "propagate_trotter",
    "propagate_adaptive",
    "dress_in_out",
    "check_su11",
    "write_matrix_dump",
    "read_matrix_dump",
    "TwinBeamDecomposition",
    "TwinBeamObservables",
    "schmidt_decompose",
    "moment_matrix",
    "jsa",
    "observables",
    "kernel_schmidt_number",
    "aligned_relative_l2",
    "LowGainConfig",
    "lowgain_jsa",
    "phase_matching_phi",
    "first_order_propagator",
    "kappa_optimal",
    "symmetric_gvm_velocities",
    "RunConfig",
    "RunResult",
    "load_config",
    "parse_config",
    "run_simulation",
    "CheckResult",
    "run_checks",
    "example_config",
]
