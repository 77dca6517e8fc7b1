"""Numerical laboratory for quantum discord in one-clean-qubit states."""

from .dqc1 import (
    DQC1State,
    MeasurementBasis,
    apply_measurement_channel,
    build_dqc1_state,
    dqc1_expectations,
    measurement_projectors,
    wrap_phi,
)
from .entropic import (
    QdReport,
    conditional_entropy,
    discord_bruteforce,
    f_conditional_2q,
    qd2_closed_form,
    qd2_optimal_basis,
    qd2_report,
    tau1,
)
from .errors import (
    ContractViolationError,
    DimensionError,
    Dqc1LabError,
    InvalidStateError,
    NumericError,
    ParameterError,
    PrecisionWarning,
)
from .gates import (
    hadamard_unitary,
    identity_unitary,
    jones_unitary,
    pauli_unitary,
    reflection_unitary,
    rotation_unitary,
)
from .geometric import (
    GqdReport,
    LandscapeGrid,
    g_gradient,
    g_landscape,
    gqd_bruteforce,
    gqd_closed_form,
    gqd_max,
    gqd_report,
    landscape_grid,
    optimal_phi0,
    tau2,
)
from .haar import (
    EnsembleStats,
    gqd_decay_slope,
    sample_haar_unitary,
    study_to_csv,
    study_to_json,
    typicality_study,
)
from .linalg import (
    DensityMatrix,
    UnitaryOperator,
    eig_hermitian,
    eigenphases,
    hs_norm_sq,
    matrix_from_json,
    matrix_to_json,
    partial_trace,
    tensor_product,
    von_neumann_entropy,
)
from .shots import GqdShotReport, ShotEstimate, estimate_gqd_from_shots, simulate_readout

__version__ = "0.1.0"
