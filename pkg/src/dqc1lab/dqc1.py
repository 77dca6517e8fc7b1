"""One-clean-qubit states and the parameterized top-qubit measurement.

The circuit output for polarization ``alpha`` and an n-qubit unitary U is
the (n+1)-qubit state

    rho = (1 / 2^(n+1)) [[ I,        alpha*U^dag ],
                         [ alpha*U,  I           ]]

with the clean qubit first.  Measurements on the clean qubit are projective,
onto |psi+> = a|0> + b e^{i phi}|1> and its orthogonal complement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ParameterError
from .linalg import (
    DensityMatrix,
    UnitaryOperator,
    matrix_from_json,
    matrix_to_json,
    tensor_product,
)

PHI_MIN = -np.pi / 2
PHI_MAX = np.pi / 2
_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective measurement direction on the clean qubit.

    a in [0, 1] and phi in [-pi/2, pi/2]; b = sqrt(1 - a^2) is derived.
    """

    a: float
    phi: float

    def __post_init__(self):
        if not -_DOMAIN_SLACK <= self.a <= 1 + _DOMAIN_SLACK:
            raise ParameterError(f"a = {self.a} outside [0, 1]")
        if not PHI_MIN - _DOMAIN_SLACK <= self.phi <= PHI_MAX + _DOMAIN_SLACK:
            raise ParameterError(f"phi = {self.phi} outside [-pi/2, pi/2]")
        object.__setattr__(self, "a", float(min(max(self.a, 0.0), 1.0)))
        object.__setattr__(self, "phi", float(self.phi))

    @property
    def b(self) -> float:
        return math.sqrt(1.0 - self.a * self.a)


def basis_params(basis) -> tuple[float, float]:
    """Accept a MeasurementBasis or a plain (a, phi) pair."""
    if isinstance(basis, MeasurementBasis):
        return basis.a, basis.phi
    a, phi = basis
    return float(a), float(phi)


def basis_vectors(a: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """The orthonormal pair (|psi+>, |psi->) for raw parameters.

    phi is unrestricted here; everything built from the pair is
    pi-periodic in phi, which finite-difference probes rely on.
    """
    b = math.sqrt(max(0.0, 1.0 - a * a))
    e = np.exp(1j * phi)
    return np.array([a, b * e]), np.array([b, -a * e])


def wrap_phi(phi: float) -> float:
    """Shift phi by multiples of pi into [-pi/2, pi/2]."""
    out = math.remainder(phi, math.pi)
    if out < PHI_MIN:  # remainder returns (-pi/2, pi/2] up to the sign of ties
        out += math.pi
    return out


@dataclass(frozen=True)
class DQC1State:
    """Immutable record of a constructed one-clean-qubit state."""

    n: int
    alpha: float
    u: UnitaryOperator
    rho: DensityMatrix

    @property
    def dim(self) -> int:
        return 2 ** (self.n + 1)

    def purity(self) -> float:
        return float(np.sum(np.abs(self.rho.matrix) ** 2))

    def blocks(self) -> tuple[np.ndarray, ...]:
        """The four 2^n x 2^n blocks of rho, indexed by the clean qubit."""
        d = 2**self.n
        m = self.rho.matrix
        return m[:d, :d], m[:d, d:], m[d:, :d], m[d:, d:]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "alpha": self.alpha,
                "unitary": json.loads(matrix_to_json(self.u.matrix)),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "DQC1State":
        obj = json.loads(text)
        u = UnitaryOperator.from_matrix(matrix_from_json(json.dumps(obj["unitary"])))
        return build_dqc1_state(u, float(obj["alpha"]))


def build_dqc1_state(u: UnitaryOperator, alpha: float) -> DQC1State:
    """Assemble the block-form output state of the DQC1 circuit."""
    if not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"polarization alpha = {alpha} outside [0, 1]")
    d = u.dim
    m = np.empty((2 * d, 2 * d), dtype=complex)
    m[:d, :d] = np.eye(d)
    m[:d, d:] = alpha * u.matrix.conj().T
    m[d:, :d] = alpha * u.matrix
    m[d:, d:] = np.eye(d)
    m /= 2 * d
    return DQC1State(n=u.n_qubits, alpha=float(alpha), u=u, rho=DensityMatrix.from_matrix(m))


def measurement_projectors(basis) -> tuple[np.ndarray, np.ndarray]:
    """Rank-1 projectors (P+, P-) onto the measurement pair."""
    a, phi = basis_params(basis)
    psi_p, psi_m = basis_vectors(a, phi)
    return np.outer(psi_p, psi_p.conj()), np.outer(psi_m, psi_m.conj())


def apply_measurement_channel(state: DQC1State, basis) -> DensityMatrix:
    """Dephase the clean qubit in the given basis: sum of projector sandwiches."""
    out = _channel_raw(state.rho.matrix, *basis_params(basis))
    return DensityMatrix.from_matrix(out)


def _channel_raw(rho: np.ndarray, a: float, phi: float) -> np.ndarray:
    d = rho.shape[0] // 2
    out = np.zeros_like(rho)
    for proj in measurement_projectors((a, phi)):
        sandwich = tensor_product(proj, np.eye(d))
        out += sandwich @ rho @ sandwich
    return out


def dqc1_expectations(state: DQC1State) -> tuple[float, float]:
    """Exact clean-qubit readout (<sigma_x ⊗ I>, <sigma_y ⊗ I>).

    Computed as matrix traces and cross-checked against the scaled
    trace of the unitary, (alpha / 2^n) * Tr(U).
    """
    d = 2**state.n
    rho = state.rho.matrix
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    ex = float(np.real(np.sum(rho * tensor_product(sx, np.eye(d)).T)))
    ey = float(np.real(np.sum(rho * tensor_product(sy, np.eye(d)).T)))
    scaled = state.alpha / d * np.trace(state.u.matrix)
    if abs(ex - scaled.real) > 1e-12 or abs(ey - scaled.imag) > 1e-12:
        raise NumericError(
            f"readout mismatch: matrix trace ({ex}, {ey}) vs scaled Tr U {scaled}"
        )
    return ex, ey
