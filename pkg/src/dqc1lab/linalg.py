"""Dense complex linear algebra for qubit registers.

Everything here works on plain ``numpy`` complex arrays; the two wrapper
types :class:`UnitaryOperator` and :class:`DensityMatrix` certify their
defining invariants once, at construction, and are immutable afterwards.
All entropies are in bits (log base 2).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .errors import (
    ContractViolationError,
    DimensionError,
    InvalidStateError,
    NumericError,
    ParameterError,
)

# Dense-only backend; anything larger than this is a configuration mistake.
MAX_DENSE_DIM = 2**12

UNITARITY_ATOL = 1e-10
HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


def as_complex_matrix(entries) -> np.ndarray:
    """Coerce to a C-contiguous complex128 matrix and check finiteness."""
    m = np.ascontiguousarray(entries, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.view(float))):
        raise ParameterError("matrix contains NaN or Inf entries")
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    out = m.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class UnitaryOperator:
    """A 2^n x 2^n unitary, certified at construction.

    The certificate is max-norm: ``max|U^dag U - I| <= 1e-10``.
    """

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 0:
            raise ParameterError("n_qubits must be non-negative")
        m = as_complex_matrix(self.matrix)
        d = 2**self.n_qubits
        if m.shape != (d, d):
            raise DimensionError(
                f"matrix shape {m.shape} does not match 2^{self.n_qubits}"
            )
        defect = np.max(np.abs(m.conj().T @ m - np.eye(d)))
        if defect > UNITARITY_ATOL:
            raise ContractViolationError(
                f"unitarity defect max|U^dag U - I| = {defect:.3e} > {UNITARITY_ATOL:g}"
            )
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def from_matrix(cls, matrix) -> "UnitaryOperator":
        m = as_complex_matrix(matrix)
        d = m.shape[0]
        n = int(round(math.log2(d))) if d > 0 else 0
        if m.shape[0] != m.shape[1] or 2**n != d:
            raise DimensionError(f"matrix shape {m.shape} is not 2^n x 2^n")
        return cls(n_qubits=n, matrix=m)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


@dataclass(frozen=True)
class DensityMatrix:
    """A valid quantum state: Hermitian, unit trace, positive semidefinite."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        if m.shape != (self.dim, self.dim):
            raise DimensionError(f"matrix shape {m.shape} does not match dim={self.dim}")
        herm_defect = np.max(np.abs(m - m.conj().T)) if self.dim else 0.0
        if herm_defect > HERMITICITY_ATOL:
            raise InvalidStateError(f"Hermiticity defect {herm_defect:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise InvalidStateError(f"trace {tr} differs from 1 beyond {TRACE_ATOL:g}")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < EIGENVALUE_FLOOR:
            raise InvalidStateError(f"smallest eigenvalue {lo:.3e} < {EIGENVALUE_FLOOR:g}")
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def from_matrix(cls, matrix) -> "DensityMatrix":
        m = as_complex_matrix(matrix)
        return cls(dim=m.shape[0], matrix=m)


def tensor_product(a, b, max_dim: int = MAX_DENSE_DIM) -> np.ndarray:
    """Kronecker product with a guard on the resulting dense dimension."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > max_dim:
        raise DimensionError(f"product dimension {rows}x{cols} exceeds max {max_dim}")
    return np.kron(a, b)


def _partial_trace_raw(m: np.ndarray, d_a: int, d_b: int, keep: str) -> np.ndarray:
    """Partial trace of a (d_a*d_b)-dim matrix over the discarded factor."""
    t = m.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ikjk->ij", t)
    if keep == "B":
        return np.einsum("kikj->ij", t)
    raise ParameterError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_trace(rho: DensityMatrix, dims, keep: str) -> DensityMatrix:
    """Reduced state of subsystem ``keep`` for a bipartite ``rho``."""
    d_a, d_b = int(dims[0]), int(dims[1])
    if d_a * d_b != rho.dim:
        raise DimensionError(f"dims {d_a}x{d_b} do not factor dim {rho.dim}")
    reduced = _partial_trace_raw(rho.matrix, d_a, d_b, keep)
    return DensityMatrix.from_matrix(reduced)


def eig_hermitian(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix."""
    m = as_complex_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise DimensionError("matrix must be square")
    defect = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if defect > HERMITICITY_ATOL:
        raise ContractViolationError(f"Hermiticity defect {defect:.3e}")
    w, v = np.linalg.eigh(m)
    return w, v


def eigenphases(u: UnitaryOperator) -> np.ndarray:
    """Phases theta_j in (-pi, pi] of the unitary's eigenvalues, ascending.

    Computed from the complex Schur form, which is diagonal for normal
    matrices; this is backward-stable for unitaries of any spectrum.
    """
    try:
        t, _ = schur(np.asarray(u.matrix), output="complex")
    except Exception as exc:  # pragma: no cover - LAPACK failures are exotic
        raise NumericError(f"Schur decomposition failed: {exc}") from exc
    phases = np.angle(np.diag(t))
    # np.angle returns values in [-pi, pi]; fold the closed lower end.
    phases = np.where(phases <= -np.pi, np.pi, phases)
    return np.sort(phases)


def _clamped_spectrum(rho: DensityMatrix) -> np.ndarray:
    ev = np.linalg.eigvalsh(np.asarray(rho.matrix))
    if ev[0] < EIGENVALUE_FLOOR:
        raise InvalidStateError(f"eigenvalue {ev[0]:.3e} below {EIGENVALUE_FLOOR:g}")
    return np.clip(ev, 0.0, None)


def xlog2x(values: np.ndarray) -> np.ndarray:
    """x*log2(x) with the continuous extension 0*log(0) = 0."""
    v = np.asarray(values, dtype=float)
    out = np.zeros_like(v)
    pos = v > 0.0
    out[pos] = v[pos] * np.log2(v[pos])
    return out


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy -sum(lambda log2 lambda) in bits, in [0, log2 dim]."""
    ev = _clamped_spectrum(rho)
    return float(-np.sum(xlog2x(ev)))


def hs_norm_sq(a) -> float:
    """Squared Hilbert-Schmidt norm Tr(A^dag A) = sum |a_ij|^2."""
    m = as_complex_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError("matrix must be square")
    return float(np.sum(np.abs(m) ** 2))


# --- matrix interchange format -------------------------------------------
#
# {"dim": d, "entries": [[re, im], ...]} in row-major order.  Python's json
# module serializes doubles with shortest round-trip repr, so write/read is
# bit-exact for finite values.


def matrix_to_json(m) -> str:
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError("interchange format holds square matrices only")
    entries = [[float(z.real), float(z.imag)] for z in m.ravel()]
    return json.dumps({"dim": int(m.shape[0]), "entries": entries})


def matrix_from_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
        d = int(obj["dim"])
        entries = obj["entries"]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed matrix JSON: {exc}") from exc
    if d < 0 or len(entries) != d * d:
        raise DimensionError(f"entry count {len(entries)} does not match dim {d}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
    return as_complex_matrix(flat.reshape(d, d))
