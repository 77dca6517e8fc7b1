"""Builtin unitaries used by the CLI, the demos and the test suite."""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .linalg import UnitaryOperator

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


def identity_unitary(n: int) -> UnitaryOperator:
    return UnitaryOperator(n_qubits=n, matrix=np.eye(2**n, dtype=complex))


def pauli_unitary(which: str) -> UnitaryOperator:
    try:
        return UnitaryOperator(n_qubits=1, matrix=_PAULI[which.lower()])
    except KeyError:
        raise ParameterError(f"unknown Pauli axis {which!r}") from None


def hadamard_unitary() -> UnitaryOperator:
    return UnitaryOperator(n_qubits=1, matrix=HADAMARD)


def rotation_unitary(axis, angle: float, phase: float = 0.0) -> UnitaryOperator:
    """Single-qubit rotation exp(-i*angle/2 * r.sigma), times exp(i*phase).

    ``axis`` is a 3-vector (normalized here) or one of "x", "y", "z".
    """
    if isinstance(axis, str):
        try:
            r = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[axis.lower()]
        except KeyError:
            raise ParameterError(f"unknown rotation axis {axis!r}") from None
    else:
        r = np.asarray(axis, dtype=float)
        norm = np.linalg.norm(r)
        if norm == 0 or r.shape != (3,):
            raise ParameterError("rotation axis must be a nonzero 3-vector")
        r = r / norm
    rs = r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z
    m = np.cos(angle / 2) * I2 - 1j * np.sin(angle / 2) * rs
    return UnitaryOperator(n_qubits=1, matrix=np.exp(1j * phase) * m)


def reflection_unitary(vector) -> UnitaryOperator:
    """Householder reflection I - 2|v><v|, a binary observable for any |v>."""
    v = np.asarray(vector, dtype=complex)
    v = v / np.linalg.norm(v)
    d = v.shape[0]
    n = int(round(np.log2(d)))
    if 2**n != d:
        raise ParameterError("vector length must be a power of two")
    return UnitaryOperator(n_qubits=n, matrix=np.eye(d) - 2 * np.outer(v, v.conj()))


def jones_unitary() -> UnitaryOperator:
    """The 3-qubit diagonal unitary diag(c, c, d, 1, c, d, 1, 1).

    c and d are the fourth and eighth powers of exp(-i*3*pi/5) (c with a
    sign flip), evaluated at run time rather than as decimal literals.
    """
    w = np.exp(-1j * 3 * np.pi / 5)
    c = -(w**4)
    d = w**8
    return UnitaryOperator(n_qubits=3, matrix=np.diag([c, c, d, 1, c, d, 1, 1]))
