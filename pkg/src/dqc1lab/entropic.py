"""Entropic quantum discord for states with a qubit probe subsystem.

The general route is brute force: minimize the measured conditional entropy
sum_k p_k H(rho_B|k) over the projective measurements of the first qubit and
assemble H(rho_A) - H(rho) + min(...).  For two-qubit DQC1 states there is
also a closed form in tau1 = |Tr(U)| / 2, kept as the second route of a
mutual-oracle pair with the brute force.

tau1 normalization: with |Tr U| scaled by 1/2 the closed form vanishes
exactly at |Tr U|^2 = 0 and 4 and tracks the brute-force minimizer to
<= 1e-6; a 1/4 scaling does neither (see the test suite), so 1/2 it is.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .dqc1 import (
    MeasurementBasis,
    basis_params,
    build_dqc1_state,
    wrap_phi,
)
from .errors import DimensionError, ParameterError
from .gridmin import GridMinResult, axes, grid_minimize
from .linalg import (
    DensityMatrix,
    UnitaryOperator,
    eigenphases,
    partial_trace,
    von_neumann_entropy,
    xlog2x,
)

TAU1_NORMALIZATION = "abs_trace_over_2"

_PROB_FLOOR = 1e-14


def binary_entropy(p: float) -> float:
    """H2(p) in bits with the 0*log(0) = 0 convention."""
    return float(-xlog2x(np.array([p, 1.0 - p])).sum())


class _ConditionalEntropy:
    """Batched sum_k p_k H(rho_B|k) for a fixed qubit (x) d state."""

    def __init__(self, rho: np.ndarray):
        d = rho.shape[0] // 2
        self.blocks = np.stack(
            [rho[:d, :d], rho[:d, d:], rho[d:, :d], rho[d:, d:]]
        )

    def _conditional_blocks(self, a, phi):
        """Unnormalized post-measurement B states, shape (..., 2, d, d)."""
        a = np.asarray(a, dtype=float)
        b = np.sqrt(np.clip(1.0 - a * a, 0.0, None))
        e = np.exp(1j * np.asarray(phi, dtype=float))
        ab = a * b
        coeff = np.stack(
            [
                np.stack([a * a, ab * e, ab * e.conj(), b * b], axis=-1),
                np.stack([b * b, -ab * e, -ab * e.conj(), a * a], axis=-1),
            ],
            axis=-2,
        )
        return np.einsum("...ki,iab->...kab", coeff, self.blocks)

    def value(self, a, phi):
        m = self._conditional_blocks(a, phi)
        lam = np.clip(np.linalg.eigvalsh(m), 0.0, None)
        p = lam.sum(axis=-1)
        # p_k H(rho_B|k) = -sum_i lam_i log2 lam_i + p_k log2 p_k, safe as p_k -> 0
        terms = -xlog2x(lam).sum(axis=-1) + xlog2x(p)
        terms = np.where(p > _PROB_FLOOR, terms, 0.0)
        return terms.sum(axis=-1)


def conditional_entropy(rho: DensityMatrix, basis) -> float:
    """Measured conditional entropy of the d-dimensional rest, in bits."""
    if rho.dim % 2 != 0 or rho.dim < 2:
        raise DimensionError("first subsystem must be a qubit")
    a, phi = basis_params(basis)
    return float(_ConditionalEntropy(rho.matrix).value(a, phi))


def f_conditional_2q(u: UnitaryOperator, alpha: float, basis) -> float:
    """Two-qubit DQC1 conditional entropy from the eigenphases alone.

    With x_j = (alpha/2) a sqrt(1-a^2) cos(phi - theta_j) and
    p± = 1/2 ± sum_j x_j, the post-measurement spectra are
    {(1/4 ± x_j)/p±}, giving

        f = sum_j [eta(1/4 + x_j) + eta(1/4 - x_j)] - eta(p+) - eta(p-)

    where eta(t) = -t log2 t.  This grouping is finite for every basis,
    including the p± -> 0 corners.
    """
    if u.n_qubits != 1:
        raise DimensionError("defined for single-qubit unitaries only")
    if not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"alpha = {alpha} outside [0, 1]")
    a, phi = basis_params(basis)
    theta = eigenphases(u)
    b = math.sqrt(max(0.0, 1.0 - a * a))
    x = 0.5 * alpha * a * b * np.cos(phi - theta)
    p_plus = 0.5 + x.sum()
    p_minus = 0.5 - x.sum()
    eta_sum = -xlog2x(np.concatenate([0.25 + x, 0.25 - x])).sum()
    return float(eta_sum + xlog2x(np.array([p_plus, p_minus])).sum())


def tau1(u: UnitaryOperator) -> float:
    """Normalized trace |Tr(U)| / 2^n."""
    return float(abs(np.trace(u.matrix)) / u.dim)


def qd2_closed_form(u: UnitaryOperator, alpha: float) -> float:
    """Discord of the two-qubit DQC1 state, in bits.

    Evaluated in the grouped form

        H2((1 - alpha*tau1)/2) - H2((1 - alpha)/2) + H2((1 - beta)/2) - 1,

    beta = alpha*sqrt(1 - tau1^2), which equals the four-term expression

        H2((1-alpha*tau1)/2) - H2((1-alpha)/2) - (1/2) log2(1 - beta^2)
        - (beta/2) log2((1+beta)/(1-beta))

    on the interior and stays finite at beta = 1.
    """
    if u.n_qubits != 1:
        raise DimensionError("closed form covers the two-qubit case only")
    if not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"alpha = {alpha} outside [0, 1]")
    t1 = min(tau1(u), 1.0)
    beta = alpha * math.sqrt(max(0.0, 1.0 - t1 * t1))
    value = (
        binary_entropy((1.0 - alpha * t1) / 2.0)
        - binary_entropy((1.0 - alpha) / 2.0)
        + binary_entropy((1.0 - beta) / 2.0)
        - 1.0
    )
    return max(value, 0.0)


def qd2_optimal_basis(u: UnitaryOperator) -> MeasurementBasis:
    """Minimizing measurement: a = 1/sqrt(2), phi = pi/2 + mean eigenphase.

    phi is wrapped into [-pi/2, pi/2] by multiples of pi; the conditional
    entropy is pi-periodic in phi so the wrap is value-preserving.
    """
    if u.n_qubits != 1:
        raise DimensionError("defined for single-qubit unitaries only")
    theta = eigenphases(u)
    phi = np.pi / 2 + float(theta.sum()) / 2.0
    return MeasurementBasis(a=1.0 / math.sqrt(2.0), phi=wrap_phi(phi))


def discord_bruteforce(
    rho: DensityMatrix, grid_n: int = 256, refine: bool = True, chunk: int = 8192
) -> GridMinResult:
    """Entropic discord by direct minimization over the measurement grid."""
    if rho.dim % 2 != 0 or rho.dim < 2:
        raise DimensionError("first subsystem must be a qubit")
    d = rho.dim // 2
    h_total = von_neumann_entropy(rho)
    h_a = von_neumann_entropy(partial_trace(rho, (2, d), keep="A"))
    ev = _ConditionalEntropy(rho.matrix)
    a_axis, phi_axis = axes(grid_n)
    aa, pp = np.meshgrid(a_axis, phi_axis, indexing="ij")
    flat_a, flat_p = aa.ravel(), pp.ravel()
    values = np.empty(flat_a.size)
    for lo in range(0, flat_a.size, chunk):
        hi = lo + chunk
        values[lo:hi] = ev.value(flat_a[lo:hi], flat_p[lo:hi])
    best = grid_minimize(
        lambda a, phi: float(ev.value(a, phi)),
        values.reshape(aa.shape),
        a_axis,
        phi_axis,
        refine=refine,
    )
    return GridMinResult(h_a - h_total + best.value, best.a, best.phi)


@dataclass(frozen=True)
class QdReport:
    """Closed form vs brute force for a two-qubit DQC1 state."""

    alpha: float
    tau1: float
    qd_closed_form: float
    qd_bruteforce: float
    a_opt: float
    phi_opt: float
    residual: float
    tau1_normalization: str = TAU1_NORMALIZATION

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def qd2_report(u: UnitaryOperator, alpha: float, grid_n: int = 256) -> QdReport:
    state = build_dqc1_state(u, alpha)
    closed = qd2_closed_form(u, alpha)
    brute = discord_bruteforce(state.rho, grid_n=grid_n)
    brute_value = max(brute.value, 0.0)  # clamp the -1e-9-scale numerical floor
    return QdReport(
        alpha=alpha,
        tau1=tau1(u),
        qd_closed_form=closed,
        qd_bruteforce=brute_value,
        a_opt=brute.a,
        phi_opt=brute.phi,
        residual=abs(closed - brute_value),
    )
