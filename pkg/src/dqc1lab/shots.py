"""Finite-shot simulation of the clean-qubit trace-estimation readout.

Each shot is a ±1 Bernoulli outcome with p(+1) = (1 + <obs>)/2, where the
exact expectation is (alpha / 2^n) Re Tr(W) for sigma_x and the imaginary
part for sigma_y; W is U for a single controlled application and U^2 for
the back-to-back circuit.  Only projection noise is modeled - no
decoherence, no readout error.  A noiseless hook returns the exact
ensemble limit so the estimator chain can be tested against the closed
form with zero tolerance.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ParameterError, PrecisionWarning
from .geometric import gqd_max
from .linalg import UnitaryOperator

OBSERVABLES = ("sx", "sy")
CIRCUITS = ("u", "u2")


@dataclass(frozen=True)
class ShotEstimate:
    mean: float
    std_error: float
    shots: int
    observable: str
    circuit: str

    def to_dict(self) -> dict:
        return asdict(self)


def _exact_expectation(u: UnitaryOperator, alpha: float, observable: str, circuit: str) -> float:
    if observable not in OBSERVABLES:
        raise ParameterError(f"observable must be one of {OBSERVABLES}")
    if circuit not in CIRCUITS:
        raise ParameterError(f"circuit must be one of {CIRCUITS}")
    m = u.matrix
    tr = np.trace(m) if circuit == "u" else np.sum(m * m.T)
    scaled = alpha / u.dim * tr
    return float(scaled.real if observable == "sx" else scaled.imag)


def simulate_readout(
    u: UnitaryOperator,
    alpha: float,
    observable: str,
    circuit: str,
    shots: int,
    seed: int,
) -> ShotEstimate:
    """Sample mean and standard error of the ±1 readout."""
    if shots < 1:
        raise ParameterError("shots must be positive")
    if not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"alpha = {alpha} outside [0, 1]")
    expect = _exact_expectation(u, alpha, observable, circuit)
    p_plus = (1.0 + expect) / 2.0
    # distinct stream per (observable, circuit) so paired readouts with the
    # same seed are still independent
    key = (OBSERVABLES.index(observable), CIRCUITS.index(circuit))
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=int(seed), spawn_key=key))
    )
    n_plus = int(rng.binomial(shots, min(max(p_plus, 0.0), 1.0)))
    mean = (2 * n_plus - shots) / shots
    if shots > 1:
        sample_var = shots * (1.0 - mean * mean) / (shots - 1)
    else:
        sample_var = 0.0
    return ShotEstimate(
        mean=float(mean),
        std_error=float(math.sqrt(max(sample_var, 0.0) / shots)),
        shots=shots,
        observable=observable,
        circuit=circuit,
    )


@dataclass(frozen=True)
class GqdShotReport:
    """Geometric-discord estimate propagated from two back-to-back readouts."""

    n: int
    alpha: float
    tau2_hat: float
    tau2_sigma: float
    gqd_hat: float
    gqd_sigma: float
    shots_per_observable: int
    bias_flag: bool
    precision_warning: bool

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def estimate_gqd_from_shots(
    u: UnitaryOperator,
    alpha: float,
    shots_per_observable: int,
    seed: int,
    noiseless: bool = False,
) -> GqdShotReport:
    """Estimate tau2 = |Tr(U^2)|/2^n from sigma_x/sigma_y readouts of the
    doubled circuit and propagate (first order) to the discord estimate.

    The bias flag marks estimates where sqrt(x^2 + y^2) is unreliable:
    either readout below 3 standard errors, or the tau2 interval crossing
    its [0, 1] range.
    """
    if not noiseless and shots_per_observable < 100:
        raise ParameterError("need at least 100 shots per observable")
    if alpha <= 0.0:
        raise ParameterError("alpha must be positive to invert the readout scale")
    if noiseless:
        x = _exact_expectation(u, alpha, "sx", "u2")
        y = _exact_expectation(u, alpha, "sy", "u2")
        sx_err = sy_err = 0.0
    else:
        est_x = simulate_readout(u, alpha, "sx", "u2", shots_per_observable, seed)
        est_y = simulate_readout(u, alpha, "sy", "u2", shots_per_observable, seed)
        x, sx_err = est_x.mean, est_x.std_error
        y, sy_err = est_y.mean, est_y.std_error
    r = math.hypot(x, y)
    tau2_hat = r / alpha
    if r > 0.0:
        tau2_sigma = math.sqrt((x * sx_err) ** 2 + (y * sy_err) ** 2) / (alpha * r)
    else:
        tau2_sigma = math.hypot(sx_err, sy_err) / alpha
    scale = gqd_max(u.n_qubits, alpha)
    low_signal = any(
        err > 0.0 and abs(m) / err < 3.0 for m, err in ((x, sx_err), (y, sy_err))
    )
    bias_flag = low_signal or tau2_hat - tau2_sigma < 0.0 or tau2_hat + tau2_sigma > 1.0
    precision = tau2_sigma > 1.0
    if precision:
        warnings.warn(
            f"propagated sigma(tau2) = {tau2_sigma:.3g} > 1; "
            f"alpha = {alpha:g} is too small for {shots_per_observable} shots",
            PrecisionWarning,
            stacklevel=2,
        )
    return GqdShotReport(
        n=u.n_qubits,
        alpha=alpha,
        tau2_hat=tau2_hat,
        tau2_sigma=tau2_sigma,
        gqd_hat=scale * (1.0 - tau2_hat),
        gqd_sigma=scale * tau2_sigma,
        shots_per_observable=int(shots_per_observable),
        bias_flag=bool(bias_flag),
        precision_warning=bool(precision),
    )
