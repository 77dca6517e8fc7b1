"""Haar-random unitaries and the typicality of geometric discord.

Sampling is QR of a complex Ginibre matrix with the phase correction that
rescales Q by the phases of R's diagonal; without that correction the
distribution is *not* Haar (the test suite demonstrates the difference via
a translation-invariance test).  Randomness comes from numpy's PCG64
generator; per-sample streams are derived with SeedSequence spawn keys
(seed, n, sample_index), so results are independent of any batching.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ParameterError
from .geometric import gqd_closed_form, gqd_max, tau2
from .linalg import UnitaryOperator

RNG_ALGORITHM = "pcg64"

STUDY_CSV_HEADER = "n,samples,tau2_mean,tau2_std,gqd_over_max_mean,seed"


def _rng(seed) -> np.random.Generator:
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(int(seed))
    return np.random.Generator(np.random.PCG64(seed))


def sample_haar_unitary(n: int, seed) -> UnitaryOperator:
    """One Haar-distributed n-qubit unitary, reproducible from the seed."""
    if not 1 <= n <= 10:
        raise ParameterError(f"n = {n} outside [1, 10]")
    d = 2**n
    rng = _rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    q = q * (diag / np.abs(diag))
    return UnitaryOperator(n_qubits=n, matrix=q)


@dataclass(frozen=True)
class EnsembleStats:
    """Per-n summary of tau2 and normalized geometric discord."""

    n: int
    samples: int
    tau2_mean: float
    tau2_std: float
    gqd_over_max_mean: float
    seed: int
    rng: str = RNG_ALGORITHM
    tau2_samples: tuple[float, ...] | None = field(default=None, repr=False)

    def to_dict(self, per_sample: bool = False) -> dict:
        out = asdict(self)
        if not per_sample or self.tau2_samples is None:
            out.pop("tau2_samples")
        else:
            out["tau2_samples"] = list(self.tau2_samples)
        return out


def typicality_study(
    n_range,
    samples: int,
    alpha: float = 1.0,
    seed: int = 0,
    sampler=None,
    keep_samples: bool = False,
) -> list[EnsembleStats]:
    """tau2 and GQD statistics over Haar draws, per register size.

    ``sampler(n, seed_sequence)`` may be injected for testing; the default
    is :func:`sample_haar_unitary`.  GQD is always normalized by its
    maximum (alpha/2)^2 * 2^-n before averaging.
    """
    if samples < 30:
        raise ParameterError("need at least 30 samples per n")
    draw = sampler if sampler is not None else sample_haar_unitary
    results = []
    for n in n_range:
        taus = np.empty(samples)
        gqds = np.empty(samples)
        for i in range(samples):
            child = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(n), i))
            u = draw(n, child)
            taus[i] = tau2(u)
            gqds[i] = gqd_closed_form(u, alpha)
        results.append(
            EnsembleStats(
                n=int(n),
                samples=samples,
                tau2_mean=float(taus.mean()),
                tau2_std=float(taus.std(ddof=1)),
                gqd_over_max_mean=float((gqds / gqd_max(int(n), alpha)).mean()),
                seed=int(seed),
                tau2_samples=tuple(float(t) for t in taus) if keep_samples else None,
            )
        )
    return results


def gqd_decay_slope(stats: list[EnsembleStats]) -> float:
    """Least-squares slope of log2(mean GQD) against n.

    mean GQD = gqd_over_max_mean * (alpha/2)^2 * 2^-n, so the slope is
    independent of the (fixed) alpha used in the study.
    """
    ns = np.array([s.n for s in stats], dtype=float)
    y = np.array([np.log2(s.gqd_over_max_mean) - s.n for s in stats])
    return float(np.polyfit(ns, y, 1)[0])


def study_to_csv(stats: list[EnsembleStats]) -> str:
    lines = [STUDY_CSV_HEADER]
    for s in stats:
        lines.append(
            f"{s.n},{s.samples},{s.tau2_mean!r},{s.tau2_std!r},"
            f"{s.gqd_over_max_mean!r},{s.seed}"
        )
    return "\n".join(lines) + "\n"


def study_to_json(stats: list[EnsembleStats], per_sample: bool = False) -> str:
    return json.dumps([s.to_dict(per_sample=per_sample) for s in stats])
