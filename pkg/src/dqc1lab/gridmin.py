"""Deterministic minimization over the measurement-parameter rectangle.

Strategy: a uniform grid over (a, phi) in [0, 1] x [-pi/2, pi/2] followed by
a damped Newton polish from the best grid point, with gradient and Hessian
estimated by central differences.  The objectives handled here are smooth
and pi-periodic in phi, so the polish may wander past the phi edges and the
result is wrapped back into the domain.  No randomness anywhere.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .dqc1 import PHI_MAX, PHI_MIN, wrap_phi


class GridMinResult(NamedTuple):
    value: float
    a: float
    phi: float


def axes(grid_n: int) -> tuple[np.ndarray, np.ndarray]:
    """Default evaluation axes: a-major row-major grids use these."""
    return np.linspace(0.0, 1.0, grid_n), np.linspace(PHI_MIN, PHI_MAX, grid_n)


def central_gradient(fn: Callable[[float, float], float], a: float, phi: float,
                     step: float = 1e-4) -> tuple[float, float]:
    """Two-sided finite-difference gradient of fn at (a, phi)."""
    da = (fn(a + step, phi) - fn(a - step, phi)) / (2 * step)
    dphi = (fn(a, phi + step) - fn(a, phi - step)) / (2 * step)
    return da, dphi


def _fd_model(fn, a, phi, h):
    """Gradient and Hessian estimates from a 9-point central stencil."""
    f0 = fn(a, phi)
    fpa, fma = fn(a + h, phi), fn(a - h, phi)
    fpp, fmp = fn(a, phi + h), fn(a, phi - h)
    grad = np.array([(fpa - fma) / (2 * h), (fpp - fmp) / (2 * h)])
    haa = (fpa - 2 * f0 + fma) / h**2
    hpp = (fpp - 2 * f0 + fmp) / h**2
    hap = (
        fn(a + h, phi + h) - fn(a + h, phi - h) - fn(a - h, phi + h) + fn(a - h, phi - h)
    ) / (4 * h**2)
    return f0, grad, np.array([[haa, hap], [hap, hpp]])


def refine_newton(
    fn: Callable[[float, float], float],
    a: float,
    phi: float,
    step: float = 1e-4,
    max_iter: int = 30,
) -> GridMinResult:
    """Damped Newton iterations from (a, phi); keeps a inside [0, 1].

    Falls back to pure gradient steps when the Hessian solve is singular
    or fails to produce a decrease; stops once steps shrink below 1e-12.
    """
    best_v = fn(a, phi)
    best = (best_v, a, phi)
    x = np.array([a, phi])
    for _ in range(max_iter):
        h = step
        # keep the a-stencil inside [0, 1]
        if x[0] < h or x[0] > 1 - h:
            x[0] = min(max(x[0], h), 1 - h)
        f0, grad, hess = _fd_model(fn, x[0], x[1], h)
        try:
            delta = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            delta = -grad
        if not np.all(np.isfinite(delta)):
            break
        # the polish only refines within the grid cell's neighborhood
        norm = np.linalg.norm(delta)
        if norm > 0.1:
            delta *= 0.1 / norm
        moved = False
        scale = 1.0
        for _ in range(12):
            cand = x + scale * delta
            cand[0] = min(max(cand[0], 0.0), 1.0)
            v = fn(cand[0], cand[1])
            if v < f0:
                x = cand
                f0 = v
                moved = True
                break
            scale *= 0.5
        if f0 < best[0]:
            best = (f0, x[0], x[1])
        if not moved or np.linalg.norm(scale * delta) < 1e-12:
            break
    return GridMinResult(best[0], float(best[1]), float(wrap_phi(best[2])))


def grid_minimize(
    fn: Callable[[float, float], float],
    grid_values: np.ndarray,
    a_axis: np.ndarray,
    phi_axis: np.ndarray,
    refine: bool = True,
) -> GridMinResult:
    """Pick the first (lexicographically smallest) grid minimum, then polish.

    ``grid_values[i, j]`` must equal ``fn(a_axis[i], phi_axis[j])``; the
    caller usually fills it with a vectorized evaluator.  The returned value
    never exceeds the best grid value.
    """
    flat = int(np.argmin(grid_values))  # first occurrence = smallest (a, phi)
    i, j = np.unravel_index(flat, grid_values.shape)
    coarse = GridMinResult(float(grid_values[i, j]), float(a_axis[i]), float(phi_axis[j]))
    if not refine:
        return coarse
    polished = refine_newton(fn, coarse.a, coarse.phi)
    return polished if polished.value < coarse.value else coarse
