"""Dynamics built on the closed forms: proximal-point iteration, ergodic means,
and empirical Lipschitz estimation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .dense_oracle import _as_apply, materialize
from .isometry_core import FiniteOrderIsometry, as_vector
from .resolvent_yosida import resolvent

#: power iteration budget and relative eigenvalue tolerance
POWER_ITERATION_MAX_STEPS = 10_000
POWER_ITERATION_REL_TOL = 1e-12


@dataclass(frozen=True)
class Trajectory:
    """Iterate history of a fixed-point iteration."""

    points: list
    residuals: list
    limit_estimate: np.ndarray
    converged: bool
    iterations_used: int

    def to_dict(self) -> dict:
        return {
            "points": [list(map(float, p)) for p in self.points],
            "residuals": [float(r) for r in self.residuals],
            "limit_estimate": list(map(float, self.limit_estimate)),
            "converged": self.converged,
            "iterations_used": self.iterations_used,
        }


def proximal_point(
    R: FiniteOrderIsometry,
    gamma: float,
    x0,
    max_iter: int = 10_000,
    stop_tol: float = 1e-12,
) -> Trajectory:
    """Iterate x_{k+1} = resolvent(gamma*(Id - R)) x_k until the step norm
    falls below stop_tol or max_iter is exhausted.

    The stopping rule is the step-size residual; for these firmly nonexpansive
    linear maps the iterates converge to the fixed-space projection of x0.
    """
    if not isinstance(max_iter, (int, np.integer)) or max_iter < 1:
        raise ParameterError(f"max_iter must be an integer >= 1, got {max_iter!r}")
    if not (isinstance(stop_tol, (int, float)) and math.isfinite(stop_tol) and stop_tol >= 0):
        raise ParameterError(f"stop_tol must be a nonnegative finite real, got {stop_tol!r}")
    J = resolvent(R, gamma)
    x = as_vector(x0, R.dim)
    points = [x]
    residuals: list = []
    converged = False
    for _ in range(int(max_iter)):
        x_next = J.apply(points[-1])
        step = float(np.linalg.norm(x_next - points[-1]))
        points.append(x_next)
        residuals.append(step)
        if step <= stop_tol:
            converged = True
            break
    return Trajectory(
        points=points,
        residuals=residuals,
        limit_estimate=points[-1],
        converged=converged,
        iterations_used=len(residuals),
    )


def ergodic_mean(R: FiniteOrderIsometry, x0, n: int) -> np.ndarray:
    """Cesaro average (1/n) * sum_{k=0}^{n-1} R^k x0.

    Whenever n is a multiple of the order this equals the fixed-space
    projection of x0 exactly; in general the deviation decays like O(m/n).
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ParameterError(f"n must be an integer >= 1, got {n!r}")
    x = as_vector(x0, R.dim)
    total = x.copy()
    power = x
    for _ in range(int(n) - 1):
        power = R.apply(power)
        total += power
    return total / float(n)


def _spectral_norm(A: np.ndarray, rng: np.random.Generator) -> float:
    """Largest singular value of A by power iteration on A^T A.

    Stops when the eigenpair residual ||Bv - lambda v|| falls below
    rel_tol * lambda; for the symmetric B = A^T A this bounds the eigenvalue
    error by the same amount, unlike a stop on Rayleigh-quotient increments.
    """
    n = A.shape[1]
    gram = A.T @ A
    v = rng.standard_normal(n)
    norm_v = float(np.linalg.norm(v))
    if norm_v == 0.0:
        v = np.ones(n)
        norm_v = math.sqrt(n)
    v /= norm_v
    eigenvalue = 0.0
    for _ in range(POWER_ITERATION_MAX_STEPS):
        w = gram @ v
        eigenvalue = float(v @ w)
        residual = float(np.linalg.norm(w - eigenvalue * v))
        norm_w = float(np.linalg.norm(w))
        if norm_w == 0.0:
            return 0.0
        v = w / norm_w
        if residual <= POWER_ITERATION_REL_TOL * max(abs(eigenvalue), 1e-30):
            break
    return math.sqrt(max(eigenvalue, 0.0))


def lipschitz_estimate(operator, dim: int | None = None, n_pairs: int = 100, seed: int = 0) -> float:
    """Lipschitz constant of a linear operator.

    Takes the max of ||F x - F y|| / ||x - y|| over seeded random pairs, then
    refines it with the spectral norm of the materialized matrix (the exact
    constant for linear maps), computed by power iteration.
    """
    if not isinstance(n_pairs, (int, np.integer)) or n_pairs < 1:
        raise ParameterError(f"n_pairs must be an integer >= 1, got {n_pairs!r}")
    func, n = _as_apply(operator, dim)
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(int(n_pairs)):
        x = rng.standard_normal(n)
        y = rng.standard_normal(n)
        gap = float(np.linalg.norm(x - y))
        if gap == 0.0:
            continue
        ratio = float(np.linalg.norm(np.asarray(func(x)) - np.asarray(func(y)))) / gap
        best = max(best, ratio)
    spectral = _spectral_norm(materialize(operator, dim), rng)
    return max(best, spectral)
