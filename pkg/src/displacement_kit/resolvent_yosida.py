"""Resolvents and Yosida approximations of the displacement mapping and its inverse.

All closed forms are convex/affine combinations of powers of R.  Coefficients
are computed in the q = gamma/(1+gamma) parametrization: q^k stays in (0, 1)
for every gamma, and the denominator 1 - q^m is evaluated through
expm1/log1p so nothing overflows or cancels even for extreme gamma.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError, ValidationError
from .displacement_calculus import PolynomialOperator, projector_fix
from .isometry_core import FiniteOrderIsometry, as_vector, _check_order


def _check_gamma(gamma) -> float:
    try:
        g = float(gamma)
    except (TypeError, ValueError):
        raise ParameterError(f"gamma must be a positive real number, got {gamma!r}") from None
    if not math.isfinite(g) or g <= 0.0:
        raise ParameterError(f"gamma must be a positive finite real, got {gamma!r}")
    return g


def resolvent_coefficients(m: int, gamma: float) -> np.ndarray:
    """Coefficients of the resolvent of gamma*(Id - R) over (Id, R, ..., R^{m-1}).

    c_k = q^k (1-q) / (1 - q^m) with q = gamma/(1+gamma); all coefficients are
    positive and sum to 1, so the resolvent is a convex combination of the
    powers of R.
    """
    m = _check_order(m)
    g = _check_gamma(gamma)
    q = g / (1.0 + g)
    head = 1.0 / (1.0 + g)  # 1 - q without cancellation
    # 1 - q^m = -expm1(m*log(q)); log(q) = -log1p(1/gamma) avoids q ~ 1 rounding
    tail = -math.expm1(-m * math.log1p(1.0 / g))
    return np.power(q, np.arange(m)) * (head / tail)


def resolvent(R: FiniteOrderIsometry, gamma: float) -> PolynomialOperator:
    """The resolvent of gamma*(Id - R) as a polynomial operator."""
    return PolynomialOperator(R, resolvent_coefficients(R.order, gamma))


def resolvent_apply(R: FiniteOrderIsometry, gamma: float, x) -> np.ndarray:
    """Apply the resolvent of gamma*(Id - R) to x."""
    return resolvent(R, gamma).apply(x)


def resolvent_inverse(R: FiniteOrderIsometry, gamma: float) -> PolynomialOperator:
    """Resolvent of gamma*(Id - R)^{-1}, namely Id minus the resolvent at 1/gamma."""
    g = _check_gamma(gamma)
    c = -resolvent_coefficients(R.order, 1.0 / g)
    c[0] += 1.0
    return PolynomialOperator(R, c)


def resolvent_inverse_apply(R: FiniteOrderIsometry, gamma: float, x) -> np.ndarray:
    """Apply the resolvent of gamma*(Id - R)^{-1}: x minus the resolvent at 1/gamma.

    Computed literally as x - resolvent_apply(R, 1/gamma, x), so the identity
    resolvent_inverse_apply + resolvent_apply(.., 1/gamma, ..) = Id holds
    exactly in floating point.
    """
    g = _check_gamma(gamma)
    v = as_vector(x, R.dim)
    return v - resolvent(R, 1.0 / g).apply(v)


def yosida(R: FiniteOrderIsometry, gamma: float) -> PolynomialOperator:
    """Yosida approximation of Id - R with index gamma: (Id - resolvent)/gamma."""
    g = _check_gamma(gamma)
    c = -resolvent_coefficients(R.order, g)
    c[0] += 1.0
    return PolynomialOperator(R, c / g)


def yosida_apply(R: FiniteOrderIsometry, gamma: float, x) -> np.ndarray:
    """Apply the Yosida approximation of Id - R: (x - resolvent x)/gamma."""
    g = _check_gamma(gamma)
    v = as_vector(x, R.dim)
    return (v - resolvent(R, g).apply(v)) / g


def yosida_inverse(R: FiniteOrderIsometry, gamma: float) -> PolynomialOperator:
    """Yosida approximation of (Id - R)^{-1}: the resolvent at 1/gamma, divided by gamma.

    Its coefficients equal (1+gamma)^{m-1-k} / ((1+gamma)^m - 1) and sum to
    1/gamma.
    """
    g = _check_gamma(gamma)
    return PolynomialOperator(R, resolvent_coefficients(R.order, 1.0 / g) / g)


def yosida_inverse_apply(R: FiniteOrderIsometry, gamma: float, x) -> np.ndarray:
    """Apply the Yosida approximation of (Id - R)^{-1} to x."""
    g = _check_gamma(gamma)
    return resolvent(R, 1.0 / g).apply(as_vector(x, R.dim)) / g


#: operator-norm slack allowed when certifying a dense series input as nonexpansive
NONEXPANSIVE_TOL = 1e-8


def series_resolvent_apply(S, gamma: float, x, eps: float) -> np.ndarray:
    """Resolvent of gamma*(Id - S) for any nonexpansive linear S, by truncated series.

    Sums sum_{k<=K} q^k (1-q) S^k x with q = gamma/(1+gamma) and
    K = ceil(log eps / log q), so the geometric tail bounds the truncation
    error by eps * ||x||.  S may be a FiniteOrderIsometry or a square matrix;
    matrices are certified nonexpansive (spectral norm <= 1 + 1e-8) first.
    """
    g = _check_gamma(gamma)
    if not (isinstance(eps, (int, float)) and math.isfinite(eps) and eps > 0):
        raise ParameterError(f"eps must be a positive finite real, got {eps!r}")
    if isinstance(S, FiniteOrderIsometry):
        apply_s = S.apply
        dim = S.dim
    else:
        A = np.asarray(S, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ParameterError(f"series operator must be square, got shape {A.shape}")
        norm_estimate = float(np.linalg.norm(A, 2))
        if norm_estimate > 1.0 + NONEXPANSIVE_TOL:
            raise ValidationError(
                f"operator is not nonexpansive: spectral norm estimate {norm_estimate:.6f} "
                f"exceeds 1 + {NONEXPANSIVE_TOL:.1e}"
            )
        apply_s = lambda v: A @ v
        dim = A.shape[0]
    v = as_vector(x, dim)

    q = g / (1.0 + g)
    terms = max(0, math.ceil(math.log(eps) / math.log(q)))
    weight = 1.0 / (1.0 + g)  # q^k * (1 - q) as the loop advances
    total = weight * v
    power = v
    for _ in range(terms):
        power = apply_s(power)
        weight *= q
        total += weight * power
    return total


def asymptotic_limit(R: FiniteOrderIsometry, which: str) -> PolynomialOperator:
    """Pointwise limit of the resolvent of gamma*(Id - R).

    ``which="zero"`` gives the identity (gamma -> 0+); ``which="infinity"``
    gives the projector onto Fix R (gamma -> +inf).
    """
    if which == "zero":
        return PolynomialOperator.identity(R)
    if which == "infinity":
        return projector_fix(R)
    raise ParameterError(f'which must be "zero" or "infinity", got {which!r}')
