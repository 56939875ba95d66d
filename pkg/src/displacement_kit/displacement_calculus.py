"""Calculus of the displacement mapping M = Id - R of a finite-order isometry.

Every operator of interest (projector onto the fixed space, its skew
companion, the Moore-Penrose inverse of M, resolvents, ...) is a polynomial
in R, so the universal representation here is a coefficient vector
(c_0, ..., c_{m-1}) standing for sum_k c_k R^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ValidationError
from .isometry_core import FiniteOrderIsometry, as_vector

#: directions with norm below this are discarded when orthonormalizing a basis
BASIS_DROP_TOL = 1e-8
#: default relative threshold for the range-membership test of the set-valued inverse
RANGE_MEMBERSHIP_TOL = 1e-9

_ORTHONORMALITY_TOL = 1e-10


class PolynomialOperator:
    """A linear operator sum_{k=0}^{m-1} c_k R^k bound to a finite-order isometry R.

    Application costs m-1 applications of R (Horner accumulation); two
    operators over the same R add coefficientwise and compose by cyclic
    convolution of their coefficients, and any two of them commute.
    """

    __slots__ = ("operator", "coefficients")

    def __init__(self, operator: FiniteOrderIsometry, coefficients):
        coeffs = np.asarray(coefficients, dtype=float)
        if coeffs.shape != (operator.order,):
            raise ParameterError(
                f"expected {operator.order} coefficients, got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ParameterError("coefficients must all be finite")
        self.operator = operator
        self.coefficients = coeffs.copy()

    @property
    def order(self) -> int:
        return self.operator.order

    @property
    def dim(self) -> int:
        return self.operator.dim

    def __repr__(self) -> str:
        return f"PolynomialOperator(m={self.order}, coefficients={self.coefficients!r})"

    @classmethod
    def identity(cls, operator: FiniteOrderIsometry) -> "PolynomialOperator":
        c = np.zeros(operator.order)
        c[0] = 1.0
        return cls(operator, c)

    @classmethod
    def zero(cls, operator: FiniteOrderIsometry) -> "PolynomialOperator":
        return cls(operator, np.zeros(operator.order))

    def apply(self, x) -> np.ndarray:
        """Evaluate sum_k c_k R^k x via Horner: start from c_{m-1} x, apply R, add c_k x."""
        v = as_vector(x, self.dim)
        c = self.coefficients
        acc = c[-1] * v
        for k in range(self.order - 2, -1, -1):
            acc = self.operator.apply(acc)
            acc += c[k] * v
        return acc

    __call__ = apply

    def _check_same_operator(self, other: "PolynomialOperator") -> None:
        if not isinstance(other, PolynomialOperator):
            raise ParameterError(f"expected a PolynomialOperator, got {type(other).__name__}")
        if not self.operator.same_as(other.operator):
            raise ParameterError("operands are bound to different isometries")

    def compose(self, other: "PolynomialOperator") -> "PolynomialOperator":
        """Operator product; coefficients convolve cyclically mod m because R^m = Id."""
        self._check_same_operator(other)
        full = np.convolve(self.coefficients, other.coefficients)
        folded = full[: self.order].copy()
        folded[: self.order - 1] += full[self.order:]
        return PolynomialOperator(self.operator, folded)

    __matmul__ = compose

    def __add__(self, other: "PolynomialOperator") -> "PolynomialOperator":
        self._check_same_operator(other)
        return PolynomialOperator(self.operator, self.coefficients + other.coefficients)

    def __sub__(self, other: "PolynomialOperator") -> "PolynomialOperator":
        self._check_same_operator(other)
        return PolynomialOperator(self.operator, self.coefficients - other.coefficients)

    def __mul__(self, scalar) -> "PolynomialOperator":
        return PolynomialOperator(self.operator, self.coefficients * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "PolynomialOperator":
        return PolynomialOperator(self.operator, -self.coefficients)


@dataclass(frozen=True)
class AffineSubspace:
    """point + span(basis), the value of the set-valued inverse.

    ``point`` is the particular (minimum-norm least-squares) solution and
    ``basis`` an orthonormal list spanning the direction space.  The point is
    not required to be orthogonal to the basis.
    """

    point: np.ndarray
    basis: list = field(default_factory=list)

    def __post_init__(self):
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))
        object.__setattr__(self, "basis", [np.asarray(b, dtype=float) for b in self.basis])
        if self.point.ndim != 1:
            raise ParameterError("point must be a 1-d vector")
        n = self.point.shape[0]
        for b in self.basis:
            if b.shape != (n,):
                raise ParameterError("basis vectors must match the point's dimension")
        for i, b in enumerate(self.basis):
            for j, c in enumerate(self.basis):
                expected = 1.0 if i == j else 0.0
                if abs(float(b @ c) - expected) > _ORTHONORMALITY_TOL:
                    raise ValidationError(
                        f"basis is not orthonormal: |<b_{i}, b_{j}> - {expected:g}| "
                        f"exceeds {_ORTHONORMALITY_TOL:.1e}"
                    )

    @property
    def dim(self) -> int:
        return self.point.shape[0]

    @property
    def degrees_of_freedom(self) -> int:
        return len(self.basis)

    def element(self, weights) -> np.ndarray:
        """Return point + sum_i weights[i] * basis[i]."""
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(self.basis),):
            raise ParameterError(f"expected {len(self.basis)} weights, got shape {w.shape}")
        out = self.point.copy()
        for wi, b in zip(w, self.basis):
            out += wi * b
        return out


def displacement_apply(R: FiniteOrderIsometry, x) -> np.ndarray:
    """Apply the displacement mapping: x - Rx."""
    v = as_vector(x, R.dim)
    return v - R.apply(v)


def displacement(R: FiniteOrderIsometry) -> PolynomialOperator:
    """The displacement mapping Id - R as a polynomial operator."""
    c = np.zeros(R.order)
    c[0] = 1.0
    c[1] = -1.0
    return PolynomialOperator(R, c)


def projector_fix(R: FiniteOrderIsometry) -> PolynomialOperator:
    """Orthogonal projector onto Fix R = ker(Id - R): the average of all powers of R."""
    m = R.order
    return PolynomialOperator(R, np.full(m, 1.0 / m))


def projector_fix_complement(R: FiniteOrderIsometry) -> PolynomialOperator:
    """Orthogonal projector onto (Fix R)^perp, i.e. Id minus :func:`projector_fix`."""
    c = np.full(R.order, -1.0 / R.order)
    c[0] += 1.0
    return PolynomialOperator(R, c)


def skew_part(R: FiniteOrderIsometry) -> PolynomialOperator:
    """The skew companion operator with coefficients c_0 = 0, c_k = (m - 2k)/(2m).

    It is skew-adjoint, its range lies in (Fix R)^perp, and for m = 2 the
    single coefficient vanishes, giving the zero operator.
    """
    m = R.order
    c = np.zeros(m)
    for k in range(1, m):
        c[k] = (m - 2 * k) / (2 * m)
    return PolynomialOperator(R, c)


def skew_part_folded(R: FiniteOrderIsometry) -> PolynomialOperator:
    """Alternate half-range form of :func:`skew_part`, pairing R^k with R^{m-k}.

    Used as a cross-check; the two coefficient vectors agree exactly.
    """
    m = R.order
    c = np.zeros(m)
    for k in range(1, m // 2 + 1):
        w = (m - 2 * k) / (2 * m)
        c[k] += w
        c[(m - k) % m] -= w
    return PolynomialOperator(R, c)


def pseudo_inverse(R: FiniteOrderIsometry) -> PolynomialOperator:
    """Moore-Penrose inverse of the displacement Id - R: c_k = (m - 1 - 2k)/(2m)."""
    m = R.order
    c = np.array([(m - 1 - 2 * k) / (2 * m) for k in range(m)])
    return PolynomialOperator(R, c)


def orthonormal_columns(vectors, drop_tol: float = BASIS_DROP_TOL) -> list:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Directions whose residual norm falls below ``drop_tol`` are discarded, so
    the result is an orthonormal basis of the numerical span.
    """
    basis: list = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for _ in range(2):  # second sweep restores orthogonality lost to cancellation
            for u in basis:
                w -= (u @ w) * u
        nrm = float(np.linalg.norm(w))
        if nrm > drop_tol:
            basis.append(w / nrm)
    return basis


def fixed_space_basis(R: FiniteOrderIsometry) -> list:
    """Orthonormal basis of Fix R, extracted from the columns of the fixed-space projector."""
    P = projector_fix(R)
    n = R.dim
    eye = np.eye(n)
    return orthonormal_columns(P.apply(eye[j]) for j in range(n))


def set_valued_inverse(R: FiniteOrderIsometry, y, tol: float = RANGE_MEMBERSHIP_TOL):
    """Solve (Id - R) x = y in the set-valued sense.

    Returns the full solution set as an :class:`AffineSubspace` (particular
    point = the minimum-norm solution, directions = Fix R), or ``None`` when
    y is not in the range, detected by its fixed-space component exceeding
    ``tol * max(||y||, 1)``.
    """
    if not (tol > 0):
        raise ParameterError(f"tol must be positive, got {tol!r}")
    v = as_vector(y, R.dim)
    fixed_component = projector_fix(R).apply(v)
    if float(np.linalg.norm(fixed_component)) > tol * max(float(np.linalg.norm(v)), 1.0):
        return None
    return AffineSubspace(point=pseudo_inverse(R).apply(v), basis=fixed_space_basis(R))
