"""Linear isometries of finite order: constructors, certification, fast apply paths.

Every operator here is a linear map R on R^n with ||Rx|| = ||x|| and R^m = Id
for a certified integer order m >= 2.  Three storage kinds are supported:
plane rotators (block-diagonal rotations by 2*pi/m), circular block shifts,
and explicit dense matrices certified at construction time.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError, ValidationError

#: max-norm tolerance used by :func:`make_dense` when certifying a matrix.
DEFAULT_VALIDATION_TOL = 1e-10

ROTATOR = "rotator"
CIRCULAR_SHIFT = "circular_shift"
DENSE = "dense"


def as_vector(x, dim: int) -> np.ndarray:
    """Coerce ``x`` to a float vector of length ``dim`` (ParameterError otherwise)."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ParameterError(f"expected a 1-d vector, got array of shape {v.shape}")
    if v.shape[0] != dim:
        raise ParameterError(
            f"dimension mismatch: vector has length {v.shape[0]}, operator expects {dim}"
        )
    return v


def _check_order(m) -> int:
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 2:
        raise ParameterError(f"order must be an integer >= 2, got {m!r}")
    return int(m)


class FiniteOrderIsometry:
    """A linear isometry R with a certified order m, i.e. R^m = Id.

    Instances are immutable after construction and safe to share across
    threads.  Use :func:`make_rotator`, :func:`make_circular_shift`, or
    :func:`make_dense` instead of the bare constructor.
    """

    __slots__ = ("kind", "order", "dim", "_cos", "_sin", "_block_dim", "_matrix")

    def __init__(self, kind, order, dim, *, cos_sin=None, block_dim=None, matrix=None):
        self.kind = kind
        self.order = int(order)
        self.dim = int(dim)
        self._cos, self._sin = cos_sin if cos_sin is not None else (None, None)
        self._block_dim = block_dim
        self._matrix = matrix

    def __repr__(self) -> str:
        return f"FiniteOrderIsometry(kind={self.kind!r}, order={self.order}, dim={self.dim})"

    def same_as(self, other) -> bool:
        """True when both operators are the same map (used to gate coefficient algebra)."""
        if self is other:
            return True
        if not isinstance(other, FiniteOrderIsometry):
            return False
        if (self.kind, self.order, self.dim) != (other.kind, other.order, other.dim):
            return False
        if self.kind == ROTATOR:
            return self._cos == other._cos and self._sin == other._sin
        if self.kind == CIRCULAR_SHIFT:
            return self._block_dim == other._block_dim
        return np.array_equal(self._matrix, other._matrix)

    @staticmethod
    def _rotate(v: np.ndarray, c: float, s: float) -> np.ndarray:
        pairs = v.reshape(-1, 2)
        out = np.empty_like(pairs)
        out[:, 0] = c * pairs[:, 0] - s * pairs[:, 1]
        out[:, 1] = s * pairs[:, 0] + c * pairs[:, 1]
        return out.ravel()

    def apply(self, x) -> np.ndarray:
        """Return R x."""
        v = as_vector(x, self.dim)
        if self.kind == ROTATOR:
            return self._rotate(v, self._cos, self._sin)
        if self.kind == CIRCULAR_SHIFT:
            return np.roll(v.reshape(self.order, self._block_dim), 1, axis=0).ravel()
        return self._matrix @ v

    __call__ = apply

    def adjoint_apply(self, x) -> np.ndarray:
        """Return R* x, which for an order-m isometry equals R^{m-1} x."""
        v = as_vector(x, self.dim)
        if self.kind == ROTATOR:
            return self._rotate(v, self._cos, -self._sin)
        if self.kind == CIRCULAR_SHIFT:
            return np.roll(v.reshape(self.order, self._block_dim), -1, axis=0).ravel()
        return self._matrix.T @ v

    def apply_power(self, k, x) -> np.ndarray:
        """Return R^k x with k reduced mod m, so the cost is O(m) applications at worst."""
        if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 0:
            raise ParameterError(f"power must be a nonnegative integer, got {k!r}")
        v = as_vector(x, self.dim)
        k = int(k) % self.order
        if k == 0:
            return v.copy()
        if self.kind == CIRCULAR_SHIFT:
            return np.roll(v.reshape(self.order, self._block_dim), k, axis=0).ravel()
        for _ in range(k):
            v = self.apply(v)
        return v


def make_rotator(m: int, blocks: int = 1) -> FiniteOrderIsometry:
    """Block-diagonal rotation by the angle 2*pi/m on R^(2*blocks).

    cos/sin are evaluated once at construction so repeated applications do not
    re-enter libm.  The order m holds to machine precision by construction.
    """
    m = _check_order(m)
    if not isinstance(blocks, (int, np.integer)) or isinstance(blocks, bool) or blocks < 1:
        raise ParameterError(f"blocks must be an integer >= 1, got {blocks!r}")
    angle = 2.0 * math.pi / m
    return FiniteOrderIsometry(
        ROTATOR, m, 2 * int(blocks), cos_sin=(math.cos(angle), math.sin(angle))
    )


def make_circular_shift(m: int, block_dim: int = 1) -> FiniteOrderIsometry:
    """Circular right shift of m blocks of size block_dim:
    (x_1, ..., x_m) -> (x_m, x_1, ..., x_{m-1})."""
    m = _check_order(m)
    if not isinstance(block_dim, (int, np.integer)) or isinstance(block_dim, bool) or block_dim < 1:
        raise ParameterError(f"block_dim must be an integer >= 1, got {block_dim!r}")
    return FiniteOrderIsometry(CIRCULAR_SHIFT, m, m * int(block_dim), block_dim=int(block_dim))


def make_dense(matrix, m: int, tol: float = DEFAULT_VALIDATION_TOL) -> FiniteOrderIsometry:
    """Wrap an explicit matrix after certifying it is an isometry of order m.

    Accepts iff max|A^T A - I| <= tol and max|A^m - I| <= tol; the raised
    ValidationError names whichever bound failed.
    """
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ParameterError(f"matrix must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ParameterError("matrix entries must all be finite")
    m = _check_order(m)
    if not (tol > 0):
        raise ParameterError(f"tol must be positive, got {tol!r}")
    n = A.shape[0]
    eye = np.eye(n)
    isometry_dev = float(np.max(np.abs(A.T @ A - eye)))
    if isometry_dev > tol:
        raise ValidationError(
            f"not an isometry: max|A^T A - I| = {isometry_dev:.3e} exceeds tol = {tol:.1e}"
        )
    order_dev = float(np.max(np.abs(np.linalg.matrix_power(A, m) - eye)))
    if order_dev > tol:
        raise ValidationError(
            f"order check failed: max|A^{m} - I| = {order_dev:.3e} exceeds tol = {tol:.1e}"
        )
    return FiniteOrderIsometry(DENSE, m, n, matrix=A.copy())


def apply(R: FiniteOrderIsometry, x) -> np.ndarray:
    """Functional alias for ``R.apply(x)``."""
    return R.apply(x)


def apply_power(R: FiniteOrderIsometry, k: int, x) -> np.ndarray:
    """Functional alias for ``R.apply_power(k, x)``."""
    return R.apply_power(k, x)


def adjoint_apply(R: FiniteOrderIsometry, x) -> np.ndarray:
    """Functional alias for ``R.adjoint_apply(x)``."""
    return R.adjoint_apply(x)
