"""File formats: matrices and vectors as JSON arrays-of-rows or CSV (row-major,
'.' decimal separator), plus dict serializers for the value types."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParameterError


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path} is not valid JSON: {exc}") from exc


def _finite_or_raise(arr: np.ndarray, path: str) -> np.ndarray:
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{path} contains non-finite entries")
    return arr


def load_matrix(path) -> np.ndarray:
    """Read a matrix from a .json (arrays-of-rows) or CSV file."""
    p = str(path)
    if p.endswith(".json"):
        obj = _read_json(p)
        try:
            arr = np.asarray(obj, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"{p}: expected an array of equal-length rows") from exc
    else:
        try:
            arr = np.loadtxt(p, delimiter=",", ndmin=2)
        except OSError as exc:
            raise ParameterError(f"cannot read {p}: {exc}") from exc
        except ValueError as exc:
            raise ParameterError(f"{p} is not a rectangular CSV matrix: {exc}") from exc
    if arr.ndim != 2:
        raise ParameterError(f"{p}: expected a matrix, got array of shape {arr.shape}")
    return _finite_or_raise(arr, p)


def load_vector(path) -> np.ndarray:
    """Read a vector from a .json (flat array) or CSV (single row or column) file."""
    p = str(path)
    if p.endswith(".json"):
        obj = _read_json(p)
        try:
            arr = np.asarray(obj, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"{p}: expected a flat array of numbers") from exc
    else:
        try:
            arr = np.atleast_1d(np.loadtxt(p, delimiter=","))
        except OSError as exc:
            raise ParameterError(f"cannot read {p}: {exc}") from exc
        except ValueError as exc:
            raise ParameterError(f"{p} is not a CSV vector: {exc}") from exc
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise ParameterError(f"{p}: expected a vector, got array of shape {arr.shape}")
    return _finite_or_raise(arr, p)


def save_matrix(path, matrix) -> None:
    """Write a matrix as JSON arrays-of-rows (.json) or CSV (anything else)."""
    p = str(path)
    arr = np.asarray(matrix, dtype=float)
    if p.endswith(".json"):
        Path(p).write_text(json.dumps(matrix_rows(arr)))
    else:
        np.savetxt(p, np.atleast_2d(arr), delimiter=",", fmt="%.17g")


def save_vector(path, vector) -> None:
    p = str(path)
    arr = np.asarray(vector, dtype=float)
    if p.endswith(".json"):
        Path(p).write_text(json.dumps(vector_entries(arr)))
    else:
        np.savetxt(p, arr.reshape(1, -1), delimiter=",", fmt="%.17g")


def matrix_rows(matrix) -> list:
    return [[float(v) for v in row] for row in np.asarray(matrix, dtype=float)]


def vector_entries(vector) -> list:
    return [float(v) for v in np.asarray(vector, dtype=float)]


def polynomial_to_dict(poly) -> dict:
    """PolynomialOperator wire schema: {"m": ..., "coefficients": [...]}."""
    return {"m": poly.order, "coefficients": vector_entries(poly.coefficients)}


def affine_subspace_to_dict(subspace) -> dict:
    """AffineSubspace wire schema: {"point": [...], "basis": [[...], ...]}."""
    return {
        "point": vector_entries(subspace.point),
        "basis": [vector_entries(b) for b in subspace.basis],
    }
