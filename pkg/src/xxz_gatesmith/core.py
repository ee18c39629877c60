"""Fixed-shape complex linear algebra for one- and two-spin operators.

Everything in this package lives in the two-qubit product basis ordered
|up,up>, |up,down>, |down,up>, |down,down>, with spin 1 as the left Kronecker
factor.  Matrices are plain complex128 numpy arrays of shape (2, 2) or
(4, 4); arrays returned by constructors in this package are marked read-only.
"""

from __future__ import annotations

import cmath

import numpy as np

UNITARITY_TOL = 1e-12

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
for _m in _PAULI.values():
    _m.flags.writeable = False

ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)
ID2.flags.writeable = False
ID4.flags.writeable = False


class NotUnitaryError(ValueError):
    """Raised when a matrix fails the unitarity check at construction."""


def pauli(axis: str) -> np.ndarray:
    """Standard Pauli matrix in the (up, down) basis, axis in {'x','y','z'}."""
    try:
        return _PAULI[axis]
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}; expected 'x', 'y' or 'z'") from None


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with spin 1 as the left factor."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=complex) @ np.asarray(b, dtype=complex)


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=complex).conj().T


def trace(a: np.ndarray) -> complex:
    return complex(np.trace(np.asarray(a, dtype=complex)))


def _as_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix contains non-finite entries")
    return m


def is_unitary(m: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if not np.isfinite(m).all():
        return False
    return float(np.abs(adjoint(m) @ m - np.eye(m.shape[0])).max()) <= tol


def ensure_unitary(m: np.ndarray, tol: float = UNITARITY_TOL) -> np.ndarray:
    """Validate unitarity in max-norm and return a read-only copy.

    Construction from a non-unitary matrix is an error, never a silent
    projection: every operator handled here is exactly unitary, so drift
    beyond ``tol`` indicates a bug upstream.
    """
    m = _as_square(m)
    dev = float(np.abs(adjoint(m) @ m - np.eye(m.shape[0])).max())
    if dev > tol:
        raise NotUnitaryError(
            f"matrix is not unitary: max |U^dag U - I| = {dev:.3e} > {tol:.1e}"
        )
    out = np.array(m, dtype=complex)
    out.flags.writeable = False
    return out


def approx_equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """True iff a = e^{i chi} b holds entrywise within tol for some phase chi.

    The candidate phase is the closed-form optimum chi* = arg Tr[b^dag a];
    the decision is the max-norm residual at that phase.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _as_square(a)
    b = _as_square(b)
    if a.shape != b.shape:
        raise ValueError("matrices must have the same shape")
    t = complex(np.vdot(b, a))  # Tr[b^dag a]
    phase = cmath.exp(1j * cmath.phase(t)) if t != 0 else 1.0
    return float(np.abs(a - phase * b).max()) <= tol


def matrix_to_json(m: np.ndarray) -> list[list[list[float]]]:
    """Row-major nested lists of [re, im] pairs."""
    m = _as_square(m)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_json(obj: object) -> np.ndarray:
    """Parse the [re, im]-pair encoding produced by :func:`matrix_to_json`."""
    if not isinstance(obj, list) or len(obj) not in (2, 4):
        raise ValueError("matrix JSON must be a list of 2 or 4 rows")
    n = len(obj)
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"matrix JSON row {i} must be a list of {n} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) for x in entry)
            ):
                raise ValueError(
                    f"matrix JSON entry at row {i}, column {j} must be a [re, im] pair"
                )
            out[i, j] = complex(entry[0], entry[1])
    if not np.isfinite(out).all():
        raise ValueError("matrix JSON contains non-finite values")
    return out
