"""Right-linear operators on H^n stored as quaternion matrices.

Entries left-multiply coordinates, (A x)_i = sum_j A[i, j] * x_j, and vector
coefficients right-multiply; this is the unique assignment under which a
matrix commutes with the right scalar action.
"""

from __future__ import annotations

import numpy as np

from . import qarray as qa
from .errors import NotNormalError, ShapeError
from .quaternion import DEFAULT_TOL, Quaternion

_EPS_FLOOR = 1e-300


class QMatrix:
    """Quaternion matrix wrapping an (m, n, 4) float64 component array."""

    __slots__ = ("a",)

    def __init__(self, a):
        a = qa.qarr(a)
        if a.ndim != 3:
            raise ShapeError(f"expected an (m, n, 4) array, got shape {a.shape}")
        self.a = a

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(qa.identity_entries(n))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls(np.zeros((rows, cols, 4), dtype=np.float64))

    @classmethod
    def diag(cls, values) -> "QMatrix":
        if isinstance(values, (list, tuple)) and values and isinstance(values[0], Quaternion):
            values = np.stack([q.to_array() for q in values], axis=0)
        return cls(qa.left_diag_entries(values))

    @classmethod
    def from_rows(cls, rows) -> "QMatrix":
        data = np.stack(
            [np.stack([q.to_array() for q in row], axis=0) for row in rows], axis=0
        )
        return cls(data)

    @classmethod
    def from_columns(cls, cols) -> "QMatrix":
        data = np.stack([qa.qarr(c) for c in cols], axis=1)
        return cls(data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape[0], self.a.shape[1]

    @property
    def n(self) -> int:
        rows, cols = self.shape
        if rows != cols:
            raise ShapeError(f"matrix is not square: {self.shape}")
        return rows

    def is_square(self) -> bool:
        return self.a.shape[0] == self.a.shape[1]

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion.from_array(self.a[i, j])

    def col(self, k: int) -> np.ndarray:
        return self.a[:, k].copy()

    def columns(self) -> list[np.ndarray]:
        return [self.a[:, k].copy() for k in range(self.a.shape[1])]

    @property
    def H(self) -> "QMatrix":
        """Adjoint: (A*)_ij = conj(A_ji), so <x|Ay> = <A*x|y>."""
        return QMatrix(qa.adjoint_entries(self.a))

    def apply(self, x) -> np.ndarray:
        x = qa.qarr(x)
        if x.ndim != 2 or x.shape[0] != self.a.shape[1]:
            raise ShapeError(f"vector shape {x.shape} does not match matrix {self.shape}")
        return qa.qmatvec(self.a, x)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.a.shape[1] != other.a.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return QMatrix(qa.qmatmul(self.a, other.a))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.a + other.a)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.a - other.a)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.a)

    def __mul__(self, scalar) -> "QMatrix":
        return QMatrix(self.a * float(scalar))

    __rmul__ = __mul__

    def copy(self) -> "QMatrix":
        return QMatrix(self.a.copy())

    def frobenius(self) -> float:
        return float(np.sqrt(np.sum(self.a * self.a)))

    def to_complex_adjoint(self) -> np.ndarray:
        return qa.to_complex_adjoint(self.a)

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.to_complex_adjoint(), compute_uv=False)

    def op_norm(self) -> float:
        """Largest singular value; equals sup ||Ax|| / ||x||."""
        return float(self.singular_values()[0])

    def sigma_min(self) -> float:
        return float(self.singular_values()[-1])

    def commutator_defect(self) -> float:
        """Frobenius norm of A*A - AA*."""
        h = self.H
        return ((h @ self) - (self @ h)).frobenius()

    def is_normal(self, tol: float = DEFAULT_TOL) -> bool:
        if tol < 0.0:
            raise ValueError("tolerance must be >= 0")
        scale = self.frobenius() ** 2
        return self.commutator_defect() <= tol * max(scale, _EPS_FLOOR)

    def check_normal(self, tol: float = DEFAULT_TOL) -> None:
        if not self.is_normal(tol):
            raise NotNormalError(self.commutator_defect(), tol * self.frobenius() ** 2)

    def allclose(self, other: "QMatrix", tol: float = DEFAULT_TOL) -> bool:
        return (self - other).frobenius() <= tol

    def __repr__(self):
        rows, cols = self.shape
        return f"QMatrix({rows}x{cols})"


def op_norm(a: QMatrix) -> float:
    return a.op_norm()


def sigma_min(a: QMatrix) -> float:
    return a.sigma_min()


def adjoint(a: QMatrix) -> QMatrix:
    return a.H


def is_normal(a: QMatrix, tol: float = DEFAULT_TOL) -> bool:
    return a.is_normal(tol)


def delta(a: QMatrix, q: Quaternion) -> QMatrix:
    """A**2 - A*(q + conj q) + I*|q|**2; both coefficients are real scalars.

    Depends on q only through its similarity orbit, and q in the spherical
    spectrum of a normal A is detected by sigma_min(delta(A, q)) collapsing.
    """
    n = a.n
    return (a @ a) - (2.0 * q.re) * a + (q.norm_sq()) * QMatrix.identity(n)
