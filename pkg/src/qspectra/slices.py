"""Slice structures: the J operator, the plus/minus subspaces it carves out,
restriction to and extension from the plus subspace, and the pair construction
that turns a slice Hilbert space into a quaternionic one.

A slice structure is an anti-self-adjoint unitary J together with a frame;
the plus subspace is {x : Jx = x * m} and carries a C_m-linear calculus.
Extension is exact at desk scale: with plus basis V, a slice matrix M extends
to V M V*, the unique right-linear operator restricting to M.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qarray as qa
from . import vectors as vec
from .bridge import CMatrix, SpectralDecomposition
from .errors import ShapeError, SliceCommutationError
from .operators import QMatrix
from .quaternion import Quaternion, SliceFrame, cm_to_complex, complex_to_cm

COMMUTE_TOL = 1e-9

_TINY = 1e-300


@dataclass
class SliceStructure:
    """J (anti-self-adjoint, unitary), its frame, and a plus-subspace basis.

    The columns z of plus_basis satisfy J z = z * m, so they form a right
    C_m basis of the plus subspace and simultaneously a Hilbert basis of the
    whole space.
    """

    J: QMatrix
    frame: SliceFrame
    plus_basis: QMatrix

    @property
    def n(self) -> int:
        return self.J.n


def build_J(dec: SpectralDecomposition) -> SliceStructure:
    """J = V (columns right-multiplied by m) V*.

    J is anti-self-adjoint and unitary because m is; it commutes with
    V diag(d) V* because every d_k lies in the slice of m.
    """
    v = dec.V
    n = v.n
    m_diag = QMatrix.diag([dec.frame.m] * n)
    j = v @ m_diag @ v.H

    ident = QMatrix.identity(n)
    if (j.H + j).frobenius() > 1e-10 * n or ((j @ j) + ident).frobenius() > 1e-10 * n:
        raise SliceCommutationError("constructed J is not anti-self-adjoint unitary")
    rec = v @ QMatrix.diag(dec.d) @ v.H
    if ((j @ rec) - (rec @ j)).frobenius() > COMMUTE_TOL * max(rec.frobenius(), 1.0):
        raise SliceCommutationError("constructed J fails to commute with its operator")
    return SliceStructure(j, dec.frame, v)


def project_plus(x: np.ndarray, s: SliceStructure) -> np.ndarray:
    """P+ x = (x - J(x) m) / 2; range is the plus subspace."""
    return 0.5 * (qa.qarr(x) - vec.scale_right(s.J.apply(x), s.frame.m))


def project_minus(x: np.ndarray, s: SliceStructure) -> np.ndarray:
    return 0.5 * (qa.qarr(x) + vec.scale_right(s.J.apply(x), s.frame.m))


def check_commutes(a: QMatrix, s: SliceStructure, tol: float = COMMUTE_TOL) -> float:
    defect = ((a @ s.J) - (s.J @ a)).frobenius()
    bound = tol * max(a.frobenius(), 1.0)
    if defect > bound:
        raise SliceCommutationError(
            f"operator does not preserve the slice: ||AJ - JA|| = {defect:.3e} > {bound:.3e}"
        )
    return defect


def restrict_plus(a: QMatrix, s: SliceStructure, tol: float = COMMUTE_TOL) -> CMatrix:
    """Matrix of A on the plus basis: (T+)_kl = <z_k | A z_l>, entries in C_m.

    Off-slice mass up to tol * ||A|| is eigenvector rounding and is projected
    away; anything larger means A does not truly preserve the slice.
    """
    check_commutes(a, s, tol)
    t_plus = s.plus_basis.H @ a @ s.plus_basis
    return CMatrix.project(t_plus.a, s.frame, tol * max(a.frobenius(), 1.0))


def restrict_minus(a: QMatrix, s: SliceStructure, tol: float = COMMUTE_TOL) -> CMatrix:
    """Matrix of A on the minus basis {z_k * n}; conjugate of the plus matrix."""
    check_commutes(a, s, tol)
    minus_cols = [vec.scale_right(s.plus_basis.col(k), s.frame.n) for k in range(s.n)]
    basis = QMatrix.from_columns(minus_cols)
    t_minus = basis.H @ a @ basis
    return CMatrix.project(t_minus.a, s.frame, tol * max(a.frobenius(), 1.0))


def extend(t_plus: CMatrix, s: SliceStructure) -> QMatrix:
    """Unique right-linear extension of a slice operator to the whole space.

    Satisfies ||extend(T)|| = ||T||, extend(T*) = extend(T)*, and
    extend(S T) = extend(S) extend(T).
    """
    rows, cols = t_plus.shape
    if rows != cols or rows != s.n:
        raise ShapeError(f"operator shape {t_plus.shape} does not fit space of dim {s.n}")
    return s.plus_basis @ QMatrix(t_plus.data) @ s.plus_basis.H


def extend_between(u: CMatrix, s1: SliceStructure, s2: SliceStructure) -> QMatrix:
    """Extension across two spaces; verifies J2 U~ = U~ J1 and norm equality."""
    rows, cols = u.shape
    if cols != s1.n or rows != s2.n:
        raise ShapeError(
            f"operator shape {u.shape} does not map dim {s1.n} into dim {s2.n}"
        )
    lifted = s2.plus_basis @ QMatrix(u.data) @ s1.plus_basis.H
    defect = ((s2.J @ lifted) - (lifted @ s1.J)).frobenius()
    if defect > COMMUTE_TOL * max(lifted.frobenius(), 1.0):
        raise SliceCommutationError(f"extension fails J2 U = U J1 by {defect:.3e}")
    norm_gap = abs(lifted.op_norm() - QMatrix(u.data).op_norm())
    if norm_gap > COMMUTE_TOL * max(lifted.op_norm(), 1.0):
        raise SliceCommutationError(f"extension norm deviates by {norm_gap:.3e}")
    return lifted


class QuaternionifiedSpace:
    """Pairs (x, y) of slice vectors identified with x + y * n.

    The right scalar action for q = alpha + beta * n (alpha, beta slice
    values held as complex numbers) is

        (x, y) * q = (x alpha - y conj(beta), x beta + y conj(alpha)),

    which is what the identification forces via n * z = conj(z) * n. The
    variant without the conjugations (scale_unconjugated) is kept only as a
    regression witness: it breaks associativity of the action.
    """

    def __init__(self, complex_dim: int, frame: SliceFrame):
        if complex_dim < 1:
            raise ShapeError("complex dimension must be >= 1")
        self.dim = complex_dim
        self.frame = frame

    def zero(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.zeros(self.dim, dtype=np.complex128),
            np.zeros(self.dim, dtype=np.complex128),
        )

    def element(self, x, y) -> tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=np.complex128)
        y = np.asarray(y, dtype=np.complex128)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise ShapeError(f"expected two vectors of length {self.dim}")
        return x, y

    def add(self, u, v):
        return u[0] + v[0], u[1] + v[1]

    def _split_scalar(self, q: Quaternion) -> tuple[complex, complex]:
        from .quaternion import slice_split

        a, b = slice_split(q, self.frame)
        return cm_to_complex(a, self.frame), cm_to_complex(b, self.frame)

    def scale(self, u, q: Quaternion):
        alpha, beta = self._split_scalar(q)
        x, y = u
        return x * alpha - y * np.conj(beta), x * beta + y * np.conj(alpha)

    def scale_unconjugated(self, u, q: Quaternion):
        """Broken variant (no conjugations, minus on both cross terms)."""
        alpha, beta = self._split_scalar(q)
        x, y = u
        return x * alpha - y * beta, x * beta - y * alpha

    def inner(self, u, v) -> Quaternion:
        """[<x|z> + <w|y>] + [<x|w> - <z|y>] * n."""
        x, y = u
        z, w = v
        slice_part = complex(np.vdot(x, z) + np.vdot(w, y))
        n_part = complex(np.vdot(x, w) - np.vdot(z, y))
        f = self.frame
        return complex_to_cm(slice_part, f) + complex_to_cm(n_part, f) * f.n

    def norm(self, u) -> float:
        return float(np.sqrt(np.linalg.norm(u[0]) ** 2 + np.linalg.norm(u[1]) ** 2))

    def j_map(self, u):
        """J(x + y n) = (x - y n) m, i.e. (x m, y m) in pair coordinates."""
        x, y = u
        return 1j * x, 1j * y

    def project_plus(self, u):
        return tuple(0.5 * (a - b) for a, b in zip(u, self.scale(self.j_map(u), self.frame.m)))

    def embed(self, u) -> np.ndarray:
        """The quaternion vector x + y * n this pair stands for."""
        x, y = u
        return qa.from_frame_coords(x.real, x.imag, y.real, y.imag, self.frame)


def quaternionify(complex_dim: int, frame: SliceFrame) -> QuaternionifiedSpace:
    return QuaternionifiedSpace(complex_dim, frame)
