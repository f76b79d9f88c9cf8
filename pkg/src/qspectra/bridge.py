"""Slice embedding into complex matrices of doubled size and the spectral
decomposition of normal quaternion matrices built on top of it.

The embedding chi splits every entry as a_1 + a_2 * n against a slice frame
and maps

    chi(A) = [[A1, -A2], [conj(A2), conj(A1)]]

acting on iota(x) = (x1; conj(x2)) for x = x1 + x2 * n, so that
iota(A x) = chi(A) iota(x) and iota(x * s) = iota(x) * s for slice scalars s.
Eigenvectors (u; v) of chi(A) lift back to quaternionic eigenvectors

    x = u + conj(v) * n     with     A x = x * lambda,

which is forced by the iota contract: iota(x) = (x1; conj(x2)) means the
lifted vector must have slice parts x1 = u and x2 = conj(v), and then
iota(A x) = chi(A) (u; v) = (u; v) * lambda = iota(x * lambda).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qarray as qa
from . import vectors as vec
from .errors import (
    EigenResidualError,
    NotNormalError,
    PairingError,
    ShapeError,
    SliceMembershipError,
)
from .operators import QMatrix
from .quaternion import (
    CM_MEMBERSHIP_TOL,
    Quaternion,
    SliceFrame,
    cm_to_complex,
    complex_to_cm,
)

CLUSTER_TOL = 1e-8
EIG_RESIDUAL_TOL = 1e-10
DECOMP_RESIDUAL_TOL = 1e-9

_TINY = 1e-300


class CMatrix:
    """Matrix with entries in the slice C_m of a frame.

    Entries are stored as full quaternions with an asserted membership
    invariant (components along n and mn stay below tolerance) rather than
    as a separate complex format; conversion happens only at the LAPACK
    boundary.
    """

    __slots__ = ("frame", "data")

    def __init__(self, data, frame: SliceFrame):
        data = qa.qarr(data)
        if data.ndim != 3:
            raise ShapeError(f"expected an (p, q, 4) array, got {data.shape}")
        c0, c1, c2, c3 = qa.frame_coords(data, frame)
        off = max(np.max(np.abs(c2), initial=0.0), np.max(np.abs(c3), initial=0.0))
        scale = 1.0 + max(np.max(np.abs(c0), initial=0.0), np.max(np.abs(c1), initial=0.0))
        if off > CM_MEMBERSHIP_TOL * scale:
            raise SliceMembershipError(f"off-slice mass {off:.3e} exceeds tolerance")
        self.frame = frame
        self.data = data

    @classmethod
    def from_complex(cls, z: np.ndarray, frame: SliceFrame) -> "CMatrix":
        z = np.asarray(z, dtype=np.complex128)
        zero = np.zeros_like(z.real)
        data = qa.from_frame_coords(z.real, z.imag, zero, zero, frame)
        return cls(data, frame)

    @classmethod
    def project(cls, data, frame: SliceFrame, max_off: float) -> "CMatrix":
        """Project quaternion entries onto the slice, rejecting off-slice
        mass beyond max_off (absorbs eigenvector rounding, nothing more)."""
        c0, c1, c2, c3 = qa.frame_coords(qa.qarr(data), frame)
        off = max(np.max(np.abs(c2), initial=0.0), np.max(np.abs(c3), initial=0.0))
        if off > max_off:
            raise SliceMembershipError(
                f"off-slice mass {off:.3e} exceeds the allowance {max_off:.3e}"
            )
        return cls.from_complex(c0 + 1j * c1, frame)

    def to_complex(self) -> np.ndarray:
        c0, c1, _, _ = qa.frame_coords(self.data, self.frame)
        return c0 + 1j * c1

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    def as_qmatrix(self) -> QMatrix:
        return QMatrix(self.data)

    def __repr__(self):
        rows, cols = self.shape
        return f"CMatrix({rows}x{cols})"


@dataclass
class ChiImage:
    """The doubled complex image of a quaternion matrix under a frame."""

    frame: SliceFrame
    cm: CMatrix


@dataclass
class SpectralDecomposition:
    """Unitary V and standard eigenvalues d in C_m+ with A V_k = V_k d_k."""

    V: QMatrix
    d: list[Quaternion]
    frame: SliceFrame
    residual: float


def chi(a: QMatrix, frame: SliceFrame) -> ChiImage:
    """Embed a quaternion matrix as a complex matrix of doubled size."""
    c0, c1, c2, c3 = qa.frame_coords(a.a, frame)
    a1 = c0 + 1j * c1
    a2 = c2 + 1j * c3
    top = np.concatenate([a1, -a2], axis=1)
    bottom = np.concatenate([np.conj(a2), np.conj(a1)], axis=1)
    return ChiImage(frame, CMatrix.from_complex(np.concatenate([top, bottom], axis=0), frame))


def iota(x: np.ndarray, frame: SliceFrame) -> np.ndarray:
    """Coordinates of a quaternion vector in the doubled complex space."""
    c0, c1, c2, c3 = qa.frame_coords(qa.qarr(x), frame)
    return np.concatenate([c0 + 1j * c1, c2 - 1j * c3])


def iota_inv(w: np.ndarray, frame: SliceFrame) -> np.ndarray:
    """Lift doubled complex coordinates (u; v) to u + conj(v) * n."""
    w = np.asarray(w, dtype=np.complex128)
    if w.shape[0] % 2:
        raise ShapeError("doubled coordinates must have even length")
    n = w.shape[0] // 2
    u, v = w[:n], w[n:]
    return qa.from_frame_coords(u.real, u.imag, v.real, -v.imag, frame)


def _eig_commuting_pair(z: np.ndarray, cluster_tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a normal complex matrix via its Hermitian parts.

    H = (Z + Z*)/2 and K = (Z - Z*)/2i commute for normal Z, so eigh(H)
    followed by eigh of K compressed to each H-eigenvalue cluster yields a
    machine-unitary eigenvector matrix regardless of degeneracies.
    """
    scale = max(1.0, float(np.linalg.norm(z)))
    h = (z + np.conj(z.T)) / 2.0
    k = (z - np.conj(z.T)) / 2.0j
    hvals, q = np.linalg.eigh(h)

    tol = cluster_tol * scale
    boundaries = [0]
    for t in range(1, len(hvals)):
        if hvals[t] - hvals[t - 1] > tol:
            boundaries.append(t)
    boundaries.append(len(hvals))

    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        if hi - lo < 2:
            continue
        block = q[:, lo:hi]
        compressed = np.conj(block.T) @ k @ block
        compressed = (compressed + np.conj(compressed.T)) / 2.0
        _, rot = np.linalg.eigh(compressed)
        q[:, lo:hi] = block @ rot

    vals = np.sum(np.conj(q) * (z @ q), axis=0)
    return vals, q


def eig_normal_complex(
    n_mat: CMatrix,
    normal_tol: float = 1e-10,
    cluster_tol: float = CLUSTER_TOL,
    residual_tol: float = EIG_RESIDUAL_TOL,
) -> tuple[CMatrix, list[Quaternion]]:
    """Diagonalize a normal slice matrix: N W = W diag(vals).

    Eigenvalues are ordered lexicographically by (real part, imaginary
    coefficient), descending, so repeated runs produce identical output.
    Raises NotNormalError for non-normal input and EigenResidualError when
    the residual contract residual <= residual_tol * ||N|| cannot be met.
    """
    rows, cols = n_mat.shape
    if rows != cols:
        raise ShapeError("eigendecomposition needs a square matrix")
    z = n_mat.to_complex()
    scale = float(np.linalg.norm(z))
    defect = float(np.linalg.norm(z @ np.conj(z.T) - np.conj(z.T) @ z))
    if defect > normal_tol * max(scale**2, _TINY):
        raise NotNormalError(defect, normal_tol * scale**2)

    vals, q = _eig_commuting_pair(z, cluster_tol)
    order = np.lexsort((-vals.imag, -vals.real))
    vals, q = vals[order], q[:, order]

    residual = float(np.linalg.norm(z @ q - q * vals))
    if residual > residual_tol * max(scale, _TINY):
        raise EigenResidualError(
            f"eigendecomposition residual {residual:.3e} exceeds "
            f"{residual_tol:.1e} * {scale:.3e}"
        )
    frame = n_mat.frame
    return CMatrix.from_complex(q, frame), [complex_to_cm(v, frame) for v in vals]


def _cluster_complex(vals: np.ndarray, tol: float) -> list[np.ndarray]:
    """Greedy union of values within tol of each other (transitive)."""
    order = np.lexsort((vals.imag, vals.real))
    parent = list(range(len(vals)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    idx = np.arange(len(vals))
    for a_pos in range(len(vals)):
        for b_pos in range(a_pos + 1, len(vals)):
            a_i, b_i = order[a_pos], order[b_pos]
            if vals[b_i].real - vals[a_i].real > tol:
                break
            if abs(vals[a_i] - vals[b_i]) <= tol:
                ra, rb = find(a_i), find(b_i)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for i in idx:
        groups.setdefault(find(i), []).append(i)
    return [np.array(sorted(g)) for g in groups.values()]


def _orthonormalize_drop(candidates: list[np.ndarray], keep_tol: float = 1e-6) -> list[np.ndarray]:
    """Greedy right-coefficient Gram-Schmidt, silently dropping dependents."""
    kept: list[np.ndarray] = []
    for cand in candidates:
        u = cand.copy()
        for _ in range(2):
            for z in kept:
                u = u - vec.scale_right(z, vec.inner(z, u))
        r = vec.norm(u)
        if r >= keep_tol:
            kept.append(u / r)
    return kept


def spectral_decompose(
    a: QMatrix,
    frame: SliceFrame,
    normal_tol: float = 1e-10,
    cluster_tol: float = CLUSTER_TOL,
) -> SpectralDecomposition:
    """Diagonalize a normal quaternion matrix: A V_k = V_k d_k, d_k in C_m+.

    Route: eigendecompose chi(A); keep the upper-half-plane eigenvalues
    (the spectrum is closed under slice conjugation); lift each eigenvector
    (u; v) to u + conj(v) * n; orthonormalize within eigenvalue clusters.
    Real eigenvalues come in doubled pairs whose lifts span the same
    quaternionic lines, so exactly half survive the per-cluster pass.
    """
    a.check_normal(normal_tol)
    n = a.n
    scale = max(a.frobenius(), _TINY)

    image = chi(a, frame)
    w_cm, vals_q = eig_normal_complex(image.cm, normal_tol=normal_tol, cluster_tol=cluster_tol)
    w = w_cm.to_complex()
    vals = np.array([cm_to_complex(v, frame) for v in vals_q], dtype=np.complex128)

    pair_tol = 1e-9 * max(1.0, scale)
    for v in vals[vals.imag > pair_tol]:
        if np.min(np.abs(vals - np.conj(v))) > pair_tol:
            raise PairingError(f"eigenvalue {v:.6e} lacks a conjugate partner")

    columns: list[np.ndarray] = []
    values: list[Quaternion] = []
    for group in _cluster_complex(vals, cluster_tol * max(1.0, scale)):
        mean = complex(np.mean(vals[group]))
        straddles = abs(mean.imag) <= pair_tol or (
            np.min(vals[group].imag) <= 0.0 <= np.max(vals[group].imag)
        )
        if straddles:
            if len(group) % 2:
                raise PairingError(
                    f"odd multiplicity {len(group)} at real eigenvalue {mean.real:.6e}"
                )
            lifts = [iota_inv(w[:, t], frame) for t in group]
            kept = _orthonormalize_drop(lifts)
            if len(kept) != len(group) // 2:
                raise PairingError(
                    f"expected {len(group) // 2} independent lifts at "
                    f"{mean.real:.6e}, got {len(kept)}"
                )
            lam = Quaternion(mean.real)
        elif mean.imag > 0.0:
            lifts = [iota_inv(w[:, t], frame) for t in group]
            kept = _orthonormalize_drop(lifts)
            if len(kept) != len(group):
                raise PairingError(
                    f"lift of eigenvalue cluster at {mean:.6e} lost rank "
                    f"({len(kept)} of {len(group)})"
                )
            lam = complex_to_cm(mean, frame)
        else:
            continue  # conjugate partners of an upper-half cluster
        for u in kept:
            columns.append(u)
            values.append(lam)

    if len(columns) != n:
        raise PairingError(f"selected {len(columns)} eigenvectors for dimension {n}")

    order = sorted(range(n), key=lambda t: (-values[t].re, -values[t].im_norm()))
    columns = [columns[t] for t in order]
    values = [values[t] for t in order]

    v_mat = QMatrix.from_columns(columns)
    residual = ((a @ v_mat) - (v_mat @ QMatrix.diag(values))).frobenius()
    unitarity = ((v_mat.H @ v_mat) - QMatrix.identity(n)).frobenius()
    if residual > DECOMP_RESIDUAL_TOL * scale or unitarity > 1e-10 * max(1.0, np.sqrt(n)):
        raise EigenResidualError(
            f"decomposition residual {residual:.3e} (unitarity {unitarity:.3e}) "
            f"exceeds contract at scale {scale:.3e}"
        )
    return SpectralDecomposition(v_mat, values, frame, residual)
