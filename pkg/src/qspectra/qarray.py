"""Vectorized kernels for quaternion arrays (trailing axis of length 4).

Matrix-sized products route through the complex-pair representation
q = (w + x*i) + (y + z*i) * j, turning a quaternion matrix product into four
complex BLAS products.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError
from .quaternion import Quaternion


def qarr(a) -> np.ndarray:
    out = np.asarray(a, dtype=np.float64)
    if out.ndim < 1 or out.shape[-1] != 4:
        raise ShapeError(f"expected trailing axis of length 4, got shape {out.shape}")
    return out


def from_quaternion(q: Quaternion) -> np.ndarray:
    return q.to_array()


def to_quaternion(a) -> Quaternion:
    a = np.asarray(a, dtype=np.float64)
    if a.shape != (4,):
        raise ShapeError(f"expected a single quaternion, got shape {a.shape}")
    return Quaternion.from_array(a)


def qconj(a) -> np.ndarray:
    a = qarr(a)
    out = a.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def qnorm_sq(a) -> np.ndarray:
    a = qarr(a)
    return np.einsum("...c,...c->...", a, a)


def qabs(a) -> np.ndarray:
    return np.sqrt(qnorm_sq(a))


def qmul(a, b) -> np.ndarray:
    """Componentwise Hamilton product with numpy broadcasting."""
    a, b = qarr(a), qarr(b)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def as_pair(a) -> tuple[np.ndarray, np.ndarray]:
    """Split into complex parts (w + x*i, y + z*i) of q = p1 + p2*j."""
    a = qarr(a)
    return a[..., 0] + 1j * a[..., 1], a[..., 2] + 1j * a[..., 3]


def from_pair(p1, p2) -> np.ndarray:
    p1 = np.asarray(p1, dtype=np.complex128)
    p2 = np.asarray(p2, dtype=np.complex128)
    return np.stack([p1.real, p1.imag, p2.real, p2.imag], axis=-1)


def qmatmul(a, b) -> np.ndarray:
    """Quaternion matrix product, preserving entry order.

    (p1 + p2*j)(r1 + r2*j) = (p1*r1 - p2*conj(r2)) + (p1*r2 + p2*conj(r1))*j.
    """
    a1, a2 = as_pair(a)
    b1, b2 = as_pair(b)
    c1 = a1 @ b1 - a2 @ np.conj(b2)
    c2 = a1 @ b2 + a2 @ np.conj(b1)
    return from_pair(c1, c2)


def qmatvec(a, x) -> np.ndarray:
    return qmatmul(a, x)


def qscale_right(x, q: Quaternion) -> np.ndarray:
    """Entrywise x_i * q (right module action)."""
    return qmul(x, q.to_array())


def qscale_left(q: Quaternion, x) -> np.ndarray:
    return qmul(q.to_array(), x)


def adjoint_entries(a) -> np.ndarray:
    """Conjugate transpose of a quaternion matrix array."""
    a = qarr(a)
    if a.ndim != 3:
        raise ShapeError("adjoint expects an (m, n, 4) array")
    return qconj(np.swapaxes(a, 0, 1))


def identity_entries(n: int) -> np.ndarray:
    out = np.zeros((n, n, 4), dtype=np.float64)
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


def left_diag_entries(values) -> np.ndarray:
    """Diagonal matrix with quaternion entries (entries left-multiply)."""
    vals = qarr(values)
    if vals.ndim != 2:
        raise ShapeError("diagonal expects an (n, 4) array of values")
    n = vals.shape[0]
    out = np.zeros((n, n, 4), dtype=np.float64)
    out[np.arange(n), np.arange(n)] = vals
    return out


def to_complex_adjoint(a) -> np.ndarray:
    """Complex matrix of doubled size acting as the quaternion matrix does.

    Built against the standard slice (i, j, k); used internally for singular
    values, which are independent of the slice chosen.
    """
    a1, a2 = as_pair(qarr(a))
    if a1.ndim != 2:
        raise ShapeError("expected an (m, n, 4) array")
    top = np.concatenate([a1, -a2], axis=1)
    bottom = np.concatenate([np.conj(a2), np.conj(a1)], axis=1)
    return np.concatenate([top, bottom], axis=0)


def frame_coords(a, frame) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Real coordinates of a quaternion array against {1, m, n, mn}."""
    a = qarr(a)
    basis = np.stack([q.to_array() for q in frame.basis()], axis=0)
    coords = np.einsum("...c,bc->...b", a, basis)
    return coords[..., 0], coords[..., 1], coords[..., 2], coords[..., 3]


def from_frame_coords(c0, c1, c2, c3, frame) -> np.ndarray:
    basis = np.stack([q.to_array() for q in frame.basis()], axis=0)
    coords = np.stack([c0, c1, c2, c3], axis=-1)
    return np.einsum("...b,bc->...c", coords, basis)
