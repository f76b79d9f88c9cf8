"""Right quaternionic vectors in H^n and Hilbert-basis machinery.

Vectors are (n, 4) float64 arrays. The inner product is right-linear in its
second argument, <x|y> = sum conj(x_i) * y_i, and basis expansions combine
coefficients on the right: x = sum z * <z|x>. Mixing sides is the dominant
bug class, so every helper here keeps coefficients on the right.
"""

from __future__ import annotations

import numpy as np

from . import qarray as qa
from .errors import IncompleteBasisError, RankDeficiencyError, ShapeError
from .quaternion import Quaternion

RANK_TOL = 1e-12


def _check_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x, y = qa.qarr(x), qa.qarr(y)
    if x.shape != y.shape or x.ndim != 2:
        raise ShapeError(f"vector shapes differ: {x.shape} vs {y.shape}")
    return x, y


def inner(x, y) -> Quaternion:
    """<x|y> = sum conj(x_i) * y_i."""
    x, y = _check_pair(x, y)
    return qa.to_quaternion(np.sum(qa.qmul(qa.qconj(x), y), axis=0))


def norm(x) -> float:
    return float(np.sqrt(np.sum(qa.qarr(x) ** 2)))


def scale_right(x, q: Quaternion) -> np.ndarray:
    """Entrywise x_i * q; satisfies ||x*q|| = ||x|| * |q|."""
    return qa.qscale_right(x, q)


def basis_vector(n: int, k: int) -> np.ndarray:
    out = np.zeros((n, 4), dtype=np.float64)
    out[k, 0] = 1.0
    return out


def gram_schmidt(vectors, rank_tol: float = RANK_TOL) -> list[np.ndarray]:
    """Orthonormalize with right-multiplying coefficients: v <- v - z * <z|v>.

    Modified Gram-Schmidt with one full re-orthogonalization pass, processed
    in input order. Raises RankDeficiencyError with the offending index when
    the residual norm falls below rank_tol before normalization.
    """
    done: list[np.ndarray] = []
    for idx, v in enumerate(vectors):
        u = qa.qarr(v).copy()
        for _ in range(2):
            for z in done:
                u = u - scale_right(z, inner(z, u))
        r = norm(u)
        if r < rank_tol:
            raise RankDeficiencyError(idx, r)
        done.append(u / r)
    return done


def orthonormality_defect(basis) -> float:
    """max |<z|z'> - delta| over all pairs."""
    worst = 0.0
    for i, z in enumerate(basis):
        for j, zp in enumerate(basis):
            g = inner(z, zp)
            target = Quaternion(1.0) if i == j else Quaternion()
            worst = max(worst, abs(g - target))
    return worst


def expand(x, basis, tol: float = 1e-10) -> list[Quaternion]:
    """Coefficients c_z = <z|x> with x = sum z * c_z.

    Raises IncompleteBasisError when the reconstruction misses x by more
    than tol * (1 + ||x||).
    """
    x = qa.qarr(x)
    coeffs = [inner(z, x) for z in basis]
    rec = reconstruct(basis, coeffs, like=x)
    miss = norm(x - rec)
    if miss > tol * (1.0 + norm(x)):
        raise IncompleteBasisError(f"basis reconstruction misses by {miss:.3e}")
    return coeffs


def reconstruct(basis, coeffs, like=None) -> np.ndarray:
    first = qa.qarr(basis[0]) if basis else qa.qarr(like)
    out = np.zeros_like(first)
    for z, c in zip(basis, coeffs):
        out = out + scale_right(z, c)
    return out
