"""Multiplication form of bounded normal quaternion matrices, spherical
spectra, the Delta-kernel oracle, and the classification corollaries.

The headline identity is A = U* M_phi U: U sends the eigenbasis to an atomic
L2 space (counting measure on eigenvalue indices, multiplicity as repeated
symbol values) and phi collects the standard eigenvalues in the closed upper
half slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qarray as qa
from .bridge import eig_normal_complex, spectral_decompose
from .errors import CrossCheckError, SymbolZeroError
from .measure import AtomicMeasureSpace, Symbol, ess_ran, ess_sup
from .operators import QMatrix, delta
from .quaternion import Quaternion, SimilarityOrbit, SliceFrame, cm_to_complex, orbit_of
from .slices import SliceStructure, restrict_minus, restrict_plus

FORM_RESIDUAL_TOL = 1e-9
ORBIT_DEDUP_TOL = 1e-9

_TINY = 1e-300


@dataclass
class MultiplicationForm:
    """A = U* M_phi U with unitary U onto an atomic L2 space."""

    U: QMatrix
    space: AtomicMeasureSpace
    phi: Symbol
    frame: SliceFrame
    residual: float

    def reconstruct(self) -> QMatrix:
        return self.U.H @ QMatrix(qa.left_diag_entries(self.phi.values)) @ self.U

    def phi_values(self) -> list[Quaternion]:
        return [Quaternion.from_array(row) for row in self.phi.values]


@dataclass
class SphereSpectrum:
    """Union of similarity orbits; the spherical spectrum at desk scale."""

    orbits: list[SimilarityOrbit]

    def contains(self, q: Quaternion, tol: float) -> bool:
        return any(o.contains(q, tol) for o in self.orbits)

    def distance(self, q: Quaternion) -> float:
        return min(o.distance(q) for o in self.orbits)


def multiplication_form(
    a: QMatrix, frame: SliceFrame, normal_tol: float = 1e-10
) -> MultiplicationForm:
    """Unitary reduction of a normal matrix to a multiplication operator.

    The emitted measure space is counting measure on eigenvalue indices so
    that U stays square; the symbol repeats a value per multiplicity. Both
    invariants are asserted: reconstruction to 1e-9 * ||A||_F and
    | ||A|| - ess sup |phi| | <= 1e-9 * ||A||.
    """
    dec = spectral_decompose(a, frame, normal_tol=normal_tol)
    n = a.n
    space = AtomicMeasureSpace.counting(n)
    phi = Symbol.from_values(space, dec.d, frame)
    u = dec.V.H

    form = MultiplicationForm(u, space, phi, frame, dec.residual)
    scale = max(a.frobenius(), _TINY)
    rec_err = (a - form.reconstruct()).frobenius()
    if rec_err > FORM_RESIDUAL_TOL * scale:
        raise CrossCheckError(f"multiplication form reconstruction off by {rec_err:.3e}")
    norm_gap = abs(a.op_norm() - ess_sup(phi))
    if norm_gap > FORM_RESIDUAL_TOL * max(a.op_norm(), 1.0):
        raise CrossCheckError(f"norm identity off by {norm_gap:.3e}")
    form.residual = max(dec.residual, rec_err)
    return form


def sphere_spectrum(form: MultiplicationForm, dedup_tol: float = ORBIT_DEDUP_TOL) -> SphereSpectrum:
    """Orbits of the essential range of the symbol."""
    orbits: list[SimilarityOrbit] = []
    for value in ess_ran(form.phi):
        cand = orbit_of(value)
        if not any(
            math.hypot(cand.re - o.re, cand.im_norm - o.im_norm) <= dedup_tol for o in orbits
        ):
            orbits.append(cand)
    return SphereSpectrum(orbits)


def oracle_scale(a: QMatrix) -> float:
    """Threshold scale for the Delta-kernel oracle: (1 + ||A||)^2."""
    return (1.0 + a.op_norm()) ** 2


def delta_oracle(a: QMatrix, probes: list[Quaternion], tol: float) -> list[bool]:
    """Mark each probe q whose Delta_q(A) has a numerical kernel.

    In-spectrum iff sigma_min(delta(a, q)) <= tol * (1 + ||A||)^2. This route
    never touches the eigendecomposition, so it is an independent check of
    the spectrum read off the multiplication form.
    """
    z = qa.to_complex_adjoint(a.a)
    z2 = z @ z
    ident = np.eye(z.shape[0])
    threshold = tol * oracle_scale(a)
    out = []
    for q in probes:
        dz = z2 - (2.0 * q.re) * z + q.norm_sq() * ident
        smin = float(np.linalg.svd(dz, compute_uv=False)[-1])
        out.append(smin <= threshold)
    return out


def fibonacci_sphere(count: int) -> np.ndarray:
    """Deterministic near-uniform directions on the unit 2-sphere."""
    t = np.arange(count, dtype=np.float64)
    z = 1.0 - (2.0 * t + 1.0) / count
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    golden = math.pi * (3.0 - math.sqrt(5.0))
    return np.stack([r * np.cos(golden * t), r * np.sin(golden * t), z], axis=1)


def on_sphere_probes(orbit: SimilarityOrbit, count: int = 16) -> list[Quaternion]:
    """Probes exactly on the orbit sphere via a Fibonacci lattice."""
    dirs = fibonacci_sphere(count)
    return [
        Quaternion(orbit.re, *(orbit.im_norm * d)) for d in dirs
    ]


def off_sphere_probes(
    orbit: SimilarityOrbit,
    spectrum: SphereSpectrum,
    margin: float,
    count: int = 16,
) -> list[Quaternion]:
    """Probes near the orbit but at distance >= margin from every orbit.

    Candidates circle the orbit point in the (re, |im|) half plane at growing
    radii until clear of the whole spectrum; a far-field fallback guarantees
    termination. Probe directions reuse the Fibonacci lattice so the oracle
    also sees varying imaginary directions.
    """
    dirs = fibonacci_sphere(count)
    far = max(abs(o.re) + o.im_norm for o in spectrum.orbits) + 1.0
    out = []
    for t in range(count):
        angle = 2.0 * math.pi * (t + 0.5) / count
        placed = None
        for attempt in range(40):
            r = margin * (1.3**attempt) * 1.5
            re = orbit.re + r * math.cos(angle)
            beta = abs(orbit.im_norm + r * math.sin(angle))
            cand = SimilarityOrbit(re, beta)
            if all(
                math.hypot(cand.re - o.re, cand.im_norm - o.im_norm) >= margin
                for o in spectrum.orbits
            ):
                placed = cand
                break
        if placed is None:
            placed = SimilarityOrbit(far + (t + 1) * margin, far)
        out.append(Quaternion(placed.re, *(placed.im_norm * dirs[t])))
    return out


def classify(form: MultiplicationForm, tol: float) -> dict[str, bool]:
    """Anti-self-adjointness and unitarity read off the symbol.

    anti_self_adjoint iff every positive-weight value has |re| <= tol;
    unitary iff every | |value| - 1 | <= tol. Both verdicts are cross-checked
    against ||A + A*|| and ||A*A - I|| on the reconstructed operator and a
    CrossCheckError is raised if the two routes disagree.
    """
    pos = form.space.positive()
    values = form.phi.values[pos]
    moduli = form.phi.moduli()[pos]
    anti_sym = bool(np.all(np.abs(values[:, 0]) <= tol))
    unit_sym = bool(np.all(np.abs(moduli - 1.0) <= tol))

    rec = form.reconstruct()
    ident = QMatrix.identity(rec.n)
    slack = 1e-12 * (1.0 + rec.op_norm())
    anti_op = (rec + rec.H).op_norm() <= 2.0 * tol + slack
    unit_op = ((rec.H @ rec) - ident).op_norm() <= 3.0 * tol + slack
    if anti_sym != anti_op or unit_sym != unit_op:
        raise CrossCheckError(
            f"symbol/operator classification disagrees: "
            f"anti {anti_sym}/{anti_op}, unitary {unit_sym}/{unit_op}"
        )
    return {"anti_self_adjoint": anti_sym, "unitary": unit_sym}


def conjugate_equivalence(form: MultiplicationForm) -> QMatrix:
    """Unitary W with A = W* A* W, built as U* M_rho U, rho = phi * n / |phi|.

    Requires the symbol to be nonzero on every positive-weight atom.
    """
    pos = np.flatnonzero(form.space.positive())
    moduli = form.phi.moduli()
    floor = 1e-12 * (1.0 + float(np.max(moduli)))
    for i in pos:
        if moduli[i] <= floor:
            raise SymbolZeroError(f"symbol vanishes on positive-weight atom {i}")

    rho = [
        (form.phi.value(int(i)) / moduli[int(i)]) * form.frame.n
        for i in range(form.space.n_atoms)
    ]
    w = form.U.H @ QMatrix.diag(rho) @ form.U

    rec = form.reconstruct()
    scale = max(rec.frobenius(), 1.0)
    unit_err = ((w.H @ w) - QMatrix.identity(w.n)).frobenius()
    conj_err = (rec - (w.H @ rec.H @ w)).frobenius()
    if unit_err > 1e-9 * w.n or conj_err > FORM_RESIDUAL_TOL * scale:
        raise CrossCheckError(
            f"conjugate equivalence failed: unitarity {unit_err:.3e}, residual {conj_err:.3e}"
        )
    return w


@dataclass
class SliceSpectrumReport:
    """Eigenvalues of the plus/minus restrictions against the orbit set."""

    plus_vals: list[Quaternion]
    minus_vals: list[Quaternion]
    orbit_reps: list[Quaternion]
    plus_deviation: float
    conj_deviation: float
    passed: bool


def slice_spectrum_check(
    a: QMatrix,
    s: SliceStructure,
    tol: float = 1e-8,
    form: MultiplicationForm | None = None,
) -> SliceSpectrumReport:
    """Check sigma(plus restriction) = spectrum orbits in C_m+, and that the
    minus restriction's eigenvalues are their conjugates."""
    frame = s.frame
    _, plus_vals = eig_normal_complex(restrict_plus(a, s))
    _, minus_vals = eig_normal_complex(restrict_minus(a, s))

    if form is None:
        form = multiplication_form(a, frame)
    reps = [o.representative(frame) for o in sphere_spectrum(form).orbits]

    plus_c = np.array([cm_to_complex(v, frame) for v in plus_vals])
    minus_c = np.array([cm_to_complex(v, frame) for v in minus_vals])
    reps_c = np.array([cm_to_complex(v, frame) for v in reps])

    # Hausdorff distance between the eigenvalue set and the orbit reps.
    plus_dev = max(
        float(np.max([np.min(np.abs(reps_c - v)) for v in plus_c])),
        float(np.max([np.min(np.abs(plus_c - v)) for v in reps_c])),
    )
    # Multiset match of plus eigenvalues against conjugated minus ones.
    conj_dev = float(
        np.max(np.abs(np.sort_complex(plus_c) - np.sort_complex(np.conj(minus_c))))
    )
    scale = max(a.op_norm(), 1.0)
    passed = plus_dev <= tol * scale and conj_dev <= tol * scale
    return SliceSpectrumReport(plus_vals, minus_vals, reps, plus_dev, conj_dev, passed)
