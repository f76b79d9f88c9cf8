"""Golden scenario: a line-segment multiplication operator whose symbol
sweeps the imaginary direction (i - j - k)/sqrt(3), conjugated onto the
standard slice by an explicit unit quaternion.

With u = ((sqrt(3)+1) - j + k) / sqrt(6 + 2 sqrt(3)) one has
conj(u) * (sqrt(3) i) * u = i - j - k exactly, so the multiplier with values
(i - j - k) t on a grid of [0, 1] is unitarily equivalent to the standard
slice multiplier with values sqrt(3) i t; all residuals here sit at rounding
level and make a sharp end-to-end check of the measure machinery.
"""

from __future__ import annotations

import math

import numpy as np

from .measure import AtomicMeasureSpace, Symbol, m_phi_norm
from .operators import QMatrix
from .quaternion import I, J, K, Quaternion, SliceFrame, STANDARD_FRAME
from .report import VerificationReport, check_from


def conjugating_unit() -> Quaternion:
    s = math.sqrt(3.0) + 1.0
    return Quaternion(s, 0.0, -1.0, 1.0) / math.sqrt(6.0 + 2.0 * math.sqrt(3.0))


def run_example(grid_n: int) -> VerificationReport:
    if grid_n < 2:
        raise ValueError("grid must have at least 2 points")
    grid = np.array([t / (grid_n - 1) for t in range(grid_n)])
    space = AtomicMeasureSpace.from_labels(
        [Quaternion(t) for t in grid], np.full(grid_n, 1.0 / grid_n)
    )

    direction = (I - J - K) / math.sqrt(3.0)
    phi_frame = SliceFrame.from_m(direction)
    phi = Symbol.from_values(
        space, [direction * (math.sqrt(3.0) * t) for t in grid], phi_frame
    )
    eta = Symbol.from_values(
        space, [I * (math.sqrt(3.0) * t) for t in grid], STANDARD_FRAME
    )

    u = conjugating_unit()
    unit_err = abs(abs(u) - 1.0)
    conj_err = abs(u.conjugate() * (I * math.sqrt(3.0)) * u - (I - J - K))

    # U* M_eta U acts pointwise by conj(u) * eta(t) * u, so the operator-norm
    # distance to M_phi is the largest pointwise multiplier gap; the doubled
    # complex embedding of the diagonal difference gives a second route.
    conjugated = [u.conjugate() * eta.value(t) * u for t in range(grid_n)]
    op_err = max(abs(c - phi.value(t)) for t, c in enumerate(conjugated))
    op_err_svd = (QMatrix.diag(conjugated) - QMatrix.diag(phi.values)).op_norm()

    expected_norm = math.sqrt(3.0) * float(np.max(grid))
    norm_err = abs(m_phi_norm(phi) - expected_norm)

    checks = [
        check_from("example.unit_modulus", unit_err, 1e-15),
        check_from("example.conjugation_identity", conj_err, 1e-14),
        check_from("example.multiplier_equivalence", op_err, 1e-12),
        check_from("example.multiplier_equivalence_opnorm", op_err_svd, 1e-12),
        check_from("example.norm_matches_ess_sup", norm_err, 1e-12),
    ]
    return VerificationReport("example", checks, extra={"grid": grid_n})
