"""Numerical verification of multiplication-form spectral theorems for
quaternionic normal operators on finite-dimensional right Hilbert modules."""

from .quaternion import (
    DEFAULT_TOL,
    I,
    J,
    K,
    ONE,
    ZERO,
    Quaternion,
    SimilarityOrbit,
    SliceFrame,
    STANDARD_FRAME,
    cm_plus_rep,
    cm_to_complex,
    complex_to_cm,
    conj_mod,
    frame_complete,
    in_slice,
    mul,
    orbit_contains,
    orbit_of,
    slice_join,
    slice_split,
)
from .operators import QMatrix, adjoint, delta, is_normal, op_norm, sigma_min
from .vectors import expand, gram_schmidt, inner, norm, reconstruct, scale_right
from .bridge import CMatrix, SpectralDecomposition, chi, eig_normal_complex, spectral_decompose
from .slices import SliceStructure, build_J, extend, quaternionify, restrict_plus
from .measure import AtomicMeasureSpace, L2Element, Symbol, ess_ran, ess_sup, m_phi
from .spectral import (
    MultiplicationForm,
    SphereSpectrum,
    delta_oracle,
    multiplication_form,
    sphere_spectrum,
)
from .transform import BoundedTransform, bounded_transform, inverse_transform

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasureSpace",
    "BoundedTransform",
    "CMatrix",
    "DEFAULT_TOL",
    "I",
    "J",
    "K",
    "L2Element",
    "MultiplicationForm",
    "ONE",
    "QMatrix",
    "Quaternion",
    "SimilarityOrbit",
    "SliceFrame",
    "SliceStructure",
    "SpectralDecomposition",
    "SphereSpectrum",
    "STANDARD_FRAME",
    "Symbol",
    "ZERO",
    "adjoint",
    "bounded_transform",
    "build_J",
    "chi",
    "cm_plus_rep",
    "cm_to_complex",
    "complex_to_cm",
    "conj_mod",
    "delta",
    "delta_oracle",
    "eig_normal_complex",
    "ess_ran",
    "ess_sup",
    "expand",
    "extend",
    "frame_complete",
    "gram_schmidt",
    "in_slice",
    "inner",
    "inverse_transform",
    "is_normal",
    "m_phi",
    "mul",
    "multiplication_form",
    "norm",
    "op_norm",
    "orbit_contains",
    "orbit_of",
    "quaternionify",
    "reconstruct",
    "restrict_plus",
    "scale_right",
    "sigma_min",
    "slice_join",
    "slice_split",
    "spectral_decompose",
    "sphere_spectrum",
    "__version__",
]
