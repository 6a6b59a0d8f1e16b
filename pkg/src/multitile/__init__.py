"""Exact-arithmetic decisions for lattice multi-tiling, lattice-translation
equidecomposability, and per-flag-orbit invariants of polytopes and of formal
integer combinations of polytopes (with sampling and transform oracles)."""

from .exact import Mat, Rational, Vec, mat, vec
from .geom import (
    GroupElement,
    Polytope,
    Simplex,
    canonicalize,
    convex_hull,
    indicator_value,
    intersect_convex,
    subtract,
    volume,
)
from .invariants import (
    AffineFlag,
    HadwigerReport,
    TilingVerdict,
    equidecomposable,
    group_equivalent,
    h_at_flag,
    hadwiger_accumulate,
    is_tiling,
)
from .lattice import Lattice, coset_contains, det_lattice, dual_basis, reduce_mod
from .decomp import (
    DecompositionCertificate,
    check_certificate,
    equidecompose,
    overlap_set,
    represent_zero_tiler,
)
from .verify import fourier_check, fourier_transform, multiplicity_at, sample_tiling

__all__ = [
    "AffineFlag",
    "DecompositionCertificate",
    "GroupElement",
    "HadwigerReport",
    "Lattice",
    "Mat",
    "Polytope",
    "Rational",
    "Simplex",
    "TilingVerdict",
    "Vec",
    "canonicalize",
    "check_certificate",
    "convex_hull",
    "coset_contains",
    "det_lattice",
    "dual_basis",
    "equidecomposable",
    "equidecompose",
    "fourier_check",
    "fourier_transform",
    "group_equivalent",
    "h_at_flag",
    "hadwiger_accumulate",
    "indicator_value",
    "intersect_convex",
    "is_tiling",
    "mat",
    "multiplicity_at",
    "overlap_set",
    "represent_zero_tiler",
    "reduce_mod",
    "sample_tiling",
    "subtract",
    "vec",
    "volume",
]

__version__ = "0.1.0"
