"""Lattice-point generating functions of rational cones with nonnegative
certificates, and local Hirzebruch classes of affine toric varieties."""

from .cone import (
    Cone,
    Fan,
    FaceLattice,
    GeneratorSet,
    Triangulation,
    dual_cone,
    dual_face,
    face_lattice,
    parallelepiped_points,
    semigroup_generators,
    triangulate,
)
from .errors import InputError, ToricError
from .genfun import (
    CertifiedConeSum,
    GroupRingElement,
    RationalGenFun,
    SPolynomial,
    closed_sum,
    decompose_in_generators,
    euler_multiplicity,
    genfun_equal,
    geometric_sum_simplicial,
    interior_sum,
)
from .hirzebruch import (
    ChiYPolynomial,
    HirzebruchLocalClass,
    LaurentExpansion,
    chi_y,
    laurent_expand,
    local_class,
    open_orbit_class,
    todd_specialize,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CertifiedConeSum", "ChiYPolynomial", "Cone", "FaceLattice", "Fan", "GeneratorSet",
    "GroupRingElement", "HirzebruchLocalClass", "InputError", "LaurentExpansion", "RationalGenFun",
    "SPolynomial", "ToricError", "Triangulation", "chi_y", "closed_sum", "decompose_in_generators",
    "dual_cone", "dual_face", "euler_multiplicity", "face_lattice", "genfun_equal",
    "geometric_sum_simplicial", "interior_sum", "laurent_expand", "local_class", "open_orbit_class",
    "parallelepiped_points", "semigroup_generators", "todd_specialize", "triangulate",
]
