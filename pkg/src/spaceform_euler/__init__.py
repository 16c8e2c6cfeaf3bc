"""Exact Gauss–Bonnet–Chern bookkeeping for hypersurfaces in space forms."""

from .errors import SpaceformError
from .exactnum import LAMBDA, PiGraded, QuadExt, RatFunc, UniPoly, sphere_volume
from .isopar import IsoparFamily, chi_density, compare_closed_forms
from .spaceform import CliffordProduct, GeodesicSphere, euler_characteristic_closed
from .symcurv import CurvatureSpec, all_symmetric, weil_invariant

__version__ = "0.1.0"

__all__ = [
    "SpaceformError",
    "LAMBDA",
    "PiGraded",
    "QuadExt",
    "RatFunc",
    "UniPoly",
    "sphere_volume",
    "IsoparFamily",
    "chi_density",
    "compare_closed_forms",
    "CliffordProduct",
    "GeodesicSphere",
    "euler_characteristic_closed",
    "CurvatureSpec",
    "all_symmetric",
    "weil_invariant",
]
