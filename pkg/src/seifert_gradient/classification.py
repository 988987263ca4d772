"""
Finiteness of pi_1, virtual fibering, geometry and the sign of the
infimal Heegaard gradient.

Everything is decided from the pair (sign of chi(O), whether e(M) = 0).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .seifert_core import (
    SeifertError,
    SeifertInvariants,
    euler_number,
    orbifold_euler_characteristic,
    require_closed,
)

__all__ = [
    "GeometryType",
    "GradientSign",
    "Classification",
    "has_finite_pi1",
    "virtually_fibers_over_circle",
    "virtually_fibers_over_surface",
    "geometry",
    "heegaard_gradient_sign",
    "universal_cover_term",
    "is_irreducible",
    "classify",
]


class GeometryType(enum.Enum):
    SPHERICAL = "Spherical"
    S2XR = "S2xR"
    EUCLIDEAN = "Euclidean"
    NIL = "Nil"
    H2XR = "H2xR"
    SL2R = "SL2R-tilde"


class GradientSign(enum.Enum):
    NEGATIVE = "Negative"
    ZERO = "Zero"


# (sign of chi(O), e == 0) -> geometry
_GEOMETRY_TABLE = {
    (1, False): GeometryType.SPHERICAL,
    (1, True): GeometryType.S2XR,
    (0, True): GeometryType.EUCLIDEAN,
    (0, False): GeometryType.NIL,
    (-1, True): GeometryType.H2XR,
    (-1, False): GeometryType.SL2R,
}


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def has_finite_pi1(M: SeifertInvariants) -> bool:
    """True iff chi(O) > 0 and e(M) != 0.  Bounded manifolds are rejected."""
    require_closed(M)
    return orbifold_euler_characteristic(M) > 0 and euler_number(M) != 0


def virtually_fibers_over_circle(M: SeifertInvariants) -> bool:
    """
    True when e(M) = 0, and also for Nil manifolds (e != 0, chi(O) = 0),
    which are virtually torus bundles over the circle.
    """
    # a Seifert space with boundary always has e = 0
    if not M.is_closed:
        return True
    return euler_number(M) == 0 or orbifold_euler_characteristic(M) == 0


def virtually_fibers_over_surface(M: SeifertInvariants) -> bool:
    """
    Whether M virtually fibers over the circle or over a surface other than
    the 2-sphere, i.e. whether pi_1(M) is infinite.
    """
    if not M.is_closed:
        return True
    return not has_finite_pi1(M)


def geometry(M: SeifertInvariants) -> GeometryType:
    require_closed(M)
    chi = orbifold_euler_characteristic(M)
    return _GEOMETRY_TABLE[_sign(chi), euler_number(M) == 0]


def heegaard_gradient_sign(M: SeifertInvariants) -> GradientSign:
    if not M.is_closed:
        return GradientSign.ZERO
    return GradientSign.NEGATIVE if has_finite_pi1(M) else GradientSign.ZERO


def universal_cover_term(degree: int) -> Fraction:
    """chi^h_-(S^3)/d for the universal cover of a spherical manifold of order d."""
    if degree < 1:
        raise SeifertError("covering degree must be positive")
    return Fraction(-2, degree)


def is_irreducible(M: SeifertInvariants) -> bool:
    """Closed SFS with orientable base is reducible exactly in the S2xR case."""
    return geometry(M) is not GeometryType.S2XR


@dataclass(frozen=True)
class Classification:
    manifold: SeifertInvariants
    orbifold_euler_characteristic: Fraction
    euler_number: Fraction
    geometry: GeometryType
    finite_pi1: bool
    fibers_over_circle: bool
    fibers_over_surface: bool
    gradient_sign: GradientSign


def classify(M: SeifertInvariants) -> Classification:
    return Classification(
        manifold=M,
        orbifold_euler_characteristic=orbifold_euler_characteristic(M),
        euler_number=euler_number(M),
        geometry=geometry(M),
        finite_pi1=has_finite_pi1(M),
        fibers_over_circle=virtually_fibers_over_circle(M),
        fibers_over_surface=virtually_fibers_over_surface(M),
        gradient_sign=heegaard_gradient_sign(M),
    )
