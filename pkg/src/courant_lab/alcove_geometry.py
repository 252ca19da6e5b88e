"""Lattice bases, coordinate systems, reflection-group action and
point-in-domain predicates for the equilateral torus and the alcove triangles.

Coordinates: a point may be given in Euclidean coordinates (x, y) or in
alcove coordinates (s, t), meaning s*alpha1 + t*alpha2 in the coroot basis.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

SQRT3 = math.sqrt(3.0)


class CartesianPoint(NamedTuple):
    x: float
    y: float


class AlcovePoint(NamedTuple):
    s: float
    t: float


@dataclass(frozen=True)
class LatticeBasis:
    alpha1_check: CartesianPoint
    alpha2_check: CartesianPoint
    alpha3_check: CartesianPoint
    omega1: CartesianPoint
    omega2: CartesianPoint


# All constants are derived from a single sqrt(3) so the duality and sum
# identities hold to a couple of ulp.
BASIS = LatticeBasis(
    alpha1_check=CartesianPoint(1.5, -SQRT3 / 2.0),
    alpha2_check=CartesianPoint(0.0, SQRT3),
    alpha3_check=CartesianPoint(1.5, SQRT3 / 2.0),
    omega1=CartesianPoint(2.0 / 3.0, 0.0),
    omega2=CartesianPoint(1.0 / 3.0, 1.0 / SQRT3),
)


class DomainKind(Enum):
    TORUS = "torus"
    EQUILATERAL = "equilateral"
    RIGHT_ISOSCELES = "right-isosceles"
    HEMIEQUILATERAL = "hemiequilateral"


# Half-plane tolerance for the closed point-in-triangle test; the strict
# variant uses the negated tolerance so grid points exactly on an edge are out.
EDGE_TOL = 1e-12


def to_cartesian(p) -> CartesianPoint:
    """Map alcove coordinates (s, t) to Euclidean (x, y) = s*a1 + t*a2."""
    s, t = p
    return CartesianPoint(1.5 * s, SQRT3 * (t - 0.5 * s))


def to_alcove(q) -> AlcovePoint:
    """Inverse of to_cartesian."""
    x, y = q
    s = 2.0 * x / 3.0
    return AlcovePoint(s, y / SQRT3 + 0.5 * s)


# The six reflection-group images of a dual-lattice pair (m, n), as
# (determinant sign, phase) where the eigenfunction term is sign*e^{2 i pi phase}.
_WEYL_TABLE = (
    (+1, lambda m, n, s, t: m * s + n * t),
    (-1, lambda m, n, s, t: -m * s + (m + n) * t),
    (-1, lambda m, n, s, t: (m + n) * s - n * t),
    (-1, lambda m, n, s, t: -n * s - m * t),
    (+1, lambda m, n, s, t: n * s - (m + n) * t),
    (+1, lambda m, n, s, t: -(m + n) * s + m * t),
)

# Same data in coefficient form (a, b) with phase = a*s + b*t, handy for
# analytic derivatives and vectorized evaluation.
def weyl_coefficients(m: int, n: int):
    return (
        (+1, m, n),
        (-1, -m, m + n),
        (-1, m + n, -n),
        (-1, -n, -m),
        (+1, n, -(m + n)),
        (+1, -(m + n), m),
    )


def weyl_images(m: int, n: int, s: float, t: float):
    """The six (sign, phase) pairs of the reflection-group orbit of (m, n)."""
    return [(sign, phase(m, n, s, t)) for sign, phase in _WEYL_TABLE]


def _in_triangle(s, t, tol):
    # Alcove with vertices O=(0,0), A=(2/3,1/3), B=(1/3,2/3): half-planes
    # t >= s/2 (edge OA), s >= t/2 (edge OB), s + t <= 1 (edge AB).
    return (t - 0.5 * s >= -tol) and (s - 0.5 * t >= -tol) and (1.0 - s - t >= -tol)


def in_domain(d: DomainKind, p, strict: bool = False) -> bool:
    """Closed-domain membership; strict=True excludes the boundary.

    Right-isosceles points are Euclidean (x, y) in [0, pi]^2; the other
    domains use alcove coordinates. The torus has no boundary.
    """
    tol = -EDGE_TOL if strict else EDGE_TOL
    if d is DomainKind.TORUS:
        return True
    if d is DomainKind.RIGHT_ISOSCELES:
        x, y = p
        return (y >= -tol) and (x - y >= -tol) and (math.pi - x >= -tol)
    s, t = p
    if d is DomainKind.EQUILATERAL:
        return _in_triangle(s, t, tol)
    if d is DomainKind.HEMIEQUILATERAL:
        return _in_triangle(s, t, tol) and (s - t >= -tol)
    raise ValueError(f"unknown domain {d!r}")


_SYMMETRIES = {
    1: lambda s, t: (t, s),
    2: lambda s, t: (-s + 2.0 / 3.0, t - s + 1.0 / 3.0),
    3: lambda s, t: (s - t + 1.0 / 3.0, -t + 2.0 / 3.0),
    "rot+": lambda s, t: (-t + 2.0 / 3.0, s - t + 1.0 / 3.0),
    "rot-": lambda s, t: (t - s + 1.0 / 3.0, -s + 2.0 / 3.0),
}


def apply_symmetry(k, p) -> AlcovePoint:
    """Apply a mirror (k in {1,2,3}) or rotation ('rot+', 'rot-') to (s, t)."""
    try:
        sym = _SYMMETRIES[k]
    except KeyError:
        raise ValueError(f"unknown symmetry {k!r}") from None
    s, t = p
    return AlcovePoint(*sym(s, t))
