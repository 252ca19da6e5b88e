"""Closed-form eigenfunction evaluation: torus exponentials, the six-term
C/S sums and their mixtures Psi^theta on the equilateral triangle (also used
for the hemiequilateral), the antisymmetrized sine products on the
right-isosceles triangle, and the symmetry action on the mixing angle.

Evaluators accept scalars or numpy arrays in (s, t); gradients are analytic
(term-by-term differentiation), never internal finite differences.
"""

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from .alcove_geometry import DomainKind, weyl_coefficients
from .lattice_spectrum import Mode

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class EigenfunctionHandle:
    domain: DomainKind
    mode: Mode
    theta: float = 0.0


class EvalResult(NamedTuple):
    value: float
    grad_s: float
    grad_t: float


def eval_torus_mode(m: int, n: int, s: float, t: float) -> complex:
    """Unit-modulus exponential e^{2 i pi (m s + n t)}."""
    return cmath.exp(2j * math.pi * (m * s + n * t))


def eval_C(m, n, s, t):
    """Six-term cosine sum; identically zero when m == n."""
    acc = 0.0
    for sign, a, b in weyl_coefficients(m, n):
        acc = acc + sign * np.cos(TWO_PI * (a * s + b * t))
    return acc


def eval_S(m, n, s, t):
    """Six-term sine sum; symmetric in (m, n)."""
    acc = 0.0
    for sign, a, b in weyl_coefficients(m, n):
        acc = acc + sign * np.sin(TWO_PI * (a * s + b * t))
    return acc


def eval_psi_grid(m, n, theta, s, t):
    """cos(theta)*C + sin(theta)*S, vectorized over numpy arrays."""
    return math.cos(theta) * eval_C(m, n, s, t) + math.sin(theta) * eval_S(m, n, s, t)


def eval_psi(h: EigenfunctionHandle, s: float, t: float) -> EvalResult:
    """Value and analytic partials of Psi^theta at (s, t)."""
    if h.domain not in (DomainKind.EQUILATERAL, DomainKind.HEMIEQUILATERAL):
        raise ValueError("eval_psi applies to the triangle C/S families")
    m, n = h.mode
    ct, st = math.cos(h.theta), math.sin(h.theta)
    val = gs = gt = 0.0
    for sign, a, b in weyl_coefficients(m, n):
        phase = TWO_PI * (a * s + b * t)
        c, sn = math.cos(phase), math.sin(phase)
        # term = ct*cos(phase) + st*sin(phase), d/ds phase = 2 pi a
        val += sign * (ct * c + st * sn)
        dterm = ct * (-sn) + st * c
        gs += sign * TWO_PI * a * dterm
        gt += sign * TWO_PI * b * dterm
    return EvalResult(val, gs, gt)


def eval_isosceles(m: int, n: int, x, y):
    """sin(mx)sin(ny) - sin(nx)sin(my) on the half-square 0 < y < x < pi."""
    if not m > n >= 1:
        raise ValueError("need m > n >= 1")
    return np.sin(m * x) * np.sin(n * y) - np.sin(n * x) * np.sin(m * y)


def alpha_mn(m: int, n: int) -> float:
    return TWO_PI * (2 * m + n) / 3.0


def pullback_theta(sym, pair: Mode, theta: float) -> Tuple[float, int]:
    """Mixing angle theta' with Psi^theta o sym = sign * Psi^theta'.

    sym is a mirror 1/2/3 or a rotation 'rot+'/'rot-'; theta' is reduced to
    [0, 2 pi) and the sign is always +1 in that representation.
    """
    m, n = pair
    a = alpha_mn(m, n)
    if sym == 1:
        new = math.pi - theta
    elif sym == 2:
        new = math.pi + a - theta
    elif sym == 3:
        new = math.pi - a - theta
    elif sym == "rot+":
        new = theta - a
    elif sym == "rot-":
        new = theta + a
    else:
        raise ValueError(f"unknown symmetry {sym!r}")
    return new % TWO_PI, 1
