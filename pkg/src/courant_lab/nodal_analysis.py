"""Fixed points on medians, barrier-line restrictions, critical zeros by
root-finding, Wronskian simplicity checks, the mixing-angle bifurcation, and
nodal-domain counting by sign-grid flood fill."""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import ndimage, optimize

from .alcove_geometry import AlcovePoint, DomainKind
from .eigenfunction_eval import (EigenfunctionHandle, eval_C, eval_isosceles,
                                 eval_psi, eval_psi_grid, eval_S)
from .lattice_spectrum import Mode

PI = math.pi

# Relative half-width of the zero band in the sign grid.  1e-5 (rather than a
# tighter band) is required so that the single grid pixel closest to a
# multi-valent vertex of the nodal set, whose value scales like h^3, is
# classified as zero instead of surviving as a spurious one-pixel component.
ZERO_BAND_REL = 1e-5

_PAIRS = (Mode(1, 3), Mode(2, 3))


def _check_pair(pair) -> Mode:
    pair = Mode(*pair)
    if pair not in _PAIRS:
        raise ValueError(f"pair {pair} not supported (use (1,3) or (2,3))")
    return pair


# ---------------------------------------------------------------------------
# Edge-derivative functions FC/FS and their reduced forms GC/GS.
# On each boundary edge both partials of C (resp. S) are proportional to
# FC (resp. FS) of the edge parameter; GC/GS drop the factors that vanish
# only at the vertices, so zeros of K = cos(theta) GC +/- sin(theta) GS on
# the open edges are exactly the edge critical zeros of Psi^theta.
# ---------------------------------------------------------------------------

def fc(pair: Mode, u):
    if pair == (1, 3):
        return -np.sin(7 * PI * u) + 3 * np.sin(5 * PI * u) - 4 * np.sin(2 * PI * u)
    return -2 * np.sin(8 * PI * u) + 3 * np.sin(7 * PI * u) - 5 * np.sin(PI * u)


def fs(pair: Mode, u):
    if pair == (1, 3):
        return -np.cos(7 * PI * u) - 3 * np.cos(5 * PI * u) + 4 * np.cos(2 * PI * u)
    return -2 * np.cos(8 * PI * u) - 3 * np.cos(7 * PI * u) + 5 * np.cos(PI * u)


def fc_prime(pair: Mode, u):
    if pair == (1, 3):
        return PI * (-7 * np.cos(7 * PI * u) + 15 * np.cos(5 * PI * u)
                     - 8 * np.cos(2 * PI * u))
    return PI * (-16 * np.cos(8 * PI * u) + 21 * np.cos(7 * PI * u)
                 - 5 * np.cos(PI * u))


def fs_prime(pair: Mode, u):
    if pair == (1, 3):
        return PI * (7 * np.sin(7 * PI * u) + 15 * np.sin(5 * PI * u)
                     - 8 * np.sin(2 * PI * u))
    return PI * (16 * np.sin(8 * PI * u) + 21 * np.sin(7 * PI * u)
                 - 5 * np.sin(PI * u))


# Reduction polynomials, ascending coefficients.
_P_C = {Mode(1, 3): (-1.0, 4.0, 4.0),                 # 4x^2 + 4x - 1
        Mode(2, 3): (1.0, -4.0, 2.0, 8.0)}            # 8x^3 + 2x^2 - 4x + 1
_P_S = {Mode(1, 3): (-1.0, 1.0, -1.0, 0.0, 4.0),      # 4x^4 - x^2 + x - 1
        Mode(2, 3): (-0.25, 4.0, -4.0, -10.0, 6.0, 8.0)}
# -6x^5 + 25x^3 - 15x^2 - 15x + 11; the (2,3) Wronskian is 16 pi P_W(cos 3 pi u)
_P_W = (11.0, -15.0, -15.0, 25.0, 0.0, -6.0)


def _polyval(coeffs, x):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _polyder(coeffs):
    return tuple(k * c for k, c in enumerate(coeffs))[1:]


def gc(pair: Mode, u):
    c = np.cos(PI * u)
    return np.sin(PI * u) * (c - 1.0) * _polyval(_P_C[pair], c)


def gs(pair: Mode, u):
    return _polyval(_P_S[pair], np.cos(PI * u))


def gc_prime(pair: Mode, u):
    c = np.cos(PI * u)
    s = np.sin(PI * u)
    g = (c - 1.0) * _polyval(_P_C[pair], c)
    dg = _polyval(_P_C[pair], c) + (c - 1.0) * _polyval(_polyder(_P_C[pair]), c)
    return PI * (c * g - s * s * dg)


def gs_prime(pair: Mode, u):
    c = np.cos(PI * u)
    return -PI * np.sin(PI * u) * _polyval(_polyder(_P_S[pair]), c)


# ---------------------------------------------------------------------------
# Root-finding protocol: sample, bracket, bisect, one Newton polish.
# ---------------------------------------------------------------------------

def find_roots(f, lo: float, hi: float, df=None, samples: int = 4096,
               include_tangent: bool = False) -> List[float]:
    """All roots of f on (lo, hi) via uniform sampling + bracketed bisection,
    optionally adding tangent (even-order) roots found as roots of df where
    |f| is at noise level."""
    xs = np.linspace(lo, hi, samples)
    ys = np.asarray(f(xs), dtype=float)
    scale = float(np.max(np.abs(ys))) or 1.0
    roots = []
    sign = np.sign(ys)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        r = optimize.brentq(f, xs[i], xs[i + 1], xtol=1e-13)
        if df is not None:
            d = df(r)
            if d != 0.0:
                step = f(r) / d
                if abs(step) < (xs[1] - xs[0]):
                    r -= step
            roots.append(min(max(r, lo), hi))
        else:
            roots.append(r)
    # grid points that are exact zeros
    for i in np.nonzero(sign == 0)[0]:
        roots.append(float(xs[i]))
    if include_tangent and df is not None:
        for r in find_roots(df, lo, hi, samples=samples):
            if abs(f(r)) < 1e-9 * scale:
                roots.append(r)
    roots.sort()
    out = []
    for r in roots:
        if not out or abs(r - out[-1]) > 1e-9:
            out.append(r)
    return out


def polynomial_roots_unit_interval(pair, which: str) -> List[float]:
    """Real roots in [-1, 1] of the pair's reduction polynomial P_C or P_S,
    or of the Wronskian polynomial P_W, each refined to 1e-12."""
    pair = _check_pair(pair)
    if which == "P_C":
        coeffs = _P_C[pair]
    elif which == "P_S":
        coeffs = _P_S[pair]
    elif which == "P_W":
        if pair != (2, 3):
            raise ValueError("P_W is defined for the (2,3) pair")
        coeffs = _P_W
    else:
        raise ValueError(f"unknown polynomial {which!r}")
    raw = np.roots(list(reversed(coeffs)))
    # multiple roots surface from np.roots as clusters with O(1e-5) spread and
    # imaginary parts of the same size, so the filters must be loose here
    real = sorted(float(r.real) for r in raw
                  if abs(r.imag) < 1e-4 and -1.0 - 1e-6 <= r.real <= 1.0 + 1e-6)
    clusters: List[List[float]] = []
    for r in real:
        if clusters and r - clusters[-1][-1] < 1e-3:
            clusters[-1].append(r)
        else:
            clusters.append([r])
    out = []
    for cl in clusters:
        x = sum(cl) / len(cl)
        d = coeffs
        for _ in range(len(cl) - 1):
            d = _polyder(d)
        dd = _polyder(d)
        for _ in range(60):
            step = _polyval(d, x) / _polyval(dd, x)
            x -= step
            if abs(step) < 1e-15:
                break
        out.append(min(1.0, max(-1.0, x)))
    return out


# ---------------------------------------------------------------------------
# Fixed points and critical zeros.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixedPoint:
    location: AlcovePoint
    label: str


@dataclass(frozen=True)
class CriticalZero:
    location: AlcovePoint
    edge_or_median: str
    parameter_u: float
    order: int


_FIXED_POINTS = {
    Mode(1, 3): (
        ("F_C", (1 / 3, 1 / 3)), ("F_O", (1 / 4, 1 / 4)),
        ("F_A", (5 / 12, 1 / 3)), ("F_B", (1 / 3, 5 / 12)),
    ),
    Mode(2, 3): (
        ("F_C", (1 / 3, 1 / 3)), ("F_{1,O}", (1 / 5, 1 / 5)),
        ("F_{2,O}", (2 / 5, 2 / 5)), ("F_{1,A}", (7 / 15, 1 / 3)),
        ("F_{2,A}", (4 / 15, 1 / 3)), ("F_{1,B}", (1 / 3, 7 / 15)),
        ("F_{2,B}", (1 / 3, 4 / 15)),
    ),
}


def median_fixed_points(pair) -> List[FixedPoint]:
    """Common zeros of the C/S pair located on the medians."""
    pair = _check_pair(pair)
    out = []
    for label, (s, t) in _FIXED_POINTS[pair]:
        resid = abs(eval_C(*pair, s, t)) + abs(eval_S(*pair, s, t))
        if resid > 1e-12:
            raise AssertionError(f"fixed point {label} residual {resid:g}")
        out.append(FixedPoint(AlcovePoint(s, t), label))
    return out


def edge_restriction_roots(pair, a: float, theta: float) -> List[float]:
    """Zeros of u -> Psi^theta(u, a-u) on [a/3, 2a/3] (the chord s+t=a),
    including tangential double roots."""
    pair = _check_pair(pair)
    if not 0.0 < a < 1.0:
        raise ValueError("a must be in (0, 1)")
    m, n = pair

    from .alcove_geometry import weyl_coefficients
    ct, st = math.cos(theta), math.sin(theta)
    coeffs = weyl_coefficients(m, n)

    def f(u):
        return eval_psi_grid(m, n, theta, u, a - u)

    def df(u):
        # directional derivative of Psi along the chord direction (1, -1)
        acc = 0.0
        for sign, p, q in coeffs:
            phase = 2.0 * PI * (p * np.asarray(u) + q * (a - np.asarray(u)))
            acc = acc + sign * 2.0 * PI * (p - q) * (st * np.cos(phase)
                                                     - ct * np.sin(phase))
        return acc

    # the chord endpoints sit on the boundary edges, where the restriction
    # vanishes trivially; only interior intersections are reported
    lo, hi = a / 3.0, 2.0 * a / 3.0
    margin = (hi - lo) * 1e-6
    return find_roots(f, lo + margin, hi - margin, df=df, include_tangent=True)


_EDGE_PARAM = {
    "OA": lambda u: AlcovePoint(u, u / 2.0),
    "OB": lambda u: AlcovePoint(u / 2.0, u),
    "BA": lambda u: AlcovePoint(u / 2.0, 1.0 - u / 2.0),
}


def _k_theta(pair: Mode, theta: float, sign: int):
    ct, st = math.cos(theta), math.sin(theta)

    def k(u):
        return ct * gc(pair, u) + sign * st * gs(pair, u)

    def dk(u):
        return ct * gc_prime(pair, u) + sign * st * gs_prime(pair, u)

    return k, dk


def edge_critical_zeros(pair, theta: float) -> List[CriticalZero]:
    """Critical zeros of Psi^theta on the open edges, for theta in (0, pi/6]."""
    pair = _check_pair(pair)
    if not 0.0 < theta <= PI / 6.0 + 1e-12:
        raise ValueError("theta must be in (0, pi/6]")
    eps = 1e-9
    plan = (("OA", +1, eps, 2.0 / 3.0 - eps),
            ("OB", -1, eps, 2.0 / 3.0 - eps),
            ("BA", -1, 2.0 / 3.0 + eps, 4.0 / 3.0 - eps))
    zeros = []
    for edge, sign, lo, hi in plan:
        k, dk = _k_theta(pair, theta, sign)
        for u in find_roots(k, lo, hi, df=dk, include_tangent=True):
            order = 3 if abs(dk(u)) < 1e-6 else 2
            zeros.append(CriticalZero(_EDGE_PARAM[edge](u), edge, u, order))
    return zeros


def median_critical_zeros(pair, which: str) -> List[CriticalZero]:
    """Critical zeros on the median from O, parametrized by u -> (u/2, u/2)
    for u in [0, 1].  For C the median lies in the nodal set; for S the only
    critical zero is the vertex O."""
    pair = _check_pair(pair)
    m, n = pair
    if which == "C":
        h = EigenfunctionHandle(DomainKind.EQUILATERAL, pair, 0.0)

        def g(u):
            if np.isscalar(u):
                return eval_psi(h, 0.5 * u, 0.5 * u).grad_s
            return np.array([eval_psi(h, 0.5 * v, 0.5 * v).grad_s for v in u])

        out = [CriticalZero(AlcovePoint(0.0, 0.0), "OM", 0.0, 6)]
        # g has a zero of order >= 4 at O, so start the scan past the noise
        # floor; the interior zeros are well away from the vertex
        for u in find_roots(g, 0.05, 1.0 - 1e-6):
            out.append(CriticalZero(AlcovePoint(u / 2.0, u / 2.0), "OM", u, 2))
        out.append(CriticalZero(AlcovePoint(0.5, 0.5), "OM", 1.0, 2))
        return out
    if which == "S":
        return [CriticalZero(AlcovePoint(0.0, 0.0), "OM", 0.0, 3)]
    raise ValueError(f"which must be 'C' or 'S', got {which!r}")


# ---------------------------------------------------------------------------
# Wronskians and the bifurcation angle.
# ---------------------------------------------------------------------------

def wronskian(pair, u):
    """Direct Wronskian of the pair's edge functions: GC GS' - GS GC' for
    (1,3) and FC FS' - FS FC' for (2,3)."""
    pair = _check_pair(pair)
    if pair == (1, 3):
        return gc(pair, u) * gs_prime(pair, u) - gs(pair, u) * gc_prime(pair, u)
    return fc(pair, u) * fs_prime(pair, u) - fs(pair, u) * fc_prime(pair, u)


def wronskian_factored(pair, u):
    """Closed-form factorization of the Wronskian."""
    pair = _check_pair(pair)
    if pair == (1, 3):
        c = np.cos(PI * u)
        return PI * (1.0 - c) * (2.0 * c + 1.0) ** 2 * (12.0 * c ** 3 - 9.0 * c + 4.0)
    return 16.0 * PI * _polyval(_P_W, np.cos(3.0 * PI * u))


def bifurcation_angle() -> Tuple[float, float]:
    """(u_b, theta_c): u_b is the root of the (2,3) Wronskian polynomial in
    (1/3, 1/2); theta_c the unique mixing angle in (0, pi/6) for which the
    edge system acquires a double zero at u_b."""
    pair = Mode(2, 3)

    def f(u):
        return _polyval(_P_W, math.cos(3.0 * PI * u))

    def df(u):
        return -3.0 * PI * math.sin(3.0 * PI * u) * _polyval(_polyder(_P_W),
                                                             math.cos(3.0 * PI * u))

    u_b = optimize.brentq(f, 1.0 / 3.0 + 1e-9, 0.5, xtol=1e-15)
    u_b -= f(u_b) / df(u_b)
    theta_c = math.atan2(-fc(pair, u_b), fs(pair, u_b))
    if not 0.0 < theta_c < PI / 6.0:
        raise AssertionError("bifurcation angle outside (0, pi/6)")
    return u_b, theta_c


# ---------------------------------------------------------------------------
# Nodal-domain counting.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignGrid:
    resolution: int
    values: np.ndarray   # {+1, -1, 0} inside the mask, 0 outside
    mask: np.ndarray


@dataclass(frozen=True)
class NodalReport:
    handle: EigenfunctionHandle
    resolution: int
    domain_count: int
    positive_components: int
    negative_components: int
    stable: bool


def _grid_values(h: EigenfunctionHandle, resolution: int):
    m, n = h.mode
    eps = 1e-12
    if h.domain is DomainKind.RIGHT_ISOSCELES:
        x = np.linspace(0.0, PI, resolution)
        xx, yy = np.meshgrid(x, x, indexing="ij")
        mask = (yy > eps) & (xx - yy > eps) & (PI - xx > eps)
        vals = eval_isosceles(m, n, xx, yy)
        return vals, mask, (xx, yy)
    if h.domain in (DomainKind.EQUILATERAL, DomainKind.HEMIEQUILATERAL):
        x = np.linspace(0.0, 2.0 / 3.0, resolution)
        ss, tt = np.meshgrid(x, x, indexing="ij")
        mask = (tt - 0.5 * ss > eps) & (ss - 0.5 * tt > eps) & (1.0 - ss - tt > eps)
        if h.domain is DomainKind.HEMIEQUILATERAL:
            # eigenfunctions of the half-triangle are C_{m,n} on {s >= t}
            mask &= ss - tt > eps
            vals = eval_C(m, n, ss, tt)
        else:
            vals = eval_psi_grid(m, n, h.theta, ss, tt)
        return vals, mask, (ss, tt)
    raise ValueError(f"nodal counting is not defined for {h.domain!r}")


_FOUR = ndimage.generate_binary_structure(2, 1)


def sign_grid(h: EigenfunctionHandle, resolution: int) -> SignGrid:
    vals, mask, _ = _grid_values(h, resolution)
    band = ZERO_BAND_REL * float(np.max(np.abs(vals[mask])))
    signs = np.zeros(vals.shape, dtype=np.int8)
    signs[mask & (vals > band)] = 1
    signs[mask & (vals < -band)] = -1
    return SignGrid(resolution, signs, mask)


def _count_once(h: EigenfunctionHandle, resolution: int):
    grid = sign_grid(h, resolution)
    pos = ndimage.label(grid.values == 1, _FOUR)[1]
    neg = ndimage.label(grid.values == -1, _FOUR)[1]
    return pos, neg


def count_nodal_domains(h: EigenfunctionHandle, resolution: int) -> NodalReport:
    """Count sign components on the grid; stable means the total is unchanged
    when the resolution is doubled."""
    if resolution < 64:
        raise ValueError("resolution must be >= 64")
    pos, neg = _count_once(h, resolution)
    pos2, neg2 = _count_once(h, 2 * resolution)
    return NodalReport(h, resolution, pos + neg, pos, neg,
                       pos + neg == pos2 + neg2)


# ---------------------------------------------------------------------------
# Final verdict.
# ---------------------------------------------------------------------------

THETA_SWEEP_SAMPLES = 64


def _max_count_over_thetas(pair: Mode, resolution: int) -> int:
    u_b, theta_c = bifurcation_angle()
    thetas = list(np.linspace(0.0, PI / 6.0, THETA_SWEEP_SAMPLES))
    thetas += [theta_c, PI / 6.0]
    best = 0
    for theta in thetas:
        h = EigenfunctionHandle(DomainKind.EQUILATERAL, pair, float(theta))
        pos, neg = _count_once(h, resolution)
        best = max(best, pos + neg)
    return best


def courant_sharp_verdict(d: DomainKind, resolution: int = 512):
    """(index, sharp) for each screening candidate of the domain."""
    from .lattice_spectrum import enumerate_spectrum
    from .pleijel_screening import candidate_indices, index_cutoff

    if d is DomainKind.TORUS:
        # constant first eigenfunction; second has one positive and one
        # negative region; higher candidates were all screened out
        return [(1, True), (2, True)]

    entries = {e.min_index: e for e in enumerate_spectrum(d, index_cutoff(d))}
    verdict = []
    for n in candidate_indices(d):
        entry = entries[n]
        if n == 1:
            verdict.append((1, True))
            continue
        if d is DomainKind.EQUILATERAL and entry.multiplicity == 2:
            pair = Mode(*min(entry.representative_modes))
            mu = _max_count_over_thetas(pair, resolution)
        else:
            if d is DomainKind.EQUILATERAL:
                # simple equilateral eigenvalues come from pairs m = n, whose
                # cosine combination vanishes identically: the eigenfunction
                # is the sine sum
                pair = entry.representative_modes[0]
                h = EigenfunctionHandle(d, pair, PI / 2.0)
            else:
                pair = Mode(*max(entry.representative_modes))
                h = EigenfunctionHandle(d, pair, 0.0)
            pos, neg = _count_once(h, resolution)
            mu = pos + neg
        verdict.append((n, mu == n))
    return verdict
