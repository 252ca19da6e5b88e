"""Pleijel-style screening: combine the counting lower bound with the
Faber-Krahn inequality to reduce Courant-sharpness to a finite candidate list
per domain, and emit the corresponding screening tables."""

import math
from dataclasses import dataclass
from typing import List

from .alcove_geometry import DomainKind
from .lattice_spectrum import (SpectrumEntry, bound_coefficients,
                               enumerate_spectrum, scale)

# First positive zero of the Bessel function J0, to full double precision so
# the printed threshold digits come out right.
J01 = 2.40482555769577


def faber_krahn_threshold(d: DomainKind) -> float:
    """Ratio threshold (in the domain's table units, i.e. per normalized
    eigenvalue unit) that a Courant-sharp eigenvalue must meet."""
    j2 = J01 * J01
    if d is DomainKind.TORUS:
        return math.sqrt(3.0) * j2 / (8.0 * math.pi)
    if d is DomainKind.EQUILATERAL:
        return 3.0 * math.sqrt(3.0) * j2 / (4.0 * math.pi)
    if d is DomainKind.RIGHT_ISOSCELES:
        return 2.0 * j2 / math.pi
    if d is DomainKind.HEMIEQUILATERAL:
        return 3.0 * math.sqrt(3.0) * j2 / (2.0 * math.pi)
    raise ValueError(f"unknown domain {d!r}")


def courant_upper_bound(d: DomainKind, n: int) -> float:
    """Necessary upper bound on lambda_n (physical units) if it is
    Courant-sharp, from inverting the counting lower bound at N = n - 1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    a, b, c = bound_coefficients(d)
    root = (b + math.sqrt(b * b + 4.0 * a * (n - 1 - c))) / (2.0 * a)
    return root * root


# Largest index for which the two necessary conditions are declared mutually
# consistent.  These are the published safe bounds; cutoff_scan() below gives
# the strict crossing, which is never larger (asserted in tests).
_PUBLISHED_CUTOFF = {
    DomainKind.TORUS: 63,
    DomainKind.EQUILATERAL: 40,
    DomainKind.RIGHT_ISOSCELES: 26,
    DomainKind.HEMIEQUILATERAL: 32,
}


def fk_line(d: DomainKind, n: int) -> float:
    """Faber-Krahn growth line in physical units: lambda_n >= fk_line(d, n)."""
    return faber_krahn_threshold(d) * scale(d) * n


def cutoff_scan(d: DomainKind, n_max: int = 1000) -> int:
    """Largest n with fk_line(n) <= courant_upper_bound(n) (strict scan)."""
    last = 1
    for n in range(2, n_max + 1):
        if fk_line(d, n) <= courant_upper_bound(d, n):
            last = n
    return last


def index_cutoff(d: DomainKind) -> int:
    return _PUBLISHED_CUTOFF[d]


@dataclass(frozen=True)
class ScreeningRow:
    normalized: int
    min_index: int
    max_index: int
    multiplicity: int
    ratio: float
    ratio_applies: bool
    passes: bool


@dataclass(frozen=True)
class ScreeningSummary:
    domain: DomainKind
    index_cutoff: int
    threshold: float
    candidates: List[int]


def _ratio_applies(d: DomainKind, min_index: int) -> bool:
    # The torus ratio test is only meaningful from index 4 on (the small
    # nodal domains assumption behind Faber-Krahn on the torus needs n >= 4).
    if d is DomainKind.TORUS:
        return min_index >= 4
    return True


def screening_table(d: DomainKind) -> List[ScreeningRow]:
    cutoff = index_cutoff(d)
    threshold = faber_krahn_threshold(d)
    rows = []
    for e in enumerate_spectrum(d, cutoff):
        if e.min_index > cutoff:
            break
        applies = _ratio_applies(d, e.min_index)
        ratio = e.normalized / e.min_index
        rows.append(ScreeningRow(e.normalized, e.min_index, e.max_index,
                                 e.multiplicity, ratio, applies,
                                 applies and ratio >= threshold))
    return rows


def candidate_indices(d: DomainKind) -> List[int]:
    """Indices surviving the necessary conditions: simple start of a cluster
    (lambda_{n-1} < lambda_n), index <= cutoff, and the ratio test where it
    applies.  Indices 1 and 2 are always candidates."""
    out = set()
    for row in screening_table(d):
        # row.min_index is the only index n in the cluster with
        # lambda_{n-1} < lambda_n, so it is the only possible candidate.
        if row.min_index <= 2 or row.passes:
            out.add(row.min_index)
    out.update({1, 2})
    return sorted(out)


def screening_summary(d: DomainKind) -> ScreeningSummary:
    return ScreeningSummary(d, index_cutoff(d), faber_krahn_threshold(d),
                            candidate_indices(d))
