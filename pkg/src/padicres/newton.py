"""Newton polygons of integer polynomials at a prime p.

The polygon is the lower convex hull of the points (i, v_p(a_i)) over the
nonzero coefficients a_i.  Sign convention, fixed once and used everywhere:
a hull segment of slope -w corresponds to exactly `length` roots (in C_p,
with multiplicity) of p-adic valuation +w.  Roots at 0 (when t divides f)
are not on the hull; they account for the offset between the first support
index and 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .padic import vp
from .unipoly import UniPoly


@dataclass(frozen=True)
class NewtonPolygon:
    points: Tuple[Tuple[int, int], ...]  # hull vertices (index, valuation), index ascending
    slopes: Tuple[Tuple[Fraction, int], ...]  # (slope, horizontal length), strictly increasing

    def root_count_with_valuation(self, w: Fraction) -> int:
        """Number of roots of valuation w = horizontal length of the slope -w segment."""
        for slope, length in self.slopes:
            if slope == -w:
                return length
        return 0

    def positive_valuation_root_count(self) -> int:
        """Roots with v_p > 0, i.e. total length under negative slopes."""
        return sum(length for slope, length in self.slopes if slope < 0)


def newton_polygon(f: UniPoly, p: int) -> NewtonPolygon:
    if f.is_zero:
        raise ValueError("Newton polygon of the zero polynomial is undefined")
    pts = [(i, vp(c, p)) for i, c in enumerate(f.coeffs) if c != 0]
    hull = _lower_hull(pts)
    slopes = []
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        slopes.append((Fraction(v2 - v1, i2 - i1), i2 - i1))
    return NewtonPolygon(tuple(hull), tuple(slopes))


def _lower_hull(pts):
    # Andrew monotone chain, lower part only; pts already x-sorted and x-distinct.
    hull = []
    for pt in pts:
        while len(hull) >= 2 and _turns_non_left(hull[-2], hull[-1], pt):
            hull.pop()
        hull.append(pt)
    return hull


def _turns_non_left(a, b, c):
    # True when b is on or above segment a-c, so b is not a hull vertex.
    return (b[1] - a[1]) * (c[0] - a[0]) >= (c[1] - a[1]) * (b[0] - a[0])
