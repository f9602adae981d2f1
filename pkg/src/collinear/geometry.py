"""Closed-form regions, the covering rectangle, and hull experiments.

The lens region for index x is the intersection of the two closed disks
of radius sqrt(2x) centered at -1 and +1, minus the real axis and the
closed unit disk.  Both disk constraints together are equivalent to

    s(c) := |c|^2 + 2 |Re c|  <=  2x - 1,

so the covering behavior of the rectangle R(c, n) below reduces to
comparing s(c) with n: its n first-level images t + R/c (t in the
kind-"A" alphabet) cover R when s < n, touch side by side when s = n,
and are pairwise disjoint when s > n.

R(c, n) is the axis-aligned rectangle centered at 0 with vertex

    psi(c, n) = c (n+1) / (1 + c)   if Re c >= 0,
                c (n+1) / (1 - c)   otherwise,

and the other vertices its conjugate and negations.
"""

import math
from dataclasses import dataclass

import numpy as np

from .attractor import attractor_points, tail_radius
from .digitsets import digits
from .errors import DomainError, require_outside_unit_disk

# Width of the band around s = n classified Critical, relative to n.  The
# published critical parameters carry ~1e-5 truncation error, so the band
# is far wider than floating-point noise; pass critical_tol to tighten.
DEFAULT_CRITICAL_TOL = 1e-4

_HULL_SLACK = 1e-12


@dataclass(frozen=True)
class CoverRect:
    """Axis-aligned covering rectangle, stored as half-extents.

    degenerate marks real c, where the rectangle collapses to a segment.
    """

    c: complex
    n: int
    psi: complex
    half_width: float
    half_height: float
    degenerate: bool


@dataclass(frozen=True)
class HullVerdict:
    """Convex-hull membership of 2c with the rigorous inflation gap.

    gap is the distance from 2c to the hull boundary (positive inside,
    negative outside); Unknown covers the band within the tail radius.
    """

    tag: str
    gap: float


def coverage_sum(c: complex) -> float:
    """The quantity s(c) = |c|^2 + 2 |Re c| controlling the covering."""
    return abs(c) ** 2 + 2.0 * abs(c.real)


def in_X(c: complex, n: float) -> bool:
    """Membership in the lens region of index n (n may be fractional)."""
    c = complex(c)
    if c.imag == 0.0:
        return False
    r = math.sqrt(2.0 * n)
    return abs(c) > 1.0 and abs(c + 1) <= r and abs(c - 1) <= r


def in_X_interior(c: complex, n: float, margin: float) -> bool:
    """Lens membership with every constraint satisfied with slack >= margin."""
    if margin < 0:
        raise DomainError(f"margin must be >= 0, got {margin}")
    c = complex(c)
    r = math.sqrt(2.0 * n)
    return (
        abs(c.imag) >= margin
        and abs(c) >= 1.0 + margin
        and abs(c + 1) <= r - margin
        and abs(c - 1) <= r - margin
    )


def cover_rect(c: complex, n: int) -> CoverRect:
    """Covering rectangle R(c, n); real c yields a degenerate (flagged) one."""
    c = require_outside_unit_disk(c)
    if c.real >= 0.0:
        psi = c * (n + 1) / (1.0 + c)
    else:
        psi = c * (n + 1) / (1.0 - c)
    return CoverRect(
        c=c,
        n=n,
        psi=psi,
        half_width=abs(psi.real),
        half_height=abs(psi.imag),
        degenerate=(c.imag == 0.0),
    )


def covering_predicate(c: complex, n: int, critical_tol: float | None = None) -> str:
    """Ternary covering classification: "Covers", "Critical" or "Disjoint".

    Critical means |s - n| <= critical_tol * n (default band constant
    DEFAULT_CRITICAL_TOL).
    """
    c = require_outside_unit_disk(c)
    if c.imag == 0.0:
        raise DomainError("covering_predicate requires non-real c")
    tol = DEFAULT_CRITICAL_TOL if critical_tol is None else critical_tol
    s = coverage_sum(c)
    if abs(s - n) <= tol * n:
        return "Critical"
    return "Covers" if s < n else "Disjoint"


def covering_check_geometric(c: complex, n: int, grid_points: int = 128) -> bool:
    """Sampled verification that R(c,n) lies in the union of its n images.

    A lattice point z is covered when, for some digit t, the pulled-back
    point w = c (z - t) falls inside R(c,n) (axis-aligned test with 1e-9
    absolute slack so tangential configurations pass).
    """
    if grid_points < 2:
        raise DomainError(f"grid_points must be >= 2, got {grid_points}")
    rect = cover_rect(c, n)
    hw, hh = rect.half_width, rect.half_height
    xs = np.linspace(-hw, hw, grid_points)
    ys = np.linspace(-hh, hh, grid_points)
    z = xs[None, :] + 1j * ys[:, None]
    slack = 1e-9 * max(1.0, hw, hh)
    covered = np.zeros(z.shape, dtype=bool)
    for t in digits("A", n).values:
        w = c * (z - t)
        covered |= (np.abs(w.real) <= hw + slack) & (np.abs(w.imag) <= hh + slack)
        if covered.all():
            return True
    return bool(covered.all())


@dataclass(frozen=True)
class BoundsReport:
    in_annulus: bool
    outside_outer: bool
    antenna: bool


def bounds(c: complex, n: int) -> BoundsReport:
    """Cheap closed-form locus bounds for one parameter point.

    in_annulus: 1 < |c| < sqrt(n), a region always inside the locus.
    outside_outer: beyond the disk of radius 1 + sqrt(n-1) off the real
    axis, or |c| > n on it; always outside the locus.
    antenna: on the real segments (-n, -1) or (1, n) of the locus.
    """
    c = complex(c)
    r = abs(c)
    is_real = c.imag == 0.0
    if is_real:
        outside_outer = r > n
        antenna = 1.0 < abs(c.real) < n
    else:
        outside_outer = r > 1.0 + math.sqrt(n - 1)
        antenna = False
    return BoundsReport(
        in_annulus=1.0 < r < math.sqrt(n),
        outside_outer=outside_outer,
        antenna=antenna,
    )


def threshold_inequality(n: int) -> bool:
    """True iff 1 + sqrt(n-1) < -1 + sqrt(2n)."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    return 1.0 + math.sqrt(n - 1) < -1.0 + math.sqrt(2 * n)


def parallelogram(c: complex, n: int) -> tuple:
    """Vertices of the centered parallelogram spanned by n-1 and 1/c."""
    c = require_outside_unit_disk(c)
    u = n - 1
    v = 1.0 / c
    return (u + v, u - v, -u - v, -u + v)


def _parallelogram_coords(z: np.ndarray, c: complex, n: int):
    """Affine coordinates (x, y) with z = x (n-1) + y / c, both in [-1, 1]
    exactly when z lies in the parallelogram."""
    v = 1.0 / c
    det = (n - 1) * v.imag  # real basis vector times imag part of 1/c
    if det == 0.0:
        raise DomainError("parallelogram is degenerate for real c")
    y = z.imag / v.imag
    x = (z.real - y * v.real) / (n - 1)
    return x, y


def parallelogram_covering_check(c: complex, n: int, grid_points: int = 64) -> bool:
    """Sampled check that the parallelogram lies in the union of its n images
    (same inverse-map test as the rectangle, in the affine basis)."""
    c = require_outside_unit_disk(c)
    if c.imag == 0.0:
        raise DomainError("parallelogram covering check requires non-real c")
    if grid_points < 2:
        raise DomainError(f"grid_points must be >= 2, got {grid_points}")
    u = np.linspace(-1.0, 1.0, grid_points)
    x, y = np.meshgrid(u, u)
    z = x * (n - 1) + y / c
    covered = np.zeros(z.shape, dtype=bool)
    slack = 1e-9
    for t in digits("A", n).values:
        px, py = _parallelogram_coords(c * (z - t), c, n)
        covered |= (np.abs(px) <= 1.0 + slack) & (np.abs(py) <= 1.0 + slack)
        if covered.all():
            return True
    return bool(covered.all())


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain convex hull of complex points, counter-clockwise.

    Collinear input returns the two extreme points (a segment).
    """
    pts = np.unique(points)
    if len(pts) <= 2:
        return pts
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]

    def cross(o, a, b):
        return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1], dtype=np.complex128)


def _distance_to_hull(z: complex, hull: np.ndarray) -> float:
    """Signed distance from z to the hull boundary: positive inside,
    negative outside.  Requires a non-degenerate (>= 3 vertex, ccw) hull."""
    edges = list(zip(hull, np.roll(hull, -1)))
    inside = True
    dist = math.inf
    for a, b in edges:
        e = b - a
        off = ((z - a) * np.conj(e)).imag / abs(e)  # >0 left of edge (ccw inside)
        if off < 0:
            inside = False
        t = np.clip(((z - a) * np.conj(e)).real / abs(e) ** 2, 0.0, 1.0)
        dist = min(dist, abs(z - (a + t * e)))
    return dist if inside else -dist


def hull_membership(c: complex, n: int, depth: int, budget: int = 10**7) -> HullVerdict:
    """Locate 2c relative to the convex hull of the difference attractor.

    The hull of the depth-d cloud of the attractor for 2n-1 sits inside
    the true hull, so "In" is rigorous; points farther outside the cloud
    hull than the cloud's tail radius are rigorously "Out"; the band in
    between is "Unknown".  Real c collapses the cloud onto the real axis
    and membership reduces to a 1-D interval test.
    """
    c = require_outside_unit_disk(c)
    cloud = attractor_points(c, 2 * n - 1, depth, budget=budget)
    hull = convex_hull(cloud.points)
    tail = tail_radius(c, 2 * n - 1, depth)
    z = 2.0 * c
    if len(hull) <= 2:
        # collinear cloud: the hull is a segment (or point)
        a, b = hull[0], hull[-1]
        if a == b:
            d = abs(z - a)
            return HullVerdict(tag="Out" if d > tail + _HULL_SLACK else "Unknown", gap=-d)
        u = b - a
        length = abs(u)
        rel = (z - a) * np.conj(u / length)
        if abs(rel.imag) <= _HULL_SLACK and _HULL_SLACK < rel.real < length - _HULL_SLACK:
            return HullVerdict(tag="In", gap=min(rel.real, length - rel.real))
        t = np.clip(rel.real, 0.0, length)
        d = abs(z - (a + t * (u / length)))
        if d > tail + _HULL_SLACK:
            return HullVerdict(tag="Out", gap=-d)
        return HullVerdict(tag="Unknown", gap=-d)
    gap = _distance_to_hull(z, hull)
    if gap > _HULL_SLACK:
        return HullVerdict(tag="In", gap=gap)
    if gap < -(tail + _HULL_SLACK):
        return HullVerdict(tag="Out", gap=gap)
    return HullVerdict(tag="Unknown", gap=gap)
