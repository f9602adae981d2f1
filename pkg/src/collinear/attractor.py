"""Finite-depth approximations of the collinear IFS attractor.

For a complex parameter c with |c| > 1 and an integer n >= 2, the
attractor is the unique nonempty compact set K satisfying

    K = union over t in A_n of (t + K / c),

equivalently the set of all sums  sum_{k>=0} a_k c^{-k}  with digits
a_k in the kind-"A" alphabet.  A depth-d cloud keeps the first d+1 digits
of each sum; every attractor point lies within the geometric tail radius
of some cloud point.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .digitsets import digits
from .errors import DomainError, ResourceLimitError, require_outside_unit_disk

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True, eq=False)
class AttractorCloud:
    """Depth-d point cloud of an attractor plus its rigorous tail radius.

    Every point equals sum_{k=0}^{depth} a_k c^{-k} with a_k in the
    kind-"A" alphabet; `tail` bounds the Hausdorff distance from the
    cloud to the full attractor.
    """

    c: complex
    n: int
    depth: int
    points: np.ndarray
    tail: float


def tail_radius(c: complex, n: int, depth: int) -> float:
    """Geometric-series bound (n-1) |c|^-depth / (|c|-1) on the truncated tail."""
    r = abs(c)
    return (n - 1) * r ** (-depth) / (r - 1.0)


def hull_radius(c: complex, n: int) -> float:
    """Modulus bound (n-1) |c| / (|c|-1) on every attractor point."""
    c = require_outside_unit_disk(c)
    r = abs(c)
    return (n - 1) * r / (r - 1.0)


def _dedup(points: np.ndarray, tol: float) -> np.ndarray:
    if tol == 0.0:
        return np.unique(points)
    cells = np.round(points / tol)
    _, idx = np.unique(cells, return_index=True)
    return points[np.sort(idx)]


def attractor_points(
    c: complex,
    n: int,
    depth: int,
    dedup_tol: float = 0.0,
    budget: int = DEFAULT_BUDGET,
) -> AttractorCloud:
    """Enumerate all digit sums of length depth+1, deduplicated.

    With dedup_tol == 0 deduplication is exact (bitwise); a positive
    tolerance snaps points to a grid of that pitch, which is what the
    renderer uses to keep clouds at pixel resolution.
    """
    c = require_outside_unit_disk(c)
    alphabet = digits("A", n)
    if depth < 0:
        raise DomainError(f"depth must be >= 0, got {depth}")
    if dedup_tol < 0:
        raise DomainError(f"dedup_tol must be >= 0, got {dedup_tol}")
    if n ** (depth + 1) > budget and dedup_tol == 0.0:
        raise ResourceLimitError(
            f"n^(depth+1) = {n}**{depth + 1} exceeds budget {budget}; lower depth"
        )
    base = alphabet.values.astype(np.complex128)
    points = base.copy()
    inv = 1.0 / c
    for _ in range(depth):
        if len(points) * n > budget:
            raise ResourceLimitError(
                f"cloud expansion exceeds budget {budget}; lower depth"
            )
        points = (base[None, :] + points[:, None] * inv).ravel()
        points = _dedup(points, dedup_tol)
    return AttractorCloud(
        c=c, n=n, depth=depth, points=points, tail=tail_radius(c, n, depth)
    )


def piece(c: complex, n: int, t: int, cloud: AttractorCloud) -> np.ndarray:
    """First-level image {t + z/c} of a cloud under one IFS map."""
    c = require_outside_unit_disk(c)
    if t not in digits("A", n):
        raise DomainError(f"t={t} is not a kind-'A' digit for n={n}")
    return t + cloud.points / c


def difference_identity_check(
    c: complex,
    n: int,
    depth: int,
    tol: float,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Check that pairwise differences of the depth-d cloud for n equal the
    depth-d cloud for 2n-1, as sets, up to tol.

    Both directions are tested with a KD-tree so that points landing near
    dedup cell boundaries cannot produce spurious mismatches.
    """
    cloud = attractor_points(c, n, depth, budget=budget)
    cloud2 = attractor_points(c, 2 * n - 1, depth, budget=budget)
    diffs = (cloud.points[:, None] - cloud.points[None, :]).ravel()
    # Exact dedup collapses the n^(2d+2) pairs to ~(2n-1)^(d+1) values.
    diffs = np.unique(diffs)
    a = np.column_stack([diffs.real, diffs.imag])
    b = np.column_stack([cloud2.points.real, cloud2.points.imag])
    d_ab, _ = cKDTree(b).query(a)
    if d_ab.max() > tol:
        return False
    d_ba, _ = cKDTree(a).query(b)
    return bool(d_ba.max() <= tol)


def dump_points_csv(points: np.ndarray, path) -> None:
    """Write one "re,im" line per point with 17 significant digits."""
    with open(path, "w") as fh:
        for z in points:
            fh.write(f"{z.real:.17g},{z.imag:.17g}\n")
