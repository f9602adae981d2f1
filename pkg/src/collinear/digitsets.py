"""Integer digit alphabets and their difference-set algebra.

Two alphabets drive everything else in the package:

* kind "A": the symmetric set {-n+1, -n+3, ..., n-3, n-1} of n integers
  with consecutive gap 2 (the translation centers of the IFS pieces);
* kind "D": half of the kind-"A" set for 2n-1, i.e. the 2n-1 consecutive
  integers {1-n, ..., -1, 0, 1, ..., n-1} (the coefficient alphabet of
  the locus membership series).

Digits are machine integers throughout; conversion to complex happens at
use sites.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Guard against accidental memory blowups; the interesting range is n <= ~50.
MAX_N = 1 << 20

_KINDS = ("A", "D")


@dataclass(frozen=True, eq=False)
class DigitSet:
    """An integer digit alphabet, sorted ascending."""

    n: int
    kind: str
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, t) -> bool:
        v = int(t)
        if v != t:
            return False
        if self.kind == "D":
            return abs(v) <= self.n - 1
        return abs(v) <= self.n - 1 and (self.n - 1 - v) % 2 == 0

    def as_tuple(self) -> tuple:
        return tuple(int(v) for v in self.values)


@dataclass(frozen=True)
class IntervalHull:
    """The real interval [1-n, n-1], the convex hull of the kind-"D" digits."""

    lo: int
    hi: int


def _check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"n must be an integer, got {n!r}")
    n = int(n)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if n > MAX_N:
        raise DomainError(f"n={n} exceeds the cap {MAX_N}")
    return n


def digits(kind: str, n: int) -> DigitSet:
    """Build the digit alphabet of the given kind for parameter count n.

    kind "A" has n values with gap 2; kind "D" has 2n-1 consecutive values.
    """
    n = _check_n(n)
    if kind not in _KINDS:
        raise DomainError(f"kind must be one of {_KINDS}, got {kind!r}")
    if kind == "A":
        values = np.arange(-n + 1, n, 2, dtype=np.int64)
    else:
        values = np.arange(1 - n, n, dtype=np.int64)
    values.setflags(write=False)
    return DigitSet(n=n, kind=kind, values=values)


def difference_set(s: DigitSet) -> DigitSet:
    """Pairwise differences of a kind-"A" alphabet, which form the kind-"A"
    alphabet for 2n-1.

    Computed by brute force and checked against the closed form.
    """
    if s.kind != "A":
        raise DomainError(f"difference_set is defined for kind 'A', got {s.kind!r}")
    diffs = np.unique(s.values[:, None] - s.values[None, :])
    closed = digits("A", 2 * s.n - 1)
    if not np.array_equal(diffs, closed.values):
        raise AssertionError(f"difference set of A_{s.n} disagrees with closed form")
    return closed


def interval_hull(n: int) -> IntervalHull:
    """Convex hull [1-n, n-1] of the kind-"D" digits."""
    n = _check_n(n)
    return IntervalHull(lo=1 - n, hi=n - 1)
