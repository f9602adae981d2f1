"""Semi-decision procedure for connectedness-locus membership.

A parameter c (|c| > 1) belongs to the locus iff some digit sequence
a_1, a_2, ... drawn from the kind-"D" alphabet satisfies
1 + sum_k a_k c^-k = 0.  Writing w_m = c^m (1 + sum_{k<=m} a_k c^-k),
the partial sums obey the recursion

    w_0 = 1,    w_m = c * w_{m-1} + a_m,

and a sequence can be extended to a zero of the series iff every w_m
stays within the tail radius rho = (n-1)/(|c|-1), the largest modulus
any admissible tail -sum_{j>=1} a_{m+j} c^-j can reach.  The search
explores the tree of partial sums breadth-first:

* if every branch dies (|w| > rho) by some depth, c is certified outside
  the locus (Disconnected, rigorous in "rigorous" mode);
* if some branch reaches |w_m| <= eps_root, the digit prefix is returned
  as membership evidence (exact when the residual is zero, since the
  prefix extends by zero digits);
* otherwise states survive at max_depth and the verdict is Undetermined.

Frontiers are deduplicated exactly (equal states have identical futures)
and, when they outgrow `frontier_cap`, truncated to the states of
smallest modulus.  Truncation can suppress a Disconnected verdict but
never fabricate one, so the certificate direction is preserved; the
verdict records whether the search stayed exhaustive.  "fast" mode
additionally merges states per cell of a spatial grid, which forfeits
rigor of Disconnected verdicts and is reserved for rendering.
"""

import os
import struct
from dataclasses import dataclass
from multiprocessing import get_context

import numpy as np

from .errors import DomainError, require_outside_unit_disk

# Relative slack on the pruning bound so rounding never falsely kills a branch.
PRUNE_SAFETY = 2.0**-40

DEFAULT_MAX_DEPTH = 64
DEFAULT_GRID_DEPTH = 24
DEFAULT_EPS_ROOT = 1e-9
DEFAULT_FRONTIER_CAP = 200_000
DEFAULT_GRID_FRONTIER_CAP = 512

# Grid verdict codes (also the CLXG pixel byte values).
OUTSIDE_DOMAIN = 0
DISCONNECTED = 1
CONNECTED_WITNESS = 2
UNDETERMINED = 3

CLXG_MAGIC = b"CLXG"
_CLXG_HEADER = struct.Struct("<4sII4dII")


def tail_bound(c: complex, n: int) -> float:
    """Modulus bound (n-1)/(|c|-1) on any admissible series tail."""
    return (n - 1) / (abs(c) - 1.0)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a membership search, with evidence matching the tag.

    Exactly one evidence field is populated: extinction_depth for
    "Disconnected", witness (+ witness_residual, the terminal |w_m|) for
    "ConnectedWitness", surviving_states for "Undetermined".  The series
    residual |1 + sum a_k c^-k| of a witness is witness_residual/|c|^m.
    """

    tag: str
    n: int
    c: complex
    max_depth: int
    mode: str
    exhaustive: bool
    extinction_depth: int | None = None
    witness: tuple | None = None
    witness_residual: float | None = None
    surviving_states: int | None = None

    def __post_init__(self):
        populated = {
            "Disconnected": self.extinction_depth is not None
            and self.witness is None
            and self.surviving_states is None,
            "ConnectedWitness": self.witness is not None
            and self.extinction_depth is None
            and self.surviving_states is None,
            "Undetermined": self.surviving_states is not None
            and self.witness is None
            and self.extinction_depth is None,
        }.get(self.tag)
        if not populated:
            raise ValueError(f"verdict evidence does not match tag {self.tag!r}")

    def to_dict(self) -> dict:
        out = {
            "tag": self.tag,
            "n": self.n,
            "c": [self.c.real, self.c.imag],
            "max_depth": self.max_depth,
            "mode": self.mode,
            "exhaustive": self.exhaustive,
        }
        if self.tag == "Disconnected":
            out["extinction_depth"] = self.extinction_depth
        elif self.tag == "ConnectedWitness":
            out["witness"] = list(self.witness)
            out["witness_residual"] = self.witness_residual
        else:
            out["surviving_states"] = self.surviving_states
        return out


def _expand(states: np.ndarray, c: complex, g: int, bound2: float):
    """One search level: all admissible children c*w + a with |child|^2 <= bound2.

    The admissible digits for each state form a contiguous integer range,
    derived from the pruning disk and padded by one so that the modulus
    filter below is the only arbiter.
    """
    cw = c * states
    x = cw.real
    y = cw.imag
    q = np.sqrt(np.maximum(bound2 - y * y, 0.0))
    lo = np.maximum(np.ceil(-x - q) - 1.0, -float(g))
    hi = np.minimum(np.floor(-x + q) + 1.0, float(g))
    counts = np.maximum(hi - lo + 1.0, 0.0)
    counts[bound2 - y * y < 0.0] = 0.0
    counts = counts.astype(np.int64)
    total = int(counts.sum())
    if total == 0:
        return None
    parents = np.repeat(np.arange(len(states), dtype=np.int64), counts)
    starts = np.cumsum(counts) - counts
    offsets = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
    a = np.repeat(lo.astype(np.int64), counts) + offsets
    children = cw[parents] + a
    w2 = children.real**2 + children.imag**2
    keep = w2 <= bound2
    if not keep.any():
        return None
    return children[keep], parents[keep], a[keep], w2[keep]


def _search(
    c: complex,
    n: int,
    max_depth: int,
    eps_root: float,
    merge_pitch: float | None,
    frontier_cap: int,
    track_witness: bool,
):
    """Run the pruned breadth-first search; returns the raw outcome.

    Outcome is a tuple (code, payload, exhaustive) where payload is the
    extinction depth, the (digits, residual) pair, or the surviving count.
    """
    g = n - 1
    rho = tail_bound(c, n)
    bound = rho * (1.0 + PRUNE_SAFETY)
    bound2 = bound * bound
    eps2 = eps_root * eps_root
    if 1.0 > bound2:
        return DISCONNECTED, 0, True

    states = np.ones(1, dtype=np.complex128)
    trail: list = []
    exhaustive = True
    for depth in range(1, max_depth + 1):
        expanded = _expand(states, c, g, bound2)
        if expanded is None:
            if exhaustive:
                return DISCONNECTED, depth, True
            return UNDETERMINED, 0, False
        children, parents, dig, w2 = expanded

        if w2.min() <= eps2:
            if not track_witness:
                return CONNECTED_WITNESS, (None, float(np.sqrt(w2.min()))), exhaustive
            hit = np.flatnonzero(w2 <= eps2)
            best = hit[np.lexsort((dig[hit], w2[hit]))[0]]
            word = [int(dig[best])]
            parent = int(parents[best])
            for prev_dig, prev_par in reversed(trail):
                word.append(int(prev_dig[parent]))
                parent = int(prev_par[parent])
            word.reverse()
            return CONNECTED_WITNESS, (tuple(word), float(np.sqrt(w2[best]))), exhaustive

        # Truncate by modulus threshold first (linear), then deduplicate the
        # survivors (cheap sort).  Duplicates never affect correctness, and
        # dropping states can only suppress a Disconnected verdict.
        if len(children) > frontier_cap:
            cut = np.partition(w2, frontier_cap - 1)[frontier_cap - 1]
            keep = w2 <= cut
            children = children[keep]
            parents = parents[keep]
            dig = dig[keep]
            w2 = w2[keep]
            exhaustive = False

        if merge_pitch is not None:
            # Keep the best genuine state per cell; sort by a quality key
            # invariant under conjugation and negation so mirrored renders
            # merge identically.
            order = np.lexsort(
                (np.abs(children.imag), np.abs(children.real), w2)
            )
            cells = np.round(children.real[order] / merge_pitch) + 1j * np.round(
                children.imag[order] / merge_pitch
            )
            _, first = np.unique(cells, return_index=True)
            first = order[first]
        else:
            _, first = np.unique(children, return_index=True)
        children = children[first]
        parents = parents[first]
        dig = dig[first]

        if track_witness:
            trail.append((dig.astype(np.int32), parents.astype(np.int64)))
        states = children

    return UNDETERMINED, len(states), exhaustive


def classify(
    c: complex,
    n: int,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
    mode: str = "rigorous",
    eps_root: float = DEFAULT_EPS_ROOT,
    grid_merge: float | None = None,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> Verdict:
    """Classify one parameter point; see the module docstring for semantics.

    grid_merge is the merge cell pitch for "fast" mode and defaults to
    rho/1024; it is ignored in "rigorous" mode.
    """
    c = require_outside_unit_disk(c)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if max_depth < 1:
        raise DomainError(f"max_depth must be >= 1, got {max_depth}")
    if eps_root < 0:
        raise DomainError(f"eps_root must be >= 0, got {eps_root}")
    if mode not in ("rigorous", "fast"):
        raise DomainError(f"mode must be 'rigorous' or 'fast', got {mode!r}")
    if frontier_cap < 1:
        raise DomainError(f"frontier_cap must be >= 1, got {frontier_cap}")
    merge_pitch = None
    if mode == "fast":
        merge_pitch = grid_merge if grid_merge is not None else tail_bound(c, n) / 1024.0
        if merge_pitch <= 0:
            raise DomainError(f"grid_merge must be > 0, got {grid_merge}")

    code, payload, exhaustive = _search(
        c, n, max_depth, eps_root, merge_pitch, frontier_cap, track_witness=True
    )
    common = dict(n=n, c=c, max_depth=max_depth, mode=mode, exhaustive=exhaustive)
    if code == DISCONNECTED:
        return Verdict(tag="Disconnected", extinction_depth=payload, **common)
    if code == CONNECTED_WITNESS:
        word, residual = payload
        return Verdict(
            tag="ConnectedWitness", witness=word, witness_residual=residual, **common
        )
    return Verdict(tag="Undetermined", surviving_states=payload, **common)


@dataclass(frozen=True, eq=False)
class GridResult:
    """Per-pixel verdict codes over a rectangular parameter window.

    codes[0, 0] is the top-left pixel (re_min, im_max corner); values are
    the module-level code constants.
    """

    codes: np.ndarray
    window: tuple
    n: int
    max_depth: int
    mode: str


def pixel_centers(lo: float, hi: float, count: int) -> np.ndarray:
    """Pixel-center coordinates, written so that mirrored windows produce
    exactly negated centers."""
    mid = (lo + hi) / 2.0
    span = hi - lo
    i = np.arange(count, dtype=np.float64)
    return mid + ((2.0 * i + 1.0 - count) / (2.0 * count)) * span


def _classify_code(c: complex, n: int, opts: dict) -> int:
    if abs(c) <= 1.0:
        return OUTSIDE_DOMAIN
    merge_pitch = None
    if opts["mode"] == "fast":
        merge_pitch = opts["grid_merge"]
        if merge_pitch is None:
            merge_pitch = tail_bound(c, n) / 1024.0
    code, _, _ = _search(
        c,
        n,
        opts["max_depth"],
        opts["eps_root"],
        merge_pitch,
        opts["frontier_cap"],
        track_witness=False,
    )
    return code


def _row_codes(args):
    n, re_centers, im_center, col_count, opts = args
    row = np.empty(col_count, dtype=np.uint8)
    for ix in range(col_count):
        row[ix] = _classify_code(complex(re_centers[ix], im_center), n, opts)
    return row


def classify_grid(
    n: int,
    window: tuple,
    resolution,
    *,
    max_depth: int = DEFAULT_GRID_DEPTH,
    mode: str = "fast",
    eps_root: float = DEFAULT_EPS_ROOT,
    grid_merge: float | None = None,
    frontier_cap: int = DEFAULT_GRID_FRONTIER_CAP,
    threads: int = 1,
    use_symmetry: bool = True,
) -> GridResult:
    """Classify every pixel-center parameter of a window.

    Pixels with |c| <= 1 are marked OUTSIDE_DOMAIN.  When the window is
    symmetric about an axis, only one half (or quadrant) is searched and
    the rest is filled by the conjugation / negation symmetries of the
    locus.  Output is deterministic for fixed options regardless of
    threads.
    """
    re_min, re_max, im_min, im_max = map(float, window)
    if not (re_max > re_min and im_max > im_min):
        raise DomainError(f"window {window} has no area")
    if isinstance(resolution, int):
        width = height = resolution
    else:
        width, height = resolution
    if width < 1 or height < 1:
        raise DomainError("resolution must be >= 1 pixel on each axis")
    if mode not in ("rigorous", "fast"):
        raise DomainError(f"mode must be 'rigorous' or 'fast', got {mode!r}")

    re_centers = pixel_centers(re_min, re_max, width)
    im_centers = pixel_centers(im_min, im_max, height)[::-1]  # row 0 on top

    sym_re = use_symmetry and re_min == -re_max
    sym_im = use_symmetry and im_min == -im_max
    rows = range((height + 1) // 2) if sym_im else range(height)
    col_count = (width + 1) // 2 if sym_re else width

    opts = {
        "max_depth": max_depth,
        "mode": mode,
        "eps_root": eps_root,
        "grid_merge": grid_merge,
        "frontier_cap": frontier_cap,
    }
    jobs = [(n, re_centers, float(im_centers[iy]), col_count, opts) for iy in rows]

    if threads == 0:
        threads = os.cpu_count() or 1
    if threads > 1 and len(jobs) > 1:
        with get_context("fork").Pool(processes=threads) as pool:
            results = pool.map(_row_codes, jobs, chunksize=max(1, len(jobs) // (4 * threads)))
    else:
        results = [_row_codes(job) for job in jobs]

    codes = np.empty((height, width), dtype=np.uint8)
    for iy, row in zip(rows, results):
        codes[iy, :col_count] = row
        if sym_re:
            # verdict(-conj(c)) = verdict(c): mirror across the imaginary axis
            codes[iy, col_count:] = codes[iy, :width - col_count][::-1]
    if sym_im:
        # verdict(conj(c)) = verdict(c): bottom rows copy their mirror rows
        for iy in rows:
            codes[height - 1 - iy, :] = codes[iy, :]
    return GridResult(codes=codes, window=(re_min, re_max, im_min, im_max), n=n,
                      max_depth=max_depth, mode=mode)


def save_grid(grid: GridResult, path) -> None:
    """Write the compact binary grid file (little-endian header + one byte
    per pixel, row-major, top row first)."""
    height, width = grid.codes.shape
    header = _CLXG_HEADER.pack(
        CLXG_MAGIC, width, height, *grid.window, grid.n, grid.max_depth
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(grid.codes.tobytes())


def load_grid(path) -> GridResult:
    """Read a grid file written by save_grid."""
    with open(path, "rb") as fh:
        blob = fh.read()
    magic, width, height, a, b, lo, hi, n, max_depth = _CLXG_HEADER.unpack_from(blob)
    if magic != CLXG_MAGIC:
        raise DomainError(f"not a grid file: bad magic {magic!r}")
    codes = np.frombuffer(
        blob, dtype=np.uint8, count=width * height, offset=_CLXG_HEADER.size
    ).reshape(height, width).copy()
    return GridResult(codes=codes, window=(a, b, lo, hi), n=n,
                      max_depth=max_depth, mode="unknown")
