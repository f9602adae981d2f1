"""Deterministic rendering of loci, attractors and root clouds.

Images are (height, width, 3) uint8 arrays, row 0 on top.  The locus
palette is fixed so golden-image tests can compare PPM bytes: outside
the domain light gray, disconnected white, witnessed black, undetermined
50% gray.  Overlays are drawn as 1-pixel curves in distinct hues.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import connectivity, polyroots
from .attractor import attractor_points, tail_radius
from .errors import DomainError, ResourceLimitError

PALETTE = np.zeros((4, 3), dtype=np.uint8)
PALETTE[connectivity.OUTSIDE_DOMAIN] = (211, 211, 211)
PALETTE[connectivity.DISCONNECTED] = (255, 255, 255)
PALETTE[connectivity.CONNECTED_WITNESS] = (0, 0, 0)
PALETTE[connectivity.UNDETERMINED] = (128, 128, 128)

OVERLAY_COLORS = {
    "unit_disk": (230, 170, 40),
    "x_region": (60, 110, 230),
    "outer_disk": (220, 60, 60),
    "annulus": (60, 170, 90),
    "real_axis": (160, 80, 200),
}

POINT_COLOR = (0, 0, 0)
BACKGROUND = (255, 255, 255)

DEFAULT_PIXEL_BUDGET = 1 << 24


@dataclass(frozen=True)
class RasterJob:
    """One render request.

    kind is "locus", "attractor" or "mhat"; `c` is required for
    attractor jobs, `degree` for mhat jobs.  depth None lets attractor
    jobs pick the smallest depth whose tail radius fits in a pixel.
    """

    kind: str
    n: int
    window: tuple
    width: int
    height: int
    c: complex | None = None
    depth: int | None = None
    degree: int | None = None
    overlays: tuple = ()
    mode: str = "fast"
    seed: int = 0
    budget: int = 10**7
    frontier_cap: int = connectivity.DEFAULT_GRID_FRONTIER_CAP

    def __post_init__(self):
        if self.kind not in ("locus", "attractor", "mhat"):
            raise DomainError(f"unknown raster kind {self.kind!r}")
        if self.width < 1 or self.height < 1:
            raise DomainError("width and height must be >= 1")
        re_min, re_max, im_min, im_max = self.window
        if not (re_max > re_min and im_max > im_min):
            raise DomainError(f"window {self.window} has no area")
        for name in self.overlays:
            if name not in OVERLAY_COLORS:
                raise DomainError(f"unknown overlay {name!r}")


def _pixel_size(job: RasterJob) -> tuple:
    re_min, re_max, im_min, im_max = job.window
    return (re_max - re_min) / job.width, (im_max - im_min) / job.height


def _splat(image: np.ndarray, points: np.ndarray, job: RasterJob, color) -> None:
    """Mark the pixels containing the given complex points."""
    re_min, re_max, im_min, im_max = job.window
    dx, dy = _pixel_size(job)
    ix = np.floor((points.real - re_min) / dx).astype(np.int64)
    iy = np.floor((im_max - points.imag) / dy).astype(np.int64)
    keep = (ix >= 0) & (ix < job.width) & (iy >= 0) & (iy < job.height)
    image[iy[keep], ix[keep]] = color


def _circle_points(center: complex, radius: float, step: float) -> np.ndarray:
    count = max(64, int(2.0 * math.pi * radius / step) + 1)
    theta = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
    return center + radius * np.exp(1j * theta)


def _draw_overlays(image: np.ndarray, job: RasterJob) -> None:
    re_min, re_max, im_min, im_max = job.window
    dx, dy = _pixel_size(job)
    step = 0.5 * min(dx, dy)
    n = job.n
    for name in job.overlays:
        color = OVERLAY_COLORS[name]
        if name == "unit_disk":
            _splat(image, _circle_points(0.0, 1.0, step), job, color)
        elif name == "outer_disk":
            _splat(image, _circle_points(0.0, 1.0 + math.sqrt(n - 1), step), job, color)
        elif name == "annulus":
            _splat(image, _circle_points(0.0, math.sqrt(n), step), job, color)
        elif name == "x_region":
            r = math.sqrt(2.0 * n)
            for center, other in ((-1.0, 1.0), (1.0, -1.0)):
                pts = _circle_points(center, r, step)
                pts = pts[np.abs(pts - other) <= r]  # keep the lens boundary arc
                _splat(image, pts, job, color)
        elif name == "real_axis":
            xs = np.arange(re_min + dx / 2, re_max, dx)
            _splat(image, xs + 0.0j, job, color)


def _render_locus(job: RasterJob, threads: int) -> np.ndarray:
    grid = connectivity.classify_grid(
        job.n,
        job.window,
        (job.width, job.height),
        max_depth=job.depth if job.depth is not None else connectivity.DEFAULT_GRID_DEPTH,
        mode=job.mode,
        frontier_cap=job.frontier_cap,
        threads=threads,
    )
    return PALETTE[grid.codes]


def _auto_depth(job: RasterJob) -> int:
    c, n = job.c, job.n
    dx, dy = _pixel_size(job)
    target = min(dx, dy)
    depth = 0
    while tail_radius(c, n, depth) > target and depth < 64:
        depth += 1
    return depth


def _render_attractor(job: RasterJob) -> np.ndarray:
    if job.c is None:
        raise DomainError("attractor jobs require the parameter c")
    depth = job.depth if job.depth is not None else _auto_depth(job)
    dx, dy = _pixel_size(job)
    cloud = attractor_points(
        job.c, job.n, depth, dedup_tol=0.5 * min(dx, dy), budget=job.budget
    )
    image = np.empty((job.height, job.width, 3), dtype=np.uint8)
    image[:] = BACKGROUND
    _splat(image, cloud.points, job, POINT_COLOR)
    return image


def _render_mhat(job: RasterJob) -> np.ndarray:
    if job.degree is None:
        raise DomainError("mhat jobs require a maximum degree")
    points = polyroots.mhat_sample(job.n, job.degree, budget=job.budget, seed=job.seed)
    zs = np.array([p.z for p in points], dtype=np.complex128)
    image = np.empty((job.height, job.width, 3), dtype=np.uint8)
    image[:] = BACKGROUND
    if len(zs):
        _splat(image, zs, job, POINT_COLOR)
    return image


def render(job: RasterJob, threads: int = 1,
           pixel_budget: int = DEFAULT_PIXEL_BUDGET) -> np.ndarray:
    """Render a job to an RGB image; deterministic for fixed options."""
    if job.width * job.height > pixel_budget:
        raise ResourceLimitError(
            f"{job.width}x{job.height} exceeds the pixel budget {pixel_budget}"
        )
    if job.kind == "locus":
        image = _render_locus(job, threads)
    elif job.kind == "attractor":
        image = _render_attractor(job)
    else:
        image = _render_mhat(job)
    _draw_overlays(image, job)
    return image


def ppm_bytes(image: np.ndarray) -> bytes:
    """Exact binary PPM encoding: "P6\\n{w} {h}\\n255\\n" + RGB rows."""
    height, width = image.shape[:2]
    return f"P6\n{width} {height}\n255\n".encode("ascii") + image.tobytes()


def write_image(image: np.ndarray, path, format: str = "ppm") -> None:
    """Write the image as bit-exact PPM or as PNG (same buffer)."""
    image = np.ascontiguousarray(image, dtype=np.uint8)
    if format == "ppm":
        try:
            with open(path, "wb") as fh:
                fh.write(ppm_bytes(image))
        except OSError as exc:
            raise OSError(f"failed writing PPM to {path}: {exc}") from exc
    elif format == "png":
        from PIL import Image

        try:
            Image.fromarray(image, mode="RGB").save(path, format="PNG")
        except OSError as exc:
            raise OSError(f"failed writing PNG to {path}: {exc}") from exc
    else:
        raise DomainError(f"unknown image format {format!r}")
