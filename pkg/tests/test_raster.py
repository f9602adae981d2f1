import math

import numpy as np
import pytest

from collinear import DomainError, RasterJob, ResourceLimitError, render, write_image
from collinear.connectivity import pixel_centers
from collinear.raster import PALETTE, ppm_bytes


def test_ppm_one_white_pixel_exact_bytes():
    img = np.full((1, 1, 3), 255, dtype=np.uint8)
    assert ppm_bytes(img) == b"P6\n1 1\n255\n\xff\xff\xff"


def test_ppm_header_dimensions():
    img = np.zeros((3, 5, 3), dtype=np.uint8)
    assert ppm_bytes(img).startswith(b"P6\n5 3\n255\n")


def test_identical_jobs_are_byte_identical(tmp_path):
    job = RasterJob(kind="locus", n=3, window=(-3, 3, -3, 3), width=24, height=24, depth=10)
    a, b = render(job), render(job)
    assert np.array_equal(a, b)
    p1, p2 = tmp_path / "a.ppm", tmp_path / "b.ppm"
    write_image(a, p1)
    write_image(b, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_mirrored_window_flips_image():
    job = RasterJob(kind="locus", n=3, window=(0.3, 2.3, 0.4, 1.9), width=30, height=24, depth=12)
    neg = RasterJob(kind="locus", n=3, window=(-2.3, -0.3, -1.9, -0.4), width=30, height=24, depth=12)
    assert np.array_equal(render(job), render(neg)[::-1, ::-1])


def test_locus_colors_follow_palette():
    job = RasterJob(kind="locus", n=2, window=(-3, 3, -3, 3), width=16, height=16, depth=8)
    img = render(job)
    allowed = {tuple(color) for color in PALETTE}
    seen = {tuple(px) for row in img for px in row}
    assert seen <= allowed
    assert tuple(PALETTE[0]) in seen  # window center covers the unit disk


def test_attractor_fig1_has_three_main_holes():
    c = (3 + 1j * math.sqrt(11)) / 2
    job = RasterJob(kind="attractor", n=4, window=(-4.2, 4.2, -2.2, 2.2),
                    width=210, height=110, c=c)
    img = render(job)
    black = (img == 0).all(axis=2)
    assert black.sum() > 1000
    res = pixel_centers(-4.2, 4.2, 210)
    ims = pixel_centers(-2.2, 2.2, 110)[::-1]
    for hole in (-2.0, 0.0, 2.0):
        ix = int(np.argmin(np.abs(res - hole)))
        iy = int(np.argmin(np.abs(ims)))
        assert not black[iy, ix], f"hole at {hole} is filled"


def test_attractor_plane_filling_is_dense():
    job = RasterJob(kind="attractor", n=5, window=(-4, 4, -4, 4), width=80, height=80, c=1 + 2j)
    img = render(job)
    black = (img == 0).all(axis=2)
    # the filled region covers a solid chunk of the window interior
    assert black.mean() > 0.5


def test_mhat_scatter_lands_in_annulus():
    job = RasterJob(kind="mhat", n=2, window=(-2.2, 2.2, -2.2, 2.2), width=64, height=64,
                    degree=6, budget=10**3)
    img = render(job)
    assert ((img == 0).all(axis=2)).any()


def test_overlay_pixels_present():
    job = RasterJob(kind="locus", n=8, window=(-4, 4, -4, 4), width=48, height=48,
                    depth=6, overlays=("unit_disk", "annulus", "x_region"))
    img = render(job)
    for name, color in (("unit_disk", (230, 170, 40)), ("annulus", (60, 170, 90))):
        assert (img == np.array(color, dtype=np.uint8)).all(axis=2).any(), name


def test_png_round_trip(tmp_path):
    from PIL import Image

    job = RasterJob(kind="locus", n=2, window=(-3, 3, -3, 3), width=12, height=10, depth=6)
    img = render(job)
    path = tmp_path / "locus.png"
    write_image(img, path, format="png")
    back = np.asarray(Image.open(path))
    assert np.array_equal(back, img)


def test_budget_and_validation_errors(tmp_path):
    with pytest.raises(ResourceLimitError):
        render(RasterJob(kind="locus", n=2, window=(-2, 2, -2, 2), width=100, height=100, depth=4),
               pixel_budget=100)
    with pytest.raises(DomainError):
        RasterJob(kind="locus", n=2, window=(-2, 2, 2, -2), width=8, height=8)
    with pytest.raises(DomainError):
        RasterJob(kind="nonsense", n=2, window=(-2, 2, -2, 2), width=8, height=8)
    with pytest.raises(DomainError):
        RasterJob(kind="locus", n=2, window=(-2, 2, -2, 2), width=8, height=8,
                  overlays=("zebra",))
    img = np.zeros((2, 2, 3), dtype=np.uint8)
    with pytest.raises(DomainError):
        write_image(img, tmp_path / "x.gif", format="gif")


def test_io_error_carries_path():
    img = np.zeros((2, 2, 3), dtype=np.uint8)
    with pytest.raises(OSError, match="no/such/dir"):
        write_image(img, "/no/such/dir/out.ppm")
