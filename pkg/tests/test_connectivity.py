import math
import struct

import numpy as np
import pytest

from collinear import CoeffWord, DomainError, classify, classify_grid, roots, tail_bound
from collinear.connectivity import (
    CONNECTED_WITNESS,
    DISCONNECTED,
    OUTSIDE_DOMAIN,
    load_grid,
    pixel_centers,
    save_grid,
)


def test_antenna_point_not_disconnected():
    v = classify(1.5, 2, frontier_cap=20000)
    assert v.tag != "Disconnected"


def test_outer_imaginary_point_disconnected():
    # |c| = 3.8 exceeds 1 + sqrt(7) ~ 3.6458, so extinction is finite
    v = classify(3.8j, 8)
    assert v.tag == "Disconnected"
    assert v.exhaustive
    assert 0 <= v.extinction_depth <= 64


def test_exact_quadratic_witness():
    # (1+i)^2 - 2(1+i) + 2 = 0, so the digit prefix (-2, 2) kills the sum exactly
    v = classify(1 + 1j, 3)
    assert v.tag == "ConnectedWitness"
    assert v.witness == (-2, 2)
    assert v.witness_residual == 0.0


def test_disconnected_just_outside_two_map_bound():
    v = classify(2.2j, 2)
    assert v.tag == "Disconnected"


def test_tail_bound_value():
    assert tail_bound(3.0, 5) == pytest.approx(2.0)


def test_domain_validation():
    with pytest.raises(DomainError):
        classify(0.9, 3)
    with pytest.raises(DomainError):
        classify(2.0, 1)
    with pytest.raises(DomainError):
        classify(2.0, 3, max_depth=0)
    with pytest.raises(DomainError):
        classify(2.0, 3, mode="turbo")


@pytest.mark.parametrize("seed", [0, 1])
def test_conjugation_negation_tag_symmetry(seed):
    rng = np.random.default_rng(seed)
    for _ in range(15):
        c = complex(rng.uniform(1.05, 3.5) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        tags = {
            classify(z, 3, max_depth=20, frontier_cap=5000).tag
            for z in (c, c.conjugate(), -c)
        }
        assert len(tags) == 1, (c, tags)


def test_nesting_between_consecutive_alphabets():
    rng = np.random.default_rng(4)
    for _ in range(25):
        c = complex(rng.uniform(1.05, 4.5) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        prev = classify(c, 2, max_depth=20, frontier_cap=5000)
        for n in range(3, 6):
            cur = classify(c, n, max_depth=20, frontier_cap=5000)
            assert not (prev.tag == "ConnectedWitness" and cur.tag == "Disconnected")
            prev = cur


def test_annulus_sample_never_disconnected():
    rng = np.random.default_rng(9)
    for n in (2, 5):
        for _ in range(20):
            r = rng.uniform(1 + 1e-6, math.sqrt(n))
            c = complex(r * np.exp(1j * rng.uniform(0, 2 * np.pi)))
            assert classify(c, n, frontier_cap=2048).tag != "Disconnected"


def test_outer_sample_disconnects():
    rng = np.random.default_rng(10)
    for n in (2, 8):
        for _ in range(20):
            r = rng.uniform(1 + math.sqrt(n - 1) + 0.1, 1 + math.sqrt(n - 1) + 1)
            theta = rng.uniform(0.05, math.pi - 0.05)
            v = classify(complex(r * np.exp(1j * theta)), n)
            assert v.tag == "Disconnected" and v.extinction_depth <= 64


@pytest.mark.parametrize("n,coeffs", [(2, (-1, -1)), (3, (-2, 2)), (4, (1, -3, 2))])
def test_polynomial_roots_get_witnesses(n, coeffs):
    for point in roots(CoeffWord(n, coeffs)):
        v = classify(point.z, n)
        assert v.tag == "ConnectedWitness"
        assert len(v.witness) <= len(coeffs)


def test_witness_residual_tolerance_semantics():
    # a root known to ~1e-15 yields a tiny renormalized residual
    phi = (1 + math.sqrt(5)) / 2
    v = classify(phi, 2)
    assert v.tag == "ConnectedWitness"
    assert v.witness_residual <= 1e-9


def test_fast_mode_records_mode():
    v = classify(1.2 + 0.9j, 3, mode="fast", max_depth=16)
    assert v.mode == "fast"


def test_grid_marks_outside_domain_pixels():
    grid = classify_grid(8, (-8, 8, -8, 8), (32, 32), max_depth=8)
    re = pixel_centers(-8, 8, 32)
    im = pixel_centers(-8, 8, 32)[::-1]
    c = re[None, :] + 1j * im[:, None]
    assert np.array_equal(grid.codes == OUTSIDE_DOMAIN, np.abs(c) <= 1)


def test_grid_annulus_never_disconnected():
    grid = classify_grid(8, (-8, 8, -8, 8), (64, 64), max_depth=24)
    re = pixel_centers(-8, 8, 64)
    im = pixel_centers(-8, 8, 64)[::-1]
    c = re[None, :] + 1j * im[:, None]
    annulus = (np.abs(c) > 1) & (np.abs(c) < math.sqrt(8))
    assert not (grid.codes[annulus] == DISCONNECTED).any()


def test_grid_symmetry_matches_direct_computation():
    window = (-2.5, 2.5, -2.0, 2.0)
    fast = classify_grid(3, window, (20, 16), max_depth=12, use_symmetry=True)
    slow = classify_grid(3, window, (20, 16), max_depth=12, use_symmetry=False)
    assert np.array_equal(fast.codes, slow.codes)


def test_grid_rejects_degenerate_window():
    with pytest.raises(DomainError):
        classify_grid(3, (0, 0, -1, 1), (8, 8))


def test_grid_file_roundtrip(tmp_path):
    grid = classify_grid(3, (-3, 3, -3, 3), (16, 12), max_depth=10)
    path = tmp_path / "verdicts.clxg"
    save_grid(grid, path)
    blob = path.read_bytes()
    magic, width, height, re0, re1, im0, im1, n, depth = struct.unpack_from(
        "<4sII4dII", blob
    )
    assert magic == b"CLXG"
    assert (width, height, n, depth) == (16, 12, 3, 10)
    assert (re0, re1, im0, im1) == (-3.0, 3.0, -3.0, 3.0)
    assert len(blob) == struct.calcsize("<4sII4dII") + 16 * 12
    loaded = load_grid(path)
    assert np.array_equal(loaded.codes, grid.codes)


def test_witness_code_appears_at_algebraic_pixel():
    # a tiny window centered on 1+i for n=3 must contain a witness pixel
    grid = classify_grid(3, (1 - 1e-7, 1 + 1e-7, 1 - 1e-7, 1 + 1e-7), (3, 3),
                         max_depth=8, mode="rigorous")
    assert (grid.codes == CONNECTED_WITNESS).any()
