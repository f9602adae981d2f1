import itertools
import json
import math

import numpy as np
import pytest

from collinear import CoeffWord, DomainError, in_mhat, mhat_sample, roots
from collinear.polyroots import write_roots_jsonl

PHI = (1 + math.sqrt(5)) / 2


def test_golden_ratio_root():
    pts = roots(CoeffWord(2, (-1, -1)))
    assert len(pts) == 1
    assert pts[0].z == pytest.approx(PHI, abs=1e-13)


def test_quadratic_complex_pair():
    pts = roots(CoeffWord(3, (-2, 2)))
    zs = sorted((p.z for p in pts), key=lambda z: z.imag)
    assert zs[0] == pytest.approx(1 - 1j, abs=1e-12)
    assert zs[1] == pytest.approx(1 + 1j, abs=1e-12)


@pytest.mark.parametrize("a", [-1, 0, 1])
def test_small_degree_one_words_have_no_roots(a):
    assert roots(CoeffWord(3, (a,))) == []


def test_all_zero_word_empty():
    assert roots(CoeffWord(4, (0, 0, 0))) == []


def test_residual_bound_holds():
    for coeffs in itertools.product((-2, 0, 2), repeat=4):
        word = CoeffWord(3, coeffs)
        for p in roots(word):
            scale = max(1.0, abs(p.z)) ** word.degree
            assert p.residual <= 1e-12 * scale


def test_roots_closed_under_conjugation_and_negation():
    word = CoeffWord(4, (3, -1, 2))
    zs = [p.z for p in roots(word)]
    for z in zs:
        assert any(abs(z.conjugate() - w) < 1e-9 for w in zs)
    alt = word.alternated()
    neg = [p.z for p in roots(alt)]
    for z in zs:
        assert any(abs(-z - w) < 1e-9 for w in neg)


def test_cauchy_bound():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(1, 6))
        coeffs = tuple(int(v) for v in rng.integers(1 - n, n, size=m))
        for p in roots(CoeffWord(n, coeffs)):
            assert abs(p.z) <= n + 1e-9


def test_mhat_exhaustive_contains_golden_pair():
    pts = mhat_sample(2, 2, budget=10**4, seed=0)
    zs = [p.z for p in pts]
    assert any(abs(z - PHI) < 1e-12 for z in zs)
    assert any(abs(z + PHI) < 1e-12 for z in zs)


def test_mhat_contains_one_plus_i():
    pts = mhat_sample(3, 2, budget=10**4, seed=0)
    assert any(abs(p.z - (1 + 1j)) < 1e-10 for p in pts)


def test_mhat_deterministic_and_sorted():
    a = mhat_sample(3, 3, budget=50, seed=7)  # sampled regime for degree >= 2
    b = mhat_sample(3, 3, budget=50, seed=7)
    assert [(p.word.coeffs, p.z) for p in a] == [(p.word.coeffs, p.z) for p in b]
    keys = [(p.word.degree, p.word.coeffs, p.z.real, p.z.imag) for p in a]
    assert keys == sorted(keys)


def test_mhat_words_nest():
    small = {p.word.coeffs for p in mhat_sample(2, 2, budget=10**4, seed=0)}
    # every kind-D word for n=2 is also a kind-D word for n=3
    for coeffs in small:
        CoeffWord(3, coeffs)  # must not raise


def test_in_mhat_examples():
    assert in_mhat(1 + 1j, 3, 4, 1e-9).coeffs == (-2, 2)
    assert in_mhat(1.5, 2, 2, 1e-9) is None
    assert in_mhat(2.0, 3, 1, 1e-9).coeffs == (-2,)


def test_word_validation():
    with pytest.raises(DomainError):
        CoeffWord(3, (3,))
    with pytest.raises(DomainError):
        CoeffWord(3, ())


def test_jsonl_output(tmp_path):
    pts = mhat_sample(2, 2, budget=100, seed=0)
    path = tmp_path / "roots.jsonl"
    write_roots_jsonl(pts, path)
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(rows) == len(pts)
    assert rows[0].keys() == {"n", "coeffs", "re", "im", "residual"}
    assert complex(rows[0]["re"], rows[0]["im"]) == pts[0].z
