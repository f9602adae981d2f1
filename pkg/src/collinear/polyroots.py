"""Zeros of monic polynomials with coefficients from the kind-"D" alphabet.

A coefficient word (a_1, ..., a_m) stands for the monic polynomial
z^m + a_1 z^{m-1} + ... + a_m, equivalently z^m (1 + sum a_k z^-k).
Every root outside the closed unit disk is a certified locus member:
the word is a finite digit witness whose series tail is all zeros.

The sign involution a_k -> (-1)^k a_k negates all roots of a word, and
real coefficients supply conjugate root pairs for free; enumeration
processes one word per involution orbit and reflects the results.
"""

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .digitsets import digits
from .errors import DomainError, NumericalError, require_outside_unit_disk

RESIDUAL_REL = 1e-12
_NEWTON_CAP = 200


@dataclass(frozen=True)
class CoeffWord:
    """Coefficient word (a_1, ..., a_m) with every a_k in the kind-"D"
    alphabet for n."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) < 1:
            raise DomainError("coefficient word must have degree >= 1")
        g = self.n - 1
        for a in self.coeffs:
            if abs(a) > g:
                raise DomainError(f"coefficient {a} outside the alphabet for n={self.n}")

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def monic(self) -> np.ndarray:
        """Coefficients [1, a_1, ..., a_m] in numpy polynomial order."""
        return np.array((1,) + self.coeffs, dtype=np.float64)

    def alternated(self) -> "CoeffWord":
        """The involution a_k -> (-1)^k a_k, whose roots are the negated roots."""
        return CoeffWord(self.n, tuple(-a if k % 2 == 0 else a
                                       for k, a in enumerate(self.coeffs)))


@dataclass(frozen=True)
class RootPoint:
    """A polished root z (|z| > 1) of its word's monic polynomial."""

    z: complex
    word: CoeffWord
    residual: float


def _polish(poly: np.ndarray, z: np.ndarray, word: CoeffWord) -> tuple:
    """Newton-polish roots until |p(z)| <= RESIDUAL_REL * max(1,|z|)^m."""
    dp = np.polyder(poly)
    m = len(poly) - 1
    for _ in range(_NEWTON_CAP):
        pv = np.polyval(poly, z)
        target = RESIDUAL_REL * np.maximum(1.0, np.abs(z)) ** m
        done = np.abs(pv) <= target
        if done.all():
            return z, np.abs(pv)
        dv = np.polyval(dp, z)
        step = np.where((~done) & (dv != 0), pv / np.where(dv != 0, dv, 1.0), 0.0)
        z = z - step
        if not np.isfinite(z).all():
            raise NumericalError(f"Newton polish diverged for word {word.coeffs}")
    pv = np.abs(np.polyval(poly, z))
    target = RESIDUAL_REL * np.maximum(1.0, np.abs(z)) ** m
    if (pv > target).any():
        raise NumericalError(f"Newton polish stalled for word {word.coeffs}")
    return z, pv


def roots(word: CoeffWord) -> list:
    """All roots of the word's monic polynomial with |root| > 1, polished.

    Multiplicities appear as repetition; the all-zero word only roots the
    origin, giving an empty list.
    """
    poly = word.monic()
    if not np.any(poly[1:]):
        return []
    raw = np.roots(poly)
    raw = raw[np.abs(raw) > 0.5]  # roots at 0 never reach |z| > 1
    if len(raw) == 0:
        return []
    z, residuals = _polish(poly, raw.astype(np.complex128), word)
    keep = np.abs(z) > 1.0
    order = np.lexsort((z.imag[keep], z.real[keep]))
    zk = z[keep][order]
    rk = residuals[keep][order]
    return [RootPoint(z=complex(v), word=word, residual=float(r))
            for v, r in zip(zk, rk)]


def _orbit_points(word: CoeffWord) -> list:
    """Roots of a word plus the reflected roots of its involution partner."""
    pts = roots(word)
    alt = word.alternated()
    if alt.coeffs == word.coeffs:
        return pts
    mirrored = [RootPoint(z=-p.z, word=alt, residual=p.residual) for p in pts]
    return pts + mirrored


def mhat_sample(n: int, max_degree: int, budget: int = 10**4, seed: int = 0) -> list:
    """Roots outside the unit disk of polynomial words up to max_degree.

    Degrees with (2n-1)^m <= budget are enumerated exhaustively in
    lexicographic order; beyond that, `budget` words are sampled
    uniformly per degree (deterministic for a fixed seed).  One word per
    sign-involution orbit is processed and its partner's roots are
    obtained by reflection.
    """
    if max_degree < 1:
        raise DomainError(f"max_degree must be >= 1, got {max_degree}")
    if budget < 1:
        raise DomainError(f"budget must be >= 1, got {budget}")
    alphabet = digits("D", n).as_tuple()
    rng = np.random.default_rng(seed)
    out: list = []
    for m in range(1, max_degree + 1):
        exhaustive = len(alphabet) ** m <= budget
        if exhaustive:
            words = itertools.product(alphabet, repeat=m)
        else:
            draws = rng.integers(0, len(alphabet), size=(budget, m))
            words = (tuple(alphabet[j] for j in row) for row in draws)
        seen = set()
        for coeffs in words:
            word = CoeffWord(n, coeffs)
            canon = min(word.coeffs, word.alternated().coeffs)
            if canon in seen:
                continue
            seen.add(canon)
            if coeffs != canon:
                word = CoeffWord(n, canon)
            out.extend(_orbit_points(word))
    out.sort(key=lambda p: (p.word.degree, p.word.coeffs, p.z.real, p.z.imag))
    return out


def in_mhat(c: complex, n: int, max_degree: int, tol: float):
    """Search for a word with a root within tol of c; None if not found.

    Runs the membership search down to max_degree with a near-zero root
    target, then Newton-verifies the witness word actually roots near c.
    """
    from .connectivity import classify

    c = require_outside_unit_disk(c)
    verdict = classify(c, n, max_depth=max_degree, eps_root=max(tol, 1e-9))
    if verdict.tag != "ConnectedWitness":
        return None
    word = CoeffWord(n, verdict.witness)
    poly = word.monic()
    try:
        z, _ = _polish(poly, np.array([c], dtype=np.complex128), word)
    except NumericalError:
        return None
    z0 = complex(z[0])
    if abs(z0 - c) <= tol and abs(z0) > 1.0:
        return word
    return None


def write_roots_jsonl(points: list, path) -> None:
    """One JSON object per root: n, coeffs, re, im, residual."""
    with open(path, "w") as fh:
        for p in points:
            fh.write(json.dumps({
                "n": p.word.n,
                "coeffs": list(p.word.coeffs),
                "re": p.z.real,
                "im": p.z.imag,
                "residual": p.residual,
            }) + "\n")
