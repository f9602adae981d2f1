"""Interior-point certification for the connectedness locus.

A parameter c0 with a polynomial witness word is an interior locus point
whenever c0 lies strictly inside the lens region for n and, writing
p(c) = 1 + sum a_k c^-k, the value 2 c^{m+1} p(c) stays inside the
covering rectangle R(c, 2n-1) on a neighborhood of c0.  At the root
itself the value is 0, the rectangle has nonempty interior, and both
conditions are open, so verifying them at c0 certifies an open
neighborhood.  The reported radius is probed by circle sampling and is
explicitly not a rigorous bound (radius_kind "Sampled").
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, require_outside_unit_disk
from .geometry import in_X, in_X_interior
from .polyroots import CoeffWord
from . import polyroots

REFINE_RESIDUAL_REL = 1e-13
DEFAULT_MARGIN = 1e-9
DEFAULT_RADIUS_SAMPLES = 64
DEFAULT_RADIUS_TOL = 1e-12
_RADIUS_LO = 1e-9
_RADIUS_HI = 0.5
_BISECT_STEPS = 40


@dataclass(frozen=True)
class Certificate:
    """Outcome of one interior-point certification.

    certified is the conjunction of the three checks; radius > 0 only
    when certified, and radius_kind records that it was sampled, not
    proved.
    """

    c0: complex
    n: int
    word: CoeffWord
    x_margin: float
    radius: float
    radius_kind: str
    root_residual_ok: bool
    in_X_interior_ok: bool
    rect_containment_ok: bool

    @property
    def certified(self) -> bool:
        return self.root_residual_ok and self.in_X_interior_ok and self.rect_containment_ok

    def to_dict(self) -> dict:
        return {
            "re": self.c0.real,
            "im": self.c0.imag,
            "n": self.n,
            "coeffs": list(self.word.coeffs),
            "certified": self.certified,
            "radius": self.radius,
            "radius_kind": self.radius_kind,
            "x_margin": self.x_margin,
            "checks": {
                "root_residual_ok": self.root_residual_ok,
                "in_X_interior_ok": self.in_X_interior_ok,
                "rect_containment_ok": self.rect_containment_ok,
            },
        }


def _rect_half_extents(cs: np.ndarray, n: int):
    """Vectorized half extents of R(c, n) (branch on the sign of Re c)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        psi = np.where(
            cs.real >= 0.0,
            cs * (n + 1) / (1.0 + cs),
            cs * (n + 1) / (1.0 - cs),
        )
    return np.abs(psi.real), np.abs(psi.imag)


def _containment_ok(cs: np.ndarray, word: CoeffWord) -> np.ndarray:
    """Axis-aligned test 2 c^{m+1} p(c) in R(c, 2n-1), elementwise."""
    q = 2.0 * cs * np.polyval(word.monic(), cs)
    hw, hh = _rect_half_extents(cs, 2 * word.n - 1)
    good = (np.abs(q.real) <= hw) & (np.abs(q.imag) <= hh)
    return good & np.isfinite(q)


def _refine_root(c0: complex, word: CoeffWord):
    """Newton-refine c0 on the word's monic polynomial."""
    poly = word.monic()
    z = np.array([c0], dtype=np.complex128)
    dp = np.polyder(poly)
    m = word.degree
    for _ in range(100):
        pv = np.polyval(poly, z)
        scale = max(1.0, abs(z[0])) ** m
        if abs(pv[0]) <= REFINE_RESIDUAL_REL * scale:
            return complex(z[0]), float(abs(pv[0])), True
        dv = np.polyval(dp, z)
        if dv[0] == 0:
            return complex(z[0]), float(abs(pv[0])), False
        z = z - pv / dv
        if not np.isfinite(z[0]):
            raise NumericalError(f"Newton refinement diverged for word {word.coeffs}")
    scale = max(1.0, abs(z[0])) ** m
    residual = float(abs(np.polyval(poly, z)[0]))
    return complex(z[0]), residual, residual <= REFINE_RESIDUAL_REL * scale


def certify_interior(
    c0: complex,
    n: int,
    word,
    *,
    margin: float = DEFAULT_MARGIN,
    radius_samples: int = DEFAULT_RADIUS_SAMPLES,
    radius_tol: float = DEFAULT_RADIUS_TOL,
) -> Certificate:
    """Certify c0 as an interior locus point via its polynomial witness.

    Checks, in order: the refined root residual, strict lens membership
    with the given margin, and rectangle containment at c0.  When all
    pass, the largest sampled-safe neighborhood radius is bisected out
    of [1e-9, 0.5] using `radius_samples` points on two circles.
    """
    c0 = require_outside_unit_disk(c0)
    if not isinstance(word, CoeffWord):
        word = CoeffWord(n, tuple(word))
    if word.n != n:
        word = CoeffWord(n, word.coeffs)  # revalidates against this n

    c_ref, _, residual_ok = _refine_root(c0, word)
    if not residual_ok:
        c_ref = c0
    interior_ok = bool(residual_ok and in_X_interior(c_ref, n, margin))
    contain_ok = bool(
        residual_ok
        and _containment_ok(np.array([c_ref], dtype=np.complex128), word)[0]
    )

    certified = residual_ok and interior_ok and contain_ok
    radius = 0.0
    radius_kind = "None"
    if certified:
        angles = np.exp(2j * np.pi * np.arange(radius_samples) / radius_samples)

        def ok(r: float) -> bool:
            for ring in (r, r / 2.0):
                cs = c_ref + ring * angles
                if not all(in_X(complex(z), n) for z in cs):
                    return False
                if not _containment_ok(cs, word).all():
                    return False
            return True

        lo, hi = _RADIUS_LO, _RADIUS_HI
        if ok(hi):
            radius = hi
        elif not ok(lo):
            radius = 0.0
        else:
            for _ in range(_BISECT_STEPS):
                if hi - lo <= radius_tol:
                    break
                mid = 0.5 * (lo + hi)
                if ok(mid):
                    lo = mid
                else:
                    hi = mid
            radius = lo
        radius_kind = "Sampled"

    return Certificate(
        c0=c_ref,
        n=n,
        word=word,
        x_margin=margin,
        radius=radius,
        radius_kind=radius_kind,
        root_residual_ok=residual_ok,
        in_X_interior_ok=interior_ok,
        rect_containment_ok=contain_ok,
    )


def certify_batch(
    n: int,
    max_degree: int,
    budget: int = 10**4,
    seed: int = 0,
    *,
    margin: float = DEFAULT_MARGIN,
    radius_samples: int = DEFAULT_RADIUS_SAMPLES,
    radius_tol: float = DEFAULT_RADIUS_TOL,
) -> list:
    """Certify every sampled polynomial root inside the lens interior."""
    certs = []
    for point in polyroots.mhat_sample(n, max_degree, budget=budget, seed=seed):
        if not in_X_interior(point.z, n, margin):
            continue
        certs.append(
            certify_interior(
                point.z,
                n,
                point.word,
                margin=margin,
                radius_samples=radius_samples,
                radius_tol=radius_tol,
            )
        )
    return certs


def write_certificates_jsonl(certs: list, path) -> None:
    """One JSON object per certificate."""
    with open(path, "w") as fh:
        for cert in certs:
            fh.write(json.dumps(cert.to_dict()) + "\n")
