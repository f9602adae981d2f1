"""Collinear IFS attractors, their connectedness locus, covering-property
geometry, interior-point certification and figure rendering."""

from .attractor import (
    AttractorCloud,
    attractor_points,
    difference_identity_check,
    dump_points_csv,
    hull_radius,
    piece,
)
from .certify import Certificate, certify_batch, certify_interior
from .connectivity import (
    GridResult,
    Verdict,
    classify,
    classify_grid,
    load_grid,
    save_grid,
    tail_bound,
)
from .digitsets import DigitSet, IntervalHull, difference_set, digits, interval_hull
from .errors import DomainError, NumericalError, ResourceLimitError
from .geometry import (
    BoundsReport,
    CoverRect,
    HullVerdict,
    bounds,
    cover_rect,
    covering_check_geometric,
    covering_predicate,
    hull_membership,
    in_X,
    in_X_interior,
    parallelogram,
    parallelogram_covering_check,
    threshold_inequality,
)
from .polyroots import CoeffWord, RootPoint, in_mhat, mhat_sample, roots
from .raster import RasterJob, render, write_image

__version__ = "0.1.0"

__all__ = [
    "AttractorCloud",
    "BoundsReport",
    "Certificate",
    "CoeffWord",
    "CoverRect",
    "DigitSet",
    "DomainError",
    "GridResult",
    "HullVerdict",
    "IntervalHull",
    "NumericalError",
    "RasterJob",
    "ResourceLimitError",
    "RootPoint",
    "Verdict",
    "attractor_points",
    "bounds",
    "certify_batch",
    "certify_interior",
    "classify",
    "classify_grid",
    "cover_rect",
    "covering_check_geometric",
    "covering_predicate",
    "difference_identity_check",
    "difference_set",
    "digits",
    "dump_points_csv",
    "hull_membership",
    "hull_radius",
    "in_X",
    "in_X_interior",
    "in_mhat",
    "interval_hull",
    "load_grid",
    "mhat_sample",
    "parallelogram",
    "parallelogram_covering_check",
    "piece",
    "render",
    "roots",
    "save_grid",
    "tail_bound",
    "threshold_inequality",
    "write_image",
]
