"""Metallic-means substitution tilings of [0,1] and their removal fractals."""

from .dimension import (
    CharPoly,
    DimensionReport,
    cantor_hausdorff,
    cantor_similarity,
    char_poly,
    dimension,
    positive_root,
)
from .errors import (
    CapExceeded,
    EmptyFractal,
    InvalidRemovalCount,
    MetallicError,
    ParamsMismatch,
    PolicyIndexMismatch,
    ValidationError,
)
from .estimate import (
    BoxCountFit,
    HausdorffSum,
    box_count,
    box_dimension,
    empirical_dimension,
    hausdorff_sum,
)
from .fractal import (
    CoverInterval,
    FractalSpec,
    IntervalCover,
    cover_at_depth,
    cover_summary,
    gaps,
    iter_cover_intervals,
    refine,
    survivors,
)
from .quadfield import MetallicParams, QuadElement, gamma_pow
from .render import RenderPlan, render_construction, render_tiling_stack
from .substitution import (
    CountVector,
    iter_word_at_step,
    metallic_sequence,
    substitute,
    tile_counts,
    word_at_step,
    word_length,
)
from .tiling import Tile, TileKind, Tiling, tiling_at_step, total_length

__version__ = "0.1.0"

__all__ = [
    "BoxCountFit",
    "CapExceeded",
    "CharPoly",
    "CountVector",
    "CoverInterval",
    "DimensionReport",
    "EmptyFractal",
    "FractalSpec",
    "HausdorffSum",
    "IntervalCover",
    "InvalidRemovalCount",
    "MetallicError",
    "MetallicParams",
    "ParamsMismatch",
    "PolicyIndexMismatch",
    "QuadElement",
    "RenderPlan",
    "Tile",
    "TileKind",
    "Tiling",
    "ValidationError",
    "box_count",
    "box_dimension",
    "cantor_hausdorff",
    "cantor_similarity",
    "char_poly",
    "cover_at_depth",
    "cover_summary",
    "dimension",
    "empirical_dimension",
    "gamma_pow",
    "gaps",
    "hausdorff_sum",
    "iter_cover_intervals",
    "iter_word_at_step",
    "metallic_sequence",
    "positive_root",
    "refine",
    "render_construction",
    "render_tiling_stack",
    "substitute",
    "survivors",
    "tile_counts",
    "tiling_at_step",
    "total_length",
    "word_at_step",
    "word_length",
]
