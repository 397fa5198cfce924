"""Motion-blur robustness toolkit."""

from ._core import (
    LEVELS,
    BlurbenchError,
    DimensionError,
    FormatError,
    ValidationError,
    blur,
    blur_variants,
    cider_d,
    corpus_cider_d,
    feature_histograms,
    kernel_shape,
    level_frequencies,
    load_pnm,
    plan,
    render_degradation,
    render_scores,
    sample_level,
    save_pnm,
    tokenize,
)

__all__ = [
    "LEVELS",
    "BlurbenchError",
    "DimensionError",
    "FormatError",
    "ValidationError",
    "blur",
    "blur_variants",
    "cider_d",
    "corpus_cider_d",
    "feature_histograms",
    "kernel_shape",
    "level_frequencies",
    "load_pnm",
    "plan",
    "render_degradation",
    "render_scores",
    "sample_level",
    "save_pnm",
    "tokenize",
]
