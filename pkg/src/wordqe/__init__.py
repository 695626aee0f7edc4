"""Word-level MT quality estimation: reference tags, subword tag projection,
MCC evaluation and ensemble weight tuning."""

from .core import (
    ConfusionCounts,
    EditScript,
    EnsembleWeights,
    Label,
    PredictionMatrix,
    QEError,
    SubwordMap,
    TagSequence,
    TokenSequence,
    TranslationTriplet,
    validate_tag_sequence,
)
from .ensemble import binarize, combine, optimize_weights
from .loss import balanced_nll
from .metrics import breakdown_report, confusion, mcc, prf
from .optimizer import OptimizerConfig, nelder_mead, powell, standard_simplex_vertices
from .subword import (
    SubwordConvention,
    build_subword_map,
    heuristic_subword_tags,
    naive_subword_tags,
    subword_tags_to_word_tags,
)
from .synthesis import Recipe, assemble, mask_words
from .ter import ShiftParams, edits_to_tags, generate_reference_tags, levenshtein_align, ter_align

__all__ = [
    "ConfusionCounts", "EditScript", "EnsembleWeights", "Label", "PredictionMatrix",
    "QEError", "SubwordMap", "TagSequence", "TokenSequence", "TranslationTriplet",
    "validate_tag_sequence", "binarize", "combine", "optimize_weights", "balanced_nll",
    "breakdown_report", "confusion", "mcc", "prf", "OptimizerConfig", "nelder_mead",
    "powell", "standard_simplex_vertices", "SubwordConvention", "build_subword_map",
    "heuristic_subword_tags", "naive_subword_tags", "subword_tags_to_word_tags",
    "Recipe", "assemble", "mask_words", "ShiftParams", "edits_to_tags",
    "generate_reference_tags", "levenshtein_align", "ter_align",
]
