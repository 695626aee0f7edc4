"""Label-balanced negative log-likelihood of OK/BAD tag predictions."""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .core import PredictionMatrix, QEError, ShapeMismatch, TagSequence, tags_to_bad_array

EPSILON = 1e-12
MEAN, SUM = "mean", "sum"


class LossTerms(NamedTuple):
    total: float
    l_ok: float
    l_bad: float


def balanced_nll(p: PredictionMatrix, refs: Sequence[TagSequence], mu: float = 1.0,
                 reduction: str = MEAN) -> LossTerms:
    """``total = l_ok + mu * l_bad``.

    ``l_ok`` averages -log p(OK) over OK reference slots and ``l_bad``
    averages -log(1 - p(OK)) over BAD ones (``reduction="sum"`` sums
    instead). A class with no reference slots contributes 0.
    """
    if not mu > 0:
        raise QEError(f"mu must be positive, got {mu}")
    if reduction not in (MEAN, SUM):
        raise QEError(f"unknown reduction {reduction!r}")
    if len(refs) != len(p) or any(len(r) != n for r, n in zip(refs, p.lengths)):
        raise ShapeMismatch("reference tags do not match the prediction matrix shape")

    bad = tags_to_bad_array(refs)
    probs = np.clip(p.values, EPSILON, 1.0 - EPSILON)
    nll_ok = -np.log(probs[~bad])
    nll_bad = -np.log1p(-probs[bad])
    if reduction == MEAN:
        l_ok = float(nll_ok.mean()) if nll_ok.size else 0.0
        l_bad = float(nll_bad.mean()) if nll_bad.size else 0.0
    else:
        l_ok, l_bad = float(nll_ok.sum()), float(nll_bad.sum())
    return LossTerms(l_ok + mu * l_bad, l_ok, l_bad)
