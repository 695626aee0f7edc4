"""Linear score ensembles tuned for target-side MCC."""

from __future__ import annotations

import logging
import warnings
from typing import Sequence

import numpy as np

from .core import (
    EnsembleWeights,
    PredictionMatrix,
    QEError,
    ShapeMismatch,
    TagSequence,
    tags_to_bad_array,
)
from .metrics import confusion_from_arrays, mcc
from .optimizer import OptimizerConfig, nelder_mead, powell, standard_simplex_vertices

log = logging.getLogger(__name__)

NELDER_MEAD = "nelder-mead"
POWELL = "powell"
DEFAULT_THRESHOLD = 0.5


def _stack(preds: Sequence[PredictionMatrix]) -> np.ndarray:
    if not preds:
        raise ShapeMismatch("no prediction matrices given")
    first = preds[0]
    for i, p in enumerate(preds[1:], 2):
        if not first.same_shape(p):
            raise ShapeMismatch(f"prediction matrix {i} differs in shape from matrix 1")
    return np.vstack([p.values for p in preds])


def combine_raw(preds: Sequence[PredictionMatrix],
                weights: EnsembleWeights | Sequence[float]) -> np.ndarray:
    """Unclamped weighted sum of p(OK), flattened over all slots."""
    lambdas = np.asarray(getattr(weights, "lambdas", weights), dtype=np.float64)
    stacked = _stack(preds)
    if lambdas.shape != (stacked.shape[0],):
        raise ShapeMismatch(f"{lambdas.size} weights for {stacked.shape[0]} models")
    return lambdas @ stacked


def combine(preds: Sequence[PredictionMatrix],
            weights: EnsembleWeights | Sequence[float]) -> PredictionMatrix:
    """Weighted sum of p(OK) per slot, clamped into [0, 1]."""
    values = np.clip(combine_raw(preds, weights), 0.0, 1.0)
    return PredictionMatrix(values, preds[0].lengths)


def binarize(p: PredictionMatrix, threshold: float = DEFAULT_THRESHOLD) -> list:
    """OK where p(OK) >= threshold, else BAD."""
    if not 0.0 < threshold < 1.0:
        raise QEError(f"threshold must lie in (0, 1), got {threshold}")
    bad = p.values < threshold
    return [TagSequence.from_bad_mask(bad[p.offsets[k]:p.offsets[k + 1]]) for k in range(len(p))]


class MCCObjective:
    """Negated target MCC of the binarized ensemble; remembers the best point."""

    def __init__(self, stacked: np.ndarray, ref_bad: np.ndarray, threshold: float):
        self.stacked = stacked
        self.ref_bad = ref_bad
        self.threshold = threshold
        self.best_x = None
        self.best_f = np.inf

    def score(self, lambdas: np.ndarray) -> float:
        pred_bad = (lambdas @ self.stacked) < self.threshold
        return mcc(confusion_from_arrays(pred_bad, self.ref_bad))

    def __call__(self, lambdas: np.ndarray) -> float:
        value = -self.score(lambdas)
        if value < self.best_f:
            self.best_x, self.best_f = lambdas.copy(), value
        return value


def _reference_array(preds: Sequence[PredictionMatrix], refs: Sequence[TagSequence]) -> np.ndarray:
    lengths = preds[0].lengths
    if len(refs) != lengths.size:
        raise ShapeMismatch(f"{len(refs)} reference segments for {lengths.size} scored segments")
    for i, (r, n) in enumerate(zip(refs, lengths), 1):
        if len(r) != n:
            raise ShapeMismatch(f"segment {i}: {len(r)} reference tags vs {n} scores")
    return tags_to_bad_array(refs)


def single_model_mccs(dev_preds: Sequence[PredictionMatrix], dev_refs: Sequence[TagSequence],
                      threshold: float = DEFAULT_THRESHOLD) -> list:
    stacked = _stack(dev_preds)
    objective = MCCObjective(stacked, _reference_array(dev_preds, dev_refs), threshold)
    return [objective.score(v) for v in np.eye(len(dev_preds))]


def optimize_weights(dev_preds: Sequence[PredictionMatrix], dev_refs: Sequence[TagSequence],
                     method: str = NELDER_MEAD, cfg: OptimizerConfig = OptimizerConfig(),
                     threshold: float = DEFAULT_THRESHOLD, return_trace: bool = False):
    """Search ensemble weights maximizing dev-set target MCC.

    Nelder-Mead starts from the unit vectors plus the origin, so every
    single-model weighting is scored. Powell starts from the best of those
    points and the uniform weighting ``1/k``; its coordinate line searches
    tend to stall on the flat MCC surface around a one-hot vertex. Returns ``(weights, achieved_mcc)``, plus the optimizer
    trace when ``return_trace`` is set.
    """
    k = len(dev_preds)
    if k < 2:
        raise QEError("an ensemble needs at least two models")
    if not 0.0 < threshold < 1.0:
        raise QEError(f"threshold must lie in (0, 1), got {threshold}")
    stacked = _stack(dev_preds)
    objective = MCCObjective(stacked, _reference_array(dev_preds, dev_refs), threshold)
    vertices = standard_simplex_vertices(k)

    if method == NELDER_MEAD:
        result = nelder_mead(objective, vertices, cfg)
    elif method == POWELL:
        candidates = np.vstack([vertices, np.full((1, k), 1.0 / k)])
        start = min(candidates, key=objective)
        result = powell(objective, start, cfg)
    else:
        raise QEError(f"unknown optimization method {method!r}")

    achieved = -objective.best_f
    singles = [objective.score(v) for v in np.eye(k)]
    if achieved < max(singles):
        warnings.warn(
            f"ensemble dev MCC {achieved:.6f} is below the best single model ({max(singles):.6f})",
            RuntimeWarning, stacklevel=2)
    log.info("optimized %d-model ensemble with %s: dev MCC %.6f", k, method, achieved)
    weights = EnsembleWeights(tuple(objective.best_x))
    if return_trace:
        return weights, achieved, result.trace
    return weights, achieved
