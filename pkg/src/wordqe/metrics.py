"""Corpus-level MCC and per-class precision/recall/F1 for word-level QE."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .core import ArityMismatch, ConfusionCounts, Label, LengthMismatch, TagSequence

ALL, WORDS, GAPS = "all", "words", "gaps"
_LOG_THRESHOLD = 10**6


def _slot_slice(slot_filter: str) -> slice:
    if slot_filter == ALL:
        return slice(None)
    if slot_filter == WORDS:
        return slice(1, None, 2)
    if slot_filter == GAPS:
        return slice(0, None, 2)
    raise ValueError(f"unknown slot filter {slot_filter!r}")


def confusion_from_arrays(pred_bad: np.ndarray, ref_bad: np.ndarray) -> ConfusionCounts:
    pred_bad = np.asarray(pred_bad, dtype=bool)
    ref_bad = np.asarray(ref_bad, dtype=bool)
    tp = int(np.count_nonzero(pred_bad & ref_bad))
    fp = int(np.count_nonzero(pred_bad & ~ref_bad))
    fn = int(np.count_nonzero(~pred_bad & ref_bad))
    tn = pred_bad.size - tp - fp - fn
    return ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)


def _check_pair(pred: Sequence[TagSequence], ref: Sequence[TagSequence]):
    if len(pred) != len(ref):
        raise LengthMismatch(f"{len(pred)} predicted segments vs {len(ref)} reference segments")
    for i, (p, r) in enumerate(zip(pred, ref), 1):
        if len(p) != len(r):
            raise ArityMismatch(f"segment {i}: {len(p)} predicted tags vs {len(r)} reference tags")


def confusion(pred: Sequence[TagSequence], ref: Sequence[TagSequence],
              slot_filter: str = ALL) -> ConfusionCounts:
    """Pooled confusion counts over the selected slots of every segment."""
    _check_pair(pred, ref)
    sel = _slot_slice(slot_filter)
    p = [t is Label.BAD for seq in pred for t in seq[sel]]
    r = [t is Label.BAD for seq in ref for t in seq[sel]]
    return confusion_from_arrays(np.array(p, dtype=bool), np.array(r, dtype=bool))


def mcc(c: ConfusionCounts) -> float:
    """Matthews correlation; 0.0 whenever a marginal is empty."""
    factors = (c.tp + c.fp, c.tp + c.fn, c.tn + c.fp, c.tn + c.fn)
    if 0 in factors:
        return 0.0
    num = c.tp * c.tn - c.fp * c.fn
    if c.total > _LOG_THRESHOLD:
        denom = math.exp(0.5 * math.fsum(math.log(f) for f in factors))
    else:
        denom = math.sqrt(math.prod(factors))
    return max(-1.0, min(1.0, num / denom))


def prf(c: ConfusionCounts, cls: Label | str = Label.BAD) -> tuple[float, float, float]:
    """Precision, recall and F1 with ``cls`` as the positive class."""
    if Label(cls) is Label.OK:
        c = c.swapped()
    precision = c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0
    recall = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class SlotReport:
    mcc: float
    bad: ClassScores
    ok: ClassScores
    counts: ConfusionCounts

    @classmethod
    def from_counts(cls, c: ConfusionCounts) -> "SlotReport":
        return cls(mcc(c), ClassScores(*prf(c, Label.BAD)), ClassScores(*prf(c, Label.OK)), c)


@dataclass(frozen=True)
class BreakdownReport:
    target: SlotReport
    mt: SlotReport
    gap: SlotReport

    def to_dict(self) -> dict:
        out = {"target_mcc": self.target.mcc, "mt_mcc": self.mt.mcc, "gap_mcc": self.gap.mcc}
        for name, part in (("target", self.target), ("mt", self.mt), ("gap", self.gap)):
            for cls_name, scores in (("bad", part.bad), ("ok", part.ok)):
                for field_name, value in asdict(scores).items():
                    out[f"{name}_{cls_name}_{field_name}"] = value
            for count_name, value in asdict(part.counts).items():
                out[f"{name}_{count_name}"] = value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        rows = [("Target", self.target), ("MT", self.mt), ("GAP", self.gap)]
        header = f"{'slots':<8}{'MCC':>8}   {'BAD P':>7}{'BAD R':>7}{'BAD F1':>8}   {'OK P':>7}{'OK R':>7}{'OK F1':>8}"
        lines = [header, "-" * len(header)]
        for name, r in rows:
            lines.append(
                f"{name:<8}{r.mcc:>8.4f}   {r.bad.precision:>7.4f}{r.bad.recall:>7.4f}{r.bad.f1:>8.4f}"
                f"   {r.ok.precision:>7.4f}{r.ok.recall:>7.4f}{r.ok.f1:>8.4f}"
            )
        return "\n".join(lines) + "\n"


def breakdown_report(pred: Sequence[TagSequence], ref: Sequence[TagSequence]) -> BreakdownReport:
    """Target (all slots), MT (word slots) and GAP (gap slots) scores."""
    _check_pair(pred, ref)
    p = np.array([t is Label.BAD for seq in pred for t in seq], dtype=bool)
    r = np.array([t is Label.BAD for seq in ref for t in seq], dtype=bool)
    gap = np.concatenate([np.arange(len(seq)) % 2 == 0 for seq in ref]) if ref else np.zeros(0, bool)
    return BreakdownReport(
        target=SlotReport.from_counts(confusion_from_arrays(p, r)),
        mt=SlotReport.from_counts(confusion_from_arrays(p[~gap], r[~gap])),
        gap=SlotReport.from_counts(confusion_from_arrays(p[gap], r[gap])),
    )
