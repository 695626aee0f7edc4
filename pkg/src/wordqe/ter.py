"""TER alignment of MT against post-edits and OK/BAD reference tag derivation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .core import (
    Edit,
    EditKind,
    EditScript,
    EmptySegment,
    Label,
    ScriptMismatch,
    TagSequence,
    TranslationTriplet,
    apply_shift,
)

_OP_KINDS = {
    _kernels.OP_MATCH: EditKind.MATCH,
    _kernels.OP_SUB: EditKind.SUBSTITUTION,
    _kernels.OP_INS: EditKind.INSERTION,
    _kernels.OP_DEL: EditKind.DELETION,
}


@dataclass(frozen=True)
class ShiftParams:
    """Block-shift search limits (tercom defaults)."""

    enabled: bool = True
    max_span: int = 10
    max_distance: int = 50

    def __post_init__(self):
        if self.max_span < 1 or self.max_distance < 1:
            raise ValueError("shift limits must be positive")


NO_SHIFTS = ShiftParams(enabled=False)


def _encode(mt: Sequence[str], pe: Sequence[str]):
    if not mt or not pe:
        raise EmptySegment("TER alignment needs non-empty MT and post-edit")
    vocab: dict = {}
    a = np.array([vocab.setdefault(t, len(vocab)) for t in mt], dtype=np.int64)
    b = np.array([vocab.setdefault(t, len(vocab)) for t in pe], dtype=np.int64)
    return a, b


def _alignment_edits(a, b, order: Sequence[int], pe: Sequence[str]) -> list:
    """Translate kernel op codes into edits; ``order[i]`` is the original MT
    index of position ``i`` of ``a``."""
    edits = []
    i = j = 0
    for op in _kernels.align_ops(a, b).tolist():
        kind = _OP_KINDS[op]
        if kind is EditKind.MATCH:
            edits.append(Edit(kind, mt_index=order[i], pe_index=j))
            i += 1
            j += 1
        elif kind is EditKind.SUBSTITUTION:
            edits.append(Edit(kind, mt_index=order[i], pe_index=j, token=pe[j]))
            i += 1
            j += 1
        elif kind is EditKind.INSERTION:
            edits.append(Edit(kind, mt_index=order[i]))
            i += 1
        else:
            edits.append(Edit(kind, pe_index=j, token=pe[j]))
            j += 1
    return edits


def levenshtein_align(mt: Sequence[str], pe: Sequence[str]) -> EditScript:
    """Minimal unit-cost alignment without shifts.

    Backtrace ties prefer match, then substitution, then deletion (a PE
    token missing from the MT), then insertion (an MT token to drop).
    """
    a, b = _encode(mt, pe)
    edits = _alignment_edits(a, b, range(len(mt)), pe)
    return EditScript(tuple(edits), len(mt), len(pe))


def ter_align(mt: Sequence[str], pe: Sequence[str],
              params: ShiftParams = ShiftParams()) -> tuple[EditScript, float]:
    """Greedy shift search followed by a Levenshtein alignment.

    Each round picks the block shift giving the lowest remaining edit
    distance (ties: smallest start, then length, then destination) and
    applies it only if it lowers the total cost, counting 1 for the shift.
    Returns the script and ``total_cost / len(pe)``.
    """
    a, b = _encode(mt, pe)
    order = list(range(len(mt)))
    shifts = []
    if params.enabled and a.size > 1:
        cost = _kernels.edit_cost(a, b)
        while cost > 1:
            new_cost, s, length, dest = _kernels.best_shift(
                a, b, params.max_span, params.max_distance)
            if new_cost < 0 or new_cost + 1 >= cost:
                break
            span = (int(s), int(length), int(dest))
            shifts.append(Edit(EditKind.SHIFT, shift_span=span))
            a = np.array(apply_shift(a.tolist(), span), dtype=np.int64)
            order = apply_shift(order, span)
            cost = new_cost
    edits = shifts + _alignment_edits(a, b, order, pe)
    script = EditScript(tuple(edits), len(mt), len(pe))
    return script, script.total_cost / len(pe)


def edits_to_tags(script: EditScript, mt_len: int) -> TagSequence:
    """Derive gap/word tags for the MT side of ``script``.

    A word is BAD if it is substituted, dropped or shifted. A gap is BAD if
    one or more PE tokens are missing there; gap ``j`` sits between MT words
    ``j-1`` and ``j``, and a missing token goes into the gap right after the
    MT word preceding it in the (shifted) alignment.
    """
    if script.mt_len != mt_len:
        raise ScriptMismatch(f"script covers {script.mt_len} MT tokens, expected {mt_len}")
    seen = sorted(e.mt_index for e in script.alignment if e.kind is not EditKind.DELETION)
    if seen != list(range(mt_len)):
        raise ScriptMismatch("script alignment does not cover every MT token exactly once")

    bad = [False] * (2 * mt_len + 1)
    order = list(range(mt_len))
    for e in script.shifts:
        start, length, _ = e.shift_span
        for idx in order[start:start + length]:
            bad[2 * idx + 1] = True
        order = apply_shift(order, e.shift_span)

    gap = 0
    for e in script.alignment:
        if e.kind is EditKind.DELETION:
            bad[2 * gap] = True
            continue
        if e.kind is not EditKind.MATCH:
            bad[2 * e.mt_index + 1] = True
        gap = e.mt_index + 1
    return TagSequence.from_bad_mask(bad)


def generate_reference_tags(triplet: TranslationTriplet,
                            params: ShiftParams = ShiftParams()) -> TagSequence:
    script, _ = ter_align(triplet.mt, triplet.pe, params)
    return edits_to_tags(script, len(triplet.mt))


def tags_for_pair(mt: Sequence[str], pe: Sequence[str],
                  params: ShiftParams = ShiftParams()) -> TagSequence:
    """Reference tags for a bare (mt, pe) pair."""
    script, _ = ter_align(mt, pe, params)
    return edits_to_tags(script, len(mt))


def all_ok(tags: TagSequence) -> bool:
    return all(t is Label.OK for t in tags)
