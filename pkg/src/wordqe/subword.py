"""Moving tags between word and subword granularity.

``subword_tags_to_word_tags`` collapses model output on subwords into word
tags; ``heuristic_subword_tags`` builds subword references that collapse
back to the given word tags exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    ArityMismatch,
    Label,
    SegmentationMismatch,
    SubwordMap,
    TagSequence,
)
from .ter import ShiftParams, tags_for_pair

SUFFIX = "suffix"          # "he@@ llo": marker ends every non-final piece
PREFIX = "prefix"          # "he ##llo": marker starts every continuation piece
WORD_START = "word_start"  # "▁he llo": marker starts the first piece of a word


@dataclass(frozen=True)
class SubwordConvention:
    marker: str = "@@"
    position: str = SUFFIX

    def __post_init__(self):
        if not self.marker:
            raise ValueError("subword marker must be non-empty")
        if self.position not in (SUFFIX, PREFIX, WORD_START):
            raise ValueError(f"unknown marker position {self.position!r}")

    def strip(self, piece: str) -> str:
        m = self.marker
        if piece == m:
            return piece
        if self.position == SUFFIX:
            return piece[:-len(m)] if piece.endswith(m) else piece
        return piece[len(m):] if piece.startswith(m) else piece


BPE = SubwordConvention()
SENTENCEPIECE = SubwordConvention("▁", WORD_START)


def build_subword_map(words: Sequence[str], subwords: Sequence[str],
                      conv: SubwordConvention = BPE) -> SubwordMap:
    """Greedily group subwords left to right until each word is spelled out."""
    if not words or not subwords:
        raise SegmentationMismatch("word and subword sequences must be non-empty")
    spans = []
    pos = 0
    for k, word in enumerate(words):
        start = pos
        text = ""
        while text != word:
            if pos >= len(subwords):
                raise SegmentationMismatch(
                    f"subwords exhausted while matching word {k} ({word!r})")
            text += conv.strip(subwords[pos])
            pos += 1
            if not word.startswith(text):
                raise SegmentationMismatch(
                    f"subwords {list(subwords[start:pos])} do not spell word {k} ({word!r})")
        spans.append((start, pos))
    if pos != len(subwords):
        raise SegmentationMismatch(
            f"{len(subwords) - pos} subwords left over after the last word")
    return SubwordMap(tuple(spans))


def _check_arity(tags: TagSequence, n: int, what: str):
    if len(tags) != 2 * n + 1:
        raise ArityMismatch(f"{what} has {len(tags)} tags, expected {2 * n + 1}")


def subword_tags_to_word_tags(q_sw: TagSequence, smap: SubwordMap) -> TagSequence:
    _check_arity(q_sw, smap.subword_count, "subword tag sequence")
    out = []
    for s, e in smap.spans:
        out.append(q_sw[2 * s])
        inner = q_sw[2 * s + 1:2 * e]
        out.append(Label.BAD if Label.BAD in inner else Label.OK)
    out.append(q_sw[-1])
    return TagSequence(out)


def heuristic_subword_tags(q_w: TagSequence, q_sw_naive: TagSequence,
                           smap: SubwordMap) -> TagSequence:
    """Interpolate word tags and naive subword tags.

    OK words get all-OK pieces; BAD words keep their naive pieces when those
    already hold a BAD, and are forced to all-BAD otherwise.
    """
    _check_arity(q_w, smap.word_count, "word tag sequence")
    _check_arity(q_sw_naive, smap.subword_count, "naive subword tag sequence")
    out = []
    for k, (s, e) in enumerate(smap.spans):
        out.append(q_w[2 * k])
        width = 2 * (e - s) - 1
        if q_w[2 * k + 1] is Label.OK:
            out.extend([Label.OK] * width)
        else:
            inner = q_sw_naive[2 * s + 1:2 * e]
            out.extend(inner if Label.BAD in inner else [Label.BAD] * width)
    out.append(q_w[-1])
    return TagSequence(out)


def naive_subword_tags(mt_sw: Sequence[str], pe_sw: Sequence[str],
                       params: ShiftParams = ShiftParams()) -> TagSequence:
    """Reference tags from TER run directly on subword sequences."""
    return tags_for_pair(mt_sw, pe_sw, params)


@dataclass(frozen=True)
class DisagreementReport:
    segments: int
    slots: int
    disagreements: int

    @property
    def rate(self) -> float:
        return self.disagreements / self.slots if self.slots else 0.0


def disagreement_report(word_tags: Sequence[TagSequence],
                        naive_tags: Sequence[TagSequence],
                        maps: Sequence[SubwordMap]) -> DisagreementReport:
    """How often naive subword references, collapsed to words, differ from
    the word-level references (slot-level count over the corpus)."""
    if not len(word_tags) == len(naive_tags) == len(maps):
        raise ArityMismatch("word tags, naive tags and maps differ in segment count")
    slots = wrong = 0
    for q_w, q_sw, smap in zip(word_tags, naive_tags, maps):
        up = subword_tags_to_word_tags(q_sw, smap)
        _check_arity(q_w, smap.word_count, "word tag sequence")
        slots += len(q_w)
        wrong += sum(a is not b for a, b in zip(up, q_w))
    return DisagreementReport(len(word_tags), slots, wrong)
