"""Domain types shared across the toolkit.

Tag sequences interleave gap and word slots: for ``n`` MT words there are
``2n + 1`` tags, gaps at even indices and words at odd indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np


class QEError(ValueError):
    """Base class for validation errors raised by the toolkit."""


class EmptySegment(QEError):
    pass


class ScriptMismatch(QEError):
    pass


class SegmentationMismatch(QEError):
    pass


class ArityMismatch(QEError):
    pass


class LengthMismatch(QEError):
    pass


class ShapeMismatch(QEError):
    pass


class DegenerateSimplex(QEError):
    pass


class Label(str, enum.Enum):
    OK = "OK"
    BAD = "BAD"

    def __str__(self) -> str:
        return self.value


class TokenSequence(tuple):
    """Immutable sequence of whitespace-free, non-empty tokens."""

    def __new__(cls, tokens: Iterable[str] = ()):
        tokens = tuple(tokens)
        for tok in tokens:
            if not isinstance(tok, str) or not tok:
                raise QEError(f"invalid token {tok!r}")
            if " " in tok:
                raise QEError(f"token contains a space: {tok!r}")
        return super().__new__(cls, tokens)

    @classmethod
    def from_line(cls, line: str) -> "TokenSequence":
        return cls(line.split())

    def __str__(self) -> str:
        return " ".join(self)

    def __repr__(self) -> str:
        return f"TokenSequence({list(self)!r})"


class TagSequence(tuple):
    """OK/BAD labels laid out as gap, word, gap, ..., word, gap."""

    def __new__(cls, tags: Iterable[Label | str] = ()):
        labels = tuple(Label(t) for t in tags)
        if len(labels) % 2 != 1:
            raise ArityMismatch(f"tag sequence length must be odd, got {len(labels)}")
        return super().__new__(cls, labels)

    @classmethod
    def from_line(cls, line: str) -> "TagSequence":
        return cls(line.split())

    @classmethod
    def from_bad_mask(cls, bad: Sequence[bool]) -> "TagSequence":
        return cls(Label.BAD if b else Label.OK for b in bad)

    @property
    def arity(self) -> int:
        return len(self) // 2

    @property
    def gaps(self) -> tuple:
        return self[0::2]

    @property
    def words(self) -> tuple:
        return self[1::2]

    def bad_mask(self) -> np.ndarray:
        return np.fromiter((t is Label.BAD for t in self), dtype=bool, count=len(self))

    def __str__(self) -> str:
        return " ".join(t.value for t in self)

    def __repr__(self) -> str:
        return f"TagSequence({str(self)!r})"


def validate_tag_sequence(tags: Sequence, n: int) -> bool:
    """True iff ``tags`` has ``2n + 1`` entries, all of them OK or BAD."""
    if len(tags) != 2 * n + 1:
        return False
    return all(t in ("OK", "BAD") for t in tags)


@dataclass(frozen=True)
class TranslationTriplet:
    src: TokenSequence
    mt: TokenSequence
    pe: TokenSequence

    def __post_init__(self):
        for name in ("src", "mt", "pe"):
            value = getattr(self, name)
            if not isinstance(value, TokenSequence):
                object.__setattr__(self, name, TokenSequence(value))
        if not self.mt:
            raise EmptySegment("MT segment is empty")
        if not self.pe:
            raise EmptySegment("post-edited segment is empty")


@dataclass(frozen=True)
class SubwordMap:
    """Half-open subword index span per word, e.g. ``((0, 2), (2, 3))``."""

    spans: tuple

    def __post_init__(self):
        spans = tuple((int(s), int(e)) for s, e in self.spans)
        object.__setattr__(self, "spans", spans)
        expected = 0
        for s, e in spans:
            if s != expected or e <= s:
                raise SegmentationMismatch(f"spans do not partition the subwords: {spans}")
            expected = e

    @property
    def word_count(self) -> int:
        return len(self.spans)

    @property
    def subword_count(self) -> int:
        return self.spans[-1][1] if self.spans else 0


class EditKind(str, enum.Enum):
    MATCH = "match"
    SUBSTITUTION = "substitution"
    # MT token absent from the post-edit (must be removed from the MT).
    INSERTION = "insertion"
    # Post-edit token missing from the MT.
    DELETION = "deletion"
    SHIFT = "shift"


class Edit(NamedTuple):
    kind: EditKind
    mt_index: Optional[int] = None
    pe_index: Optional[int] = None
    # PE-side token for substitutions and deletions.
    token: Optional[str] = None
    # (start, length, destination) on the sequence as it stands before the shift.
    shift_span: Optional[tuple] = None


def apply_shift(seq: list, span: tuple) -> list:
    """Move ``seq[start:start+length]`` so that it begins at ``destination``
    of the sequence left after removing the block."""
    start, length, dest = span
    block = seq[start:start + length]
    rest = seq[:start] + seq[start + length:]
    return rest[:dest] + block + rest[dest:]


@dataclass(frozen=True)
class EditScript:
    """Shift edits (applied first, in order) followed by the alignment of the
    shifted MT against the post-edit. Alignment ``mt_index`` values refer to
    positions in the original MT."""

    edits: tuple
    mt_len: int
    pe_len: int

    @property
    def shifts(self) -> tuple:
        return tuple(e for e in self.edits if e.kind is EditKind.SHIFT)

    @property
    def alignment(self) -> tuple:
        return tuple(e for e in self.edits if e.kind is not EditKind.SHIFT)

    @property
    def total_cost(self) -> int:
        return sum(1 for e in self.edits if e.kind is not EditKind.MATCH)

    def shifted_order(self) -> list:
        """Original MT indices in the order they stand after all shifts."""
        order = list(range(self.mt_len))
        for e in self.shifts:
            order = apply_shift(order, e.shift_span)
        return order

    def replay(self, mt: Sequence[str]) -> list:
        """Apply the script to ``mt`` and return the resulting token list."""
        if len(mt) != self.mt_len:
            raise ScriptMismatch(f"script expects {self.mt_len} MT tokens, got {len(mt)}")
        order = iter(self.shifted_order())
        out = []
        for e in self.alignment:
            if e.kind is EditKind.DELETION:
                out.append(e.token)
                continue
            expected = next(order, None)
            if e.mt_index != expected:
                raise ScriptMismatch(f"edit {e} out of order, expected MT index {expected}")
            if e.kind is EditKind.MATCH:
                out.append(mt[e.mt_index])
            elif e.kind is EditKind.SUBSTITUTION:
                out.append(e.token)
        if next(order, None) is not None:
            raise ScriptMismatch("script does not consume every MT token")
        return out


@dataclass(frozen=True)
class ConfusionCounts:
    """Binary confusion counts with BAD as the positive class."""

    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            self.tp + other.tp, self.tn + other.tn, self.fp + other.fp, self.fn + other.fn
        )

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def swapped(self) -> "ConfusionCounts":
        """Counts with OK taken as the positive class."""
        return ConfusionCounts(tp=self.tn, tn=self.tp, fp=self.fn, fn=self.fp)


@dataclass(frozen=True, eq=False)
class PredictionMatrix:
    """Per-slot p(OK) scores, stored flat with per-segment lengths."""

    values: np.ndarray
    lengths: np.ndarray
    offsets: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        lengths = np.asarray(self.lengths, dtype=np.int64)
        if values.ndim != 1 or lengths.ndim != 1:
            raise ShapeMismatch("values and lengths must be one-dimensional")
        if lengths.sum() != values.size:
            raise ShapeMismatch(f"row lengths sum to {lengths.sum()}, have {values.size} values")
        if np.any(lengths % 2 != 1):
            raise ArityMismatch("every row must have odd length")
        if values.size and (np.any(~(values >= 0.0)) or np.any(~(values <= 1.0))):
            raise QEError("scores must lie in [0, 1]")
        values.setflags(write=False)
        lengths.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "offsets", np.concatenate(([0], np.cumsum(lengths))))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]]) -> "PredictionMatrix":
        rows = [np.asarray(r, dtype=np.float64) for r in rows]
        values = np.concatenate(rows) if rows else np.zeros(0)
        return cls(values, [r.size for r in rows])

    def __len__(self) -> int:
        return self.lengths.size

    def row(self, k: int) -> np.ndarray:
        return self.values[self.offsets[k]:self.offsets[k + 1]]

    def rows(self) -> Iterator[np.ndarray]:
        for k in range(len(self)):
            yield self.row(k)

    def same_shape(self, other: "PredictionMatrix") -> bool:
        return np.array_equal(self.lengths, other.lengths)


@dataclass(frozen=True)
class EnsembleWeights:
    lambdas: tuple

    def __post_init__(self):
        lambdas = tuple(float(x) for x in self.lambdas)
        if not lambdas:
            raise QEError("at least one ensemble weight is required")
        object.__setattr__(self, "lambdas", lambdas)

    def __len__(self) -> int:
        return len(self.lambdas)

    def as_array(self) -> np.ndarray:
        return np.array(self.lambdas, dtype=np.float64)


def tags_to_bad_array(tags: Sequence[TagSequence]) -> np.ndarray:
    """Concatenate tag sequences into one boolean array (True = BAD)."""
    flat = [t is Label.BAD for seq in tags for t in seq]
    return np.array(flat, dtype=bool)
