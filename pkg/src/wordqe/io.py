"""Line-oriented corpus, tag, score and weight files (UTF-8, one segment per line)."""

from __future__ import annotations

import math
import sys
from typing import Iterable, Iterator, Sequence

from .core import (
    EnsembleWeights,
    Label,
    PredictionMatrix,
    QEError,
    SubwordMap,
    TagSequence,
    TokenSequence,
)

FORMAT_VERSION = "1"


class BadLabel(QEError):
    pass


class BadFloat(QEError):
    pass


class UnevenArity(QEError):
    pass


def _lines(path) -> Iterator[tuple[int, str]]:
    with open(path, encoding="utf-8", newline="\n") as f:
        for lineno, line in enumerate(f, 1):
            yield lineno, line.rstrip("\n").rstrip("\r")


def _write_lines(path, lines: Iterable[str]):
    """Write to ``path``, or to stdout when ``path`` is None or ``-``."""
    if path is None or str(path) == "-":
        for line in lines:
            sys.stdout.write(line + "\n")
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line)
            f.write("\n")


def read_corpus(path) -> Iterator[TokenSequence]:
    for lineno, line in _lines(path):
        try:
            yield TokenSequence.from_line(line)
        except QEError as exc:
            raise QEError(f"{path}:{lineno}: {exc}") from None


def write_corpus(path, segments: Iterable[Sequence[str]]):
    _write_lines(path, (" ".join(seg) for seg in segments))


def parse_tag_line(line: str, lineno: int = 1, path="<string>") -> TagSequence:
    fields = line.split()
    for col, tag in enumerate(fields, 1):
        if tag not in ("OK", "BAD"):
            raise BadLabel(f"{path}:{lineno}:{col}: invalid label {tag!r}")
    if len(fields) % 2 != 1:
        raise UnevenArity(f"{path}:{lineno}: {len(fields)} tags, expected an odd count")
    return TagSequence(fields)


def read_tags(path) -> Iterator[TagSequence]:
    for lineno, line in _lines(path):
        yield parse_tag_line(line, lineno, path)


def write_tags(path, tags: Iterable[TagSequence]):
    _write_lines(path, (" ".join(Label(t).value for t in seq) for seq in tags))


def parse_score_line(line: str, lineno: int = 1, path="<string>") -> list:
    fields = line.split()
    values = []
    for col, field in enumerate(fields, 1):
        try:
            value = float(field)
        except ValueError:
            raise BadFloat(f"{path}:{lineno}:{col}: not a number: {field!r}") from None
        if not (0.0 <= value <= 1.0) or math.isnan(value):
            raise BadFloat(f"{path}:{lineno}:{col}: score {field} outside [0, 1]")
        values.append(value)
    if len(values) % 2 != 1:
        raise UnevenArity(f"{path}:{lineno}: {len(values)} scores, expected an odd count")
    return values


def read_scores(path) -> PredictionMatrix:
    return PredictionMatrix.from_rows(parse_score_line(line, lineno, path)
                                      for lineno, line in _lines(path))


def format_scores(values: Iterable[float]) -> str:
    # repr gives the shortest string that round-trips
    return " ".join(repr(float(v)) for v in values)


def write_scores(path, p: PredictionMatrix):
    _write_lines(path, (format_scores(row) for row in p.rows()))


def read_weights(path) -> EnsembleWeights:
    values = []
    for lineno, line in _lines(path):
        if not line.strip():
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise BadFloat(f"{path}:{lineno}: not a number: {line!r}") from None
        if not math.isfinite(values[-1]):
            raise BadFloat(f"{path}:{lineno}: weight must be finite")
    return EnsembleWeights(tuple(values))


def write_weights(path, weights: EnsembleWeights):
    _write_lines(path, (repr(v) for v in weights.lambdas))


def format_map(smap: SubwordMap) -> str:
    return " ".join(f"{s}:{e}" for s, e in smap.spans)


def write_maps(path, maps: Iterable[SubwordMap]):
    _write_lines(path, (format_map(m) for m in maps))


def read_maps(path) -> Iterator[SubwordMap]:
    for lineno, line in _lines(path):
        try:
            spans = [tuple(int(x) for x in field.split(":")) for field in line.split()]
            yield SubwordMap(tuple(spans))
        except (ValueError, TypeError, QEError) as exc:
            raise QEError(f"{path}:{lineno}: bad subword map: {exc}") from None


