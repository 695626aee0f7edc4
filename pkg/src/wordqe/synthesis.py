"""Synthetic post-editing triplets assembled from externally decoded files."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Mapping

import numpy as np

from .core import QEError, TokenSequence, TranslationTriplet

MASK_TOKEN = "<mask>"


class LineCountMismatch(QEError):
    pass


class EmptyLine(QEError):
    pass


# kind -> (src role, mt role, pe role)
RECIPES = {
    "src-mt-tgt": ("src", "mt", "tgt"),
    "src-mt1-mt2": ("src", "mt1", "mt2"),
    "bt-rt-tgt": ("bt", "rt", "tgt"),
    "src-rt-ft": ("src", "rt", "ft"),
    "mvppe": ("src", "mt", "pseudo-pe"),
    "bt-noisy-tgt": ("bt", "noisy", "tgt"),
}


@dataclass(frozen=True)
class Recipe:
    kind: str

    def __post_init__(self):
        if self.kind not in RECIPES:
            raise QEError(f"unknown recipe {self.kind!r}; expected one of {sorted(RECIPES)}")

    @property
    def roles(self) -> tuple:
        return RECIPES[self.kind]

    def check_inputs(self, inputs: Mapping[str, object]):
        missing = [r for r in self.roles if r not in inputs]
        if missing:
            raise QEError(f"recipe {self.kind} needs files for roles {missing}")


def _read_lines(path: Path) -> list:
    with open(path, encoding="utf-8", newline="\n") as f:
        return f.read().splitlines()


def assemble(recipe: Recipe | str, inputs: Mapping[str, str | Path]) -> Iterator[TranslationTriplet]:
    """Yield one (src, mt, pe) triplet per line of the role files."""
    if isinstance(recipe, str):
        recipe = Recipe(recipe)
    recipe.check_inputs(inputs)
    paths = [Path(inputs[r]) for r in recipe.roles]
    columns = [_read_lines(p) for p in paths]
    counts = [len(c) for c in columns]
    for path, count in zip(paths[1:], counts[1:]):
        if count != counts[0]:
            raise LineCountMismatch(
                f"{paths[0]} has {counts[0]} lines but {path} has {count}")
    for path, lines in zip(paths, columns):
        for lineno, line in enumerate(lines, 1):
            if not line.strip():
                raise EmptyLine(f"{path}:{lineno}: empty line")
    for src, mt, pe in zip(*columns):
        yield TranslationTriplet(TokenSequence.from_line(src), TokenSequence.from_line(mt),
                                 TokenSequence.from_line(pe))


def mask_count(n: int, ratio: float) -> int:
    """``round(ratio * n)`` with halves rounded up."""
    return int(math.floor(ratio * n + 0.5))


def mask_words(tgt: TokenSequence, ratio: float, seed: int | np.random.Generator,
               mask_token: str = MASK_TOKEN) -> TokenSequence:
    """Replace ``mask_count(len(tgt), ratio)`` distinct random positions.

    ``seed`` may also be a ready-made generator.
    """
    if not tgt:
        raise QEError("cannot mask an empty sequence")
    if not 0.0 < ratio < 1.0:
        raise QEError(f"mask ratio must lie in (0, 1), got {ratio}")
    rng = np.random.default_rng(seed)
    positions = rng.choice(len(tgt), size=mask_count(len(tgt), ratio), replace=False)
    out = list(tgt)
    for i in positions.tolist():
        out[i] = mask_token
    return TokenSequence(out)
