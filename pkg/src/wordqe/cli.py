"""Command-line entry point: ``wordqe <command> ...``.

Exit status is 0 on success, 1 when an input fails validation and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from . import io
from .core import QEError, TranslationTriplet
from .ensemble import NELDER_MEAD, POWELL, binarize, combine, optimize_weights
from .loss import MEAN, SUM, balanced_nll
from .metrics import breakdown_report
from .optimizer import OptimizerConfig, format_trace
from .subword import (
    PREFIX,
    SUFFIX,
    WORD_START,
    SubwordConvention,
    build_subword_map,
    heuristic_subword_tags,
    naive_subword_tags,
    subword_tags_to_word_tags,
)
from .synthesis import MASK_TOKEN, RECIPES, assemble, mask_words
from .ter import ShiftParams, generate_reference_tags

log = logging.getLogger("wordqe")


def _package_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:  # pragma: no cover - running from a source tree
        return "0+unknown"


def _shift_params(args) -> ShiftParams:
    return ShiftParams(enabled=not args.no_shifts, max_span=args.max_shift_span,
                       max_distance=args.max_shift_distance)


def _add_shift_args(p):
    p.add_argument("--no-shifts", action="store_true", help="plain Levenshtein alignment")
    p.add_argument("--max-shift-span", type=int, default=10)
    p.add_argument("--max-shift-distance", type=int, default=50)


def _add_map_args(p):
    p.add_argument("--map", help="subword map file (one 's:e s:e ...' line per segment)")
    p.add_argument("--words", help="word-level MT corpus (with --subwords, instead of --map)")
    p.add_argument("--subwords", help="subword-level MT corpus")
    p.add_argument("--marker", default="@@")
    p.add_argument("--marker-position", choices=(SUFFIX, PREFIX, WORD_START), default=SUFFIX)


def _maps(args) -> list:
    if args.map:
        return list(io.read_maps(args.map))
    if not (args.words and args.subwords):
        raise QEError("give either --map or both --words and --subwords")
    conv = SubwordConvention(args.marker, args.marker_position)
    words = list(io.read_corpus(args.words))
    subwords = list(io.read_corpus(args.subwords))
    if len(words) != len(subwords):
        raise QEError(f"{args.words} has {len(words)} lines but {args.subwords} has {len(subwords)}")
    maps = []
    for lineno, (w, sw) in enumerate(zip(words, subwords), 1):
        try:
            maps.append(build_subword_map(w, sw, conv))
        except QEError as exc:
            raise QEError(f"line {lineno}: {exc}") from None
    return maps


def _paired(a: list, b: list, what: str):
    if len(a) != len(b):
        raise QEError(f"{what}: {len(a)} vs {len(b)} lines")
    return zip(a, b)


def cmd_tags(args):
    params = _shift_params(args)
    mt = list(io.read_corpus(args.mt))
    pe = list(io.read_corpus(args.pe))
    tags = []
    for lineno, (m, p) in enumerate(_paired(mt, pe, "MT and post-edit line counts differ"), 1):
        try:
            tags.append(generate_reference_tags(TranslationTriplet((), m, p), params))
        except QEError as exc:
            raise QEError(f"line {lineno}: {exc}") from None
    io.write_tags(args.output, tags)


def cmd_naive_subword_tags(args):
    params = _shift_params(args)
    mt = list(io.read_corpus(args.mt))
    pe = list(io.read_corpus(args.pe))
    tags = [naive_subword_tags(m, p, params)
            for m, p in _paired(mt, pe, "MT and post-edit line counts differ")]
    io.write_tags(args.output, tags)


def cmd_subword_map(args):
    io.write_maps(args.output, _maps(args))


def cmd_subword_up(args):
    tags = list(io.read_tags(args.tags))
    maps = _maps(args)
    io.write_tags(args.output, [subword_tags_to_word_tags(q, m)
                                for q, m in _paired(tags, maps, "tags and maps differ")])


def cmd_subword_ref(args):
    word_tags = list(io.read_tags(args.word_tags))
    naive = list(io.read_tags(args.naive_tags))
    maps = _maps(args)
    if not len(word_tags) == len(naive) == len(maps):
        raise QEError(f"line counts differ: {len(word_tags)} word tag, {len(naive)} naive tag, "
                      f"{len(maps)} map lines")
    io.write_tags(args.output, [heuristic_subword_tags(w, n, m)
                                for w, n, m in zip(word_tags, naive, maps)])


def cmd_eval(args):
    report = breakdown_report(list(io.read_tags(args.pred)), list(io.read_tags(args.ref)))
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")


def cmd_ensemble_combine(args):
    preds = [io.read_scores(p) for p in args.scores]
    combined = combine(preds, io.read_weights(args.weights))
    io.write_scores(args.output, combined)
    if args.tags_output:
        io.write_tags(args.tags_output, binarize(combined, args.threshold))


def cmd_ensemble_optimize(args):
    preds = [io.read_scores(p) for p in args.scores]
    refs = list(io.read_tags(args.ref))
    cfg = OptimizerConfig(max_iterations=args.max_iter, seed=args.seed, jitter=args.jitter)
    weights, achieved, trace = optimize_weights(preds, refs, args.method, cfg, args.threshold,
                                                return_trace=True)
    io.write_weights(args.output, weights)
    if args.trace:
        Path(args.trace).write_text(format_trace(trace), encoding="utf-8")
    print(f"dev target MCC: {achieved!r}", file=sys.stderr)


def cmd_loss(args):
    terms = balanced_nll(io.read_scores(args.scores), list(io.read_tags(args.ref)),
                         args.mu, args.reduction)
    print(f"total\t{terms.total!r}\nl_ok\t{terms.l_ok!r}\nl_bad\t{terms.l_bad!r}")


def cmd_synth(args):
    inputs = {role: getattr(args, role.replace("-", "_")) for role in RECIPES[args.recipe]
              if getattr(args, role.replace("-", "_")) is not None}
    triplets = list(assemble(args.recipe, inputs))
    prefix = args.out_prefix
    io.write_corpus(f"{prefix}.src", (t.src for t in triplets))
    io.write_corpus(f"{prefix}.mt", (t.mt for t in triplets))
    io.write_corpus(f"{prefix}.pe", (t.pe for t in triplets))


def cmd_mask(args):
    out = []
    for i, seg in enumerate(io.read_corpus(args.input)):
        # one independent stream per line, keyed on (seed, line index)
        out.append(mask_words(seg, args.ratio, np.random.default_rng([args.seed, i]),
                              args.mask_token))
    io.write_corpus(args.output, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wordqe", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"wordqe {_package_version()} (file format {io.FORMAT_VERSION})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("tags", help="reference OK/BAD tags from MT and post-edit files")
    p.add_argument("--src", help="source file (accepted for completeness, not read)")
    p.add_argument("--mt", required=True)
    p.add_argument("--pe", required=True)
    _add_shift_args(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_tags)

    p = sub.add_parser("naive-subword-tags", help="TER tags on subword-segmented MT/post-edit")
    p.add_argument("--mt", required=True)
    p.add_argument("--pe", required=True)
    _add_shift_args(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_naive_subword_tags)

    p = sub.add_parser("subword-map", help="write word-to-subword span maps")
    _add_map_args(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_subword_map)

    p = sub.add_parser("subword-up", help="subword tags -> word tags")
    p.add_argument("--tags", required=True, help="subword-level tag file")
    _add_map_args(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_subword_up)

    p = sub.add_parser("subword-ref", help="heuristic subword reference tags")
    p.add_argument("--word-tags", required=True)
    p.add_argument("--naive-tags", required=True)
    _add_map_args(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_subword_ref)

    p = sub.add_parser("eval", help="MCC / P / R / F1 breakdown")
    p.add_argument("--pred", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ensemble-combine", help="apply ensemble weights to score files")
    p.add_argument("--scores", nargs="+", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--tags-output", help="also write binarized tags here")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_ensemble_combine)

    p = sub.add_parser("ensemble-optimize", help="tune ensemble weights for dev target MCC")
    p.add_argument("--scores", nargs="+", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--method", choices=(NELDER_MEAD, POWELL), default=NELDER_MEAD)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jitter", type=float, default=0.0)
    p.add_argument("--trace", help="write the optimizer trace here")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_ensemble_optimize)

    p = sub.add_parser("loss", help="label-balanced NLL of scores against reference tags")
    p.add_argument("--scores", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--reduction", choices=(MEAN, SUM), default=MEAN)
    p.set_defaults(func=cmd_loss)

    p = sub.add_parser("synth", help="assemble synthetic triplets from decoded files")
    p.add_argument("--recipe", required=True, choices=sorted(RECIPES))
    for role in sorted({r for roles in RECIPES.values() for r in roles}):
        p.add_argument(f"--{role}", dest=role.replace("-", "_"))
    p.add_argument("--out-prefix", required=True, help="writes PREFIX.src, PREFIX.mt, PREFIX.pe")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("mask", help="randomly mask target words")
    p.add_argument("--input", required=True)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mask-token", default=MASK_TOKEN)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_mask)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (QEError, ValueError, OSError) as exc:
        print(f"wordqe {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
