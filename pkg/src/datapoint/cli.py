"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input/corpus error,
3 lexicon/gazetteer error, 4 emotion adapter error. Diagnostics go to
stderr only; stdout carries the summary table or validation result.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import lexicon as lx
from .characters import co_occurrence_edges
from .charts import CHART_KINDS, chart_filename, render_chart, spec_from_summary, ChartSpecError
from .corpus import CorpusError, SegmentationConfig, read_corpus
from .dataset import DEFAULT_WINDOW, Analyzers, CorpusSummary, aggregate, assemble
from .dialogue import DEFAULT_QUOTE_STYLES, QUOTE_STYLES, WEIGHTINGS
from .emotion import AdapterConfig, AdapterError
from .report import (SummaryFormatError, atomic_write, read_summary_json, write_edges_csv,
                     write_records_csv, write_records_json, write_summary_json)
from .sentiment import SentimentRules

log = logging.getLogger("datapoint")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_LEXICON, EXIT_ADAPTER = 0, 1, 2, 3, 4

# config-file keys mirror the long flag names
FLAG_KEYS = ("input", "out", "characters", "narrator", "valence-lexicon", "emotion-lexicon", "themes",
             "emotion-adapter", "adapter-fallback", "adapter-timeout", "dialogue-weighting", "window",
             "jobs", "segmentation")
CONFIG_ONLY_KEYS = ("sentiment-rules", "quote-styles")

OUTPUT_FILES = ("records.csv", "records.json", "summary.json", "edges.csv") + tuple(
    chart_filename(k) for k in CHART_KINDS)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="datapoint", description="Turn a narrative into a per-paragraph dataset and charts.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    a = sub.add_parser("analyze", help="run the full pipeline on a text file")
    a.add_argument("--input", metavar="FILE", help="UTF-8 plain text, paragraphs separated by blank lines")
    a.add_argument("--out", metavar="DIR", help="output directory (created if missing)")
    a.add_argument("--characters", metavar="FILE", help="gazetteer JSON (default: bundled default cast)")
    a.add_argument("--narrator", metavar="NAME", help="canonical name first-person pronouns resolve to")
    a.add_argument("--valence-lexicon", metavar="FILE")
    a.add_argument("--emotion-lexicon", metavar="FILE")
    a.add_argument("--themes", metavar="FILE")
    a.add_argument("--emotion-adapter", metavar="CMD", help="external classifier speaking NDJSON on stdio")
    a.add_argument("--adapter-fallback", action="store_true", default=None,
                   help="use the lexicon baseline if the adapter fails")
    a.add_argument("--adapter-timeout", type=float, metavar="SECONDS", help="per-batch timeout (default 30)")
    a.add_argument("--dialogue-weighting", choices=WEIGHTINGS)
    a.add_argument("--window", type=int, metavar="N", help=f"absurdity rolling window (default {DEFAULT_WINDOW})")
    a.add_argument("--jobs", type=int, metavar="N", help="worker processes (default 1)")
    a.add_argument("--segmentation", choices=("blank_line", "line"))
    a.add_argument("--config", metavar="FILE", help="JSON file whose keys mirror these flag names")

    c = sub.add_parser("chart", help="re-render one chart from a saved summary.json")
    c.add_argument("--summary", metavar="FILE", required=True)
    c.add_argument("--kind", required=True, choices=CHART_KINDS)
    c.add_argument("--out", metavar="FILE", required=True)
    c.add_argument("--width", type=int, default=640)
    c.add_argument("--height", type=int, default=400)

    v = sub.add_parser("lexicon-validate", help="load a lexicon file and report problems")
    v.add_argument("--type", dest="lex_type", required=True, choices=tuple(lx.LOADERS))
    v.add_argument("file", metavar="FILE")
    return p


def _merge_config(args: argparse.Namespace) -> dict:
    """Flag beats config beats default."""
    conf = {}
    if args.config:
        try:
            conf = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(conf, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(conf) - set(FLAG_KEYS) - set(CONFIG_ONLY_KEYS)
        if unknown:
            raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    opts = {}
    for key in FLAG_KEYS:
        flag = getattr(args, key.replace("-", "_"))
        opts[key] = flag if flag is not None else conf.get(key)
    for key in CONFIG_ONLY_KEYS:
        opts[key] = conf.get(key)

    defaults = {"adapter-fallback": False, "adapter-timeout": 30.0, "dialogue-weighting": "paragraphs",
                "window": DEFAULT_WINDOW, "jobs": 1, "segmentation": "blank_line"}
    for key, val in defaults.items():
        if opts[key] is None:
            opts[key] = val

    for key in ("input", "out"):
        if not opts[key]:
            raise UsageError(f"--{key} is required")
    for key in ("window", "jobs"):
        val = opts[key]
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise UsageError(f"--{key} must be a positive integer")
    if opts["dialogue-weighting"] not in WEIGHTINGS:
        raise UsageError(f"--dialogue-weighting must be one of {WEIGHTINGS}")
    if not isinstance(opts["adapter-timeout"], (int, float)) or opts["adapter-timeout"] <= 0:
        raise UsageError("--adapter-timeout must be positive")
    styles = opts["quote-styles"]
    if styles is not None and (not isinstance(styles, list) or not set(styles) <= set(QUOTE_STYLES)):
        raise UsageError(f"quote-styles must be a list drawn from {sorted(QUOTE_STYLES)}")
    rules = opts["sentiment-rules"]
    if rules is not None and not isinstance(rules, dict):
        raise UsageError("sentiment-rules must be an object")
    return opts


def _build_analyzers(opts: dict) -> Analyzers:
    def load(key, loader, default):
        return loader(opts[key]) if opts[key] else default()

    gaz = load("characters", lx.load_gazetteer, lx.default_gazetteer)
    if opts["narrator"]:
        gaz = gaz.with_narrator(opts["narrator"])
    try:
        rules = SentimentRules.from_dict(opts["sentiment-rules"] or {})
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid sentiment-rules: {exc}") from None
    adapter = None
    if opts["emotion-adapter"]:
        try:
            adapter = AdapterConfig(opts["emotion-adapter"], timeout=float(opts["adapter-timeout"]))
        except ValueError as exc:
            raise UsageError(f"invalid --emotion-adapter: {exc}") from None
    return Analyzers(
        valence=load("valence-lexicon", lx.load_valence_lexicon, lx.default_valence_lexicon),
        emotion=load("emotion-lexicon", lx.load_emotion_lexicon, lx.default_emotion_lexicon),
        themes=load("themes", lx.load_theme_lexicon, lx.default_theme_lexicon),
        gazetteer=gaz,
        rules=rules,
        quote_styles=tuple(opts["quote-styles"] or DEFAULT_QUOTE_STYLES),
        adapter=adapter,
        adapter_fallback=bool(opts["adapter-fallback"]),
    )


def format_summary(summary: CorpusSummary, out_dir: Path) -> str:
    n = summary.n_paragraphs
    emo = ", ".join(f"{k} {v} ({v / n:.0%})" for k, v in
                    sorted(summary.emotion_freq.items(), key=lambda kv: (-kv[1], kv[0])) if v)
    chars = ", ".join(f"{k} {v}" for k, v in list(summary.interaction_counts.items())[:6]) or "none"
    rows = [
        ("paragraphs", str(n)),
        ("emotion labels", emo),
        ("sentiment", f"mean {summary.sentiment_mean:+.3f}, std {summary.sentiment_std:.3f} (population)"),
        ("characters", chars),
        ("absurdity", f"{summary.absurd_count} paragraphs ({summary.absurd_ratio:.1%}), window {summary.window}"),
        ("dialogue", f"{summary.dialogue_share:.1%} dialogue / {summary.narrative_share:.1%} narrative "
                     f"(by {summary.dialogue_weighting})"),
        ("outputs", f"{out_dir} ({len(OUTPUT_FILES)} files)"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def cmd_analyze(args) -> int:
    opts = _merge_config(args)
    an = _build_analyzers(opts)
    paragraphs = read_corpus(opts["input"], SegmentationConfig(opts["segmentation"]))
    if not paragraphs:
        raise CorpusError(f"{opts['input']}: no paragraphs found")
    out = Path(opts["out"])
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CorpusError(f"cannot create output directory {out}: {exc.strerror or exc}") from None

    records = assemble(paragraphs, an, jobs=opts["jobs"])
    summary = aggregate(records, window=opts["window"], weighting=opts["dialogue-weighting"])

    write_records_csv(records, out / "records.csv")
    write_records_json(records, out / "records.json")
    write_summary_json(summary, out / "summary.json")
    write_edges_csv(co_occurrence_edges(records), out / "edges.csv")
    for kind in CHART_KINDS:
        atomic_write(out / chart_filename(kind), render_chart(spec_from_summary(summary, kind)))
    print(format_summary(summary, out))
    return EXIT_OK


def cmd_chart(args) -> int:
    summary = read_summary_json(args.summary)
    try:
        svg = render_chart(spec_from_summary(summary, args.kind, args.width, args.height))
    except ChartSpecError as exc:
        raise SummaryFormatError(str(exc)) from None
    try:
        atomic_write(args.out, svg)
    except OSError as exc:
        raise CorpusError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    return EXIT_OK


def cmd_lexicon_validate(args) -> int:
    table = lx.LOADERS[args.lex_type](args.file)
    for w in getattr(table, "warnings", ()):
        print(f"warning: {w}", file=sys.stderr)
    print(f"OK, {len(table)} entries")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "chart": cmd_chart, "lexicon-validate": cmd_lexicon_validate}


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"datapoint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, SummaryFormatError) as exc:
        print(f"datapoint: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except lx.LexiconError as exc:
        print(f"datapoint: lexicon error: {exc}", file=sys.stderr)
        return EXIT_LEXICON
    except AdapterError as exc:
        print(f"datapoint: emotion adapter error: {exc}", file=sys.stderr)
        return EXIT_ADAPTER


if __name__ == "__main__":
    sys.exit(main())
