"""Run every analyzer over the corpus and fold the results into a summary."""
from __future__ import annotations

import logging
import statistics
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import lexicon as lx
from .characters import MentionSet, detect_mentions, interaction_counts
from .corpus import Paragraph
from .dialogue import DEFAULT_QUOTE_STYLES, DialogueInfo, classify_dialogue, dialogue_proportion
from .emotion import AdapterConfig, AdapterError, EmotionResult, classify_baseline, classify_via_adapter
from .sentiment import DEFAULT_RULES, SentimentRules, SentimentScore, score_paragraph
from .themes import ThemeTag, absurdity_series, tag_absurdity

log = logging.getLogger(__name__)

HIST_BINS = 20
HIST_EDGES = tuple((i - 10) / 10 for i in range(HIST_BINS + 1))
DEFAULT_WINDOW = 10


@dataclass(frozen=True)
class ParagraphRecord:
    paragraph: Paragraph
    emotion: EmotionResult
    sentiment: SentimentScore
    characters: MentionSet
    theme: ThemeTag
    dialogue: DialogueInfo

    @property
    def index(self) -> int:
        return self.paragraph.index


@dataclass(frozen=True)
class Analyzers:
    """Everything the per-paragraph analysis needs; immutable and picklable."""

    valence: lx.ValenceLexicon
    emotion: lx.EmotionLexicon
    themes: lx.ThemeLexicon
    gazetteer: lx.CharacterGazetteer
    rules: SentimentRules = DEFAULT_RULES
    quote_styles: tuple = DEFAULT_QUOTE_STYLES
    adapter: Optional[AdapterConfig] = None
    adapter_fallback: bool = False

    @classmethod
    def defaults(cls, **overrides) -> "Analyzers":
        kw = dict(
            valence=lx.default_valence_lexicon(),
            emotion=lx.default_emotion_lexicon(),
            themes=lx.default_theme_lexicon(),
            gazetteer=lx.default_gazetteer(),
        )
        kw.update(overrides)
        return cls(**kw)


@dataclass(frozen=True)
class CorpusSummary:
    n_paragraphs: int
    emotion_freq: Dict[str, int]
    sentiment_mean: float
    sentiment_std: float
    sentiment_hist: Tuple[int, ...]
    interaction_counts: Dict[str, int]
    absurd_count: int
    absurd_ratio: float
    dialogue_share: float
    narrative_share: float
    absurdity_series: Tuple[Tuple[int, float], ...]
    window: int = DEFAULT_WINDOW
    dialogue_weighting: str = "paragraphs"
    hist_edges: Tuple[float, ...] = field(default=HIST_EDGES)


def analyze_paragraph(p: Paragraph, an: Analyzers, emotion: Optional[EmotionResult] = None) -> ParagraphRecord:
    return ParagraphRecord(
        paragraph=p,
        emotion=emotion if emotion is not None else classify_baseline(p.text, an.emotion),
        sentiment=score_paragraph(p.text, an.valence, an.rules),
        characters=detect_mentions(p.text, an.gazetteer),
        theme=tag_absurdity(p.text, an.themes),
        dialogue=classify_dialogue(p.text, an.quote_styles),
    )


def _analyze_chunk(args):
    paragraphs, emotions, an = args
    return [analyze_paragraph(p, an, e) for p, e in zip(paragraphs, emotions)]


def _external_emotions(paragraphs, an: Analyzers):
    if an.adapter is None:
        return [None] * len(paragraphs)
    try:
        return classify_via_adapter([(p.index, p.text) for p in paragraphs], an.adapter)
    except AdapterError as exc:
        if not an.adapter_fallback:
            raise
        log.warning("emotion adapter failed (%s); falling back to the lexicon baseline", exc)
        return [None] * len(paragraphs)


def assemble(paragraphs: Sequence[Paragraph], an: Analyzers, jobs: int = 1) -> List[ParagraphRecord]:
    """One record per paragraph, in paragraph order.

    ``jobs`` > 1 spreads the per-paragraph work over worker processes; the
    result is identical for any value.
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    paragraphs = list(paragraphs)
    if not paragraphs:
        return []
    emotions = _external_emotions(paragraphs, an)
    if jobs == 1 or len(paragraphs) < 2 * jobs:
        return _analyze_chunk((paragraphs, emotions, an))
    size = -(-len(paragraphs) // (jobs * 4))
    chunks = [(paragraphs[k:k + size], emotions[k:k + size], an) for k in range(0, len(paragraphs), size)]
    out: List[ParagraphRecord] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_analyze_chunk, chunks):
            out.extend(part)
    return out


def histogram(values: Sequence[float]) -> Tuple[int, ...]:
    """Counts over 20 bins of width 0.1 on [-1, 1]; bins are [lo, hi) except the last."""
    counts = [0] * HIST_BINS
    for v in values:
        if not -1.0 <= v <= 1.0:
            raise ValueError(f"compound score {v} outside [-1, 1]")
        counts[min(bisect_right(HIST_EDGES, v) - 1, HIST_BINS - 1)] += 1
    return tuple(counts)


def aggregate(records: Sequence[ParagraphRecord], window: int = DEFAULT_WINDOW,
              weighting: str = "paragraphs", labels: Sequence[str] = lx.EMOTION_LABELS) -> CorpusSummary:
    if not records:
        raise ValueError("cannot aggregate an empty corpus")
    n = len(records)
    freq = {label: 0 for label in labels}
    for r in records:
        freq[r.emotion.label] = freq.get(r.emotion.label, 0) + 1
    compounds = [r.sentiment.compound for r in records]
    absurd = sum(r.theme.tag for r in records)
    dialogue, narrative = dialogue_proportion(records, weighting)
    return CorpusSummary(
        n_paragraphs=n,
        emotion_freq=freq,
        sentiment_mean=statistics.fmean(compounds),
        sentiment_std=statistics.pstdev(compounds),
        sentiment_hist=histogram(compounds),
        interaction_counts=interaction_counts(records),
        absurd_count=absurd,
        absurd_ratio=absurd / n,
        dialogue_share=dialogue,
        narrative_share=narrative,
        absurdity_series=tuple(absurdity_series(records, window)),
        window=window,
        dialogue_weighting=weighting,
    )
