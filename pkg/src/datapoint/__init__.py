"""Per-paragraph annotation of literary narratives and the summary charts built on it."""
from .characters import MentionSet, co_occurrence_edges, detect_mentions, interaction_counts
from .corpus import Paragraph, SegmentationConfig, clean_paragraph, read_corpus, segment_text
from .dataset import Analyzers, CorpusSummary, ParagraphRecord, aggregate, assemble
from .dialogue import DialogueInfo, classify_dialogue, dialogue_proportion
from .emotion import AdapterConfig, EmotionResult, classify_baseline, classify_via_adapter
from .lexicon import (CharacterGazetteer, EmotionLexicon, LexiconError, ThemeLexicon, ValenceLexicon,
                      load_emotion_lexicon, load_gazetteer, load_theme_lexicon, load_valence_lexicon)
from .sentiment import SentimentRules, SentimentScore, score_paragraph, tokenize_affect
from .themes import ThemeTag, absurdity_series, tag_absurdity

__version__ = "0.1.0"
