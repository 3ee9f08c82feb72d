"""Quotation-based dialogue detection.

Spans include their delimiters. Pairing is per quote style and
leftmost-first; an opener with no closer runs to the end of the paragraph
and marks the paragraph ``unbalanced``. Single quotes are off by default
because English apostrophes make them ambiguous.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

QUOTE_STYLES = {
    "straight": ('"', '"'),
    "curly": ("“", "”"),
    "guillemet": ("«", "»"),
    "single": ("'", "'"),
    "single_curly": ("‘", "’"),
}
DEFAULT_QUOTE_STYLES = ("straight", "curly", "guillemet")
WEIGHTINGS = ("paragraphs", "characters")


class DialogueError(ValueError):
    pass


@dataclass(frozen=True)
class DialogueInfo:
    is_dialogue: bool
    spans: tuple = ()  # (start, end) half-open, delimiters included
    unbalanced: bool = False

    def quoted_chars(self) -> int:
        return sum(e - s for s, e in self.spans)


@lru_cache(maxsize=32)
def _quote_table(styles: Tuple[str, ...]):
    unknown = [s for s in styles if s not in QUOTE_STYLES]
    if unknown:
        raise DialogueError(f"unknown quote style(s) {unknown}; expected {sorted(QUOTE_STYLES)}")
    openers = {}
    closers = set()
    for s in styles:
        o, c = QUOTE_STYLES[s]
        openers[o] = c
        closers.add(c)
    stray = frozenset(closers - set(openers))
    chars = "".join(sorted(set(openers) | stray))
    return openers, stray, re.compile("[" + re.escape(chars) + "]")


def classify_dialogue(text: str, styles: Sequence[str] = DEFAULT_QUOTE_STYLES) -> DialogueInfo:
    openers, stray, finder = _quote_table(tuple(styles))
    spans = []
    speech = unbalanced = False
    n = len(text)
    pos = 0
    while True:
        m = finder.search(text, pos)
        if m is None:
            break
        i = m.start()
        ch = text[i]
        if ch not in openers:
            unbalanced = True  # closer with no opener
            pos = i + 1
            continue
        j = text.find(openers[ch], i + 1)
        if j < 0:
            spans.append((i, n))
            unbalanced = True
            speech = speech or bool(text[i + 1:].strip())
            break
        spans.append((i, j + 1))
        speech = speech or bool(text[i + 1:j].strip())
        pos = j + 1
    return DialogueInfo(speech, tuple(spans), unbalanced)


def dialogue_proportion(records: Sequence, weighting: str = "paragraphs") -> Tuple[float, float]:
    """(dialogue share, narrative share) by paragraph count or by character mass."""
    if weighting not in WEIGHTINGS:
        raise DialogueError(f"unknown weighting {weighting!r}; expected one of {WEIGHTINGS}")
    if not records:
        raise DialogueError("dialogue proportion is undefined for an empty corpus")
    if weighting == "paragraphs":
        share = sum(1 for r in records if r.dialogue.is_dialogue) / len(records)
    else:
        total = sum(len(r.paragraph.text) for r in records)
        share = sum(r.dialogue.quoted_chars() for r in records) / total
    return share, 1.0 - share
