"""Keyword tagging of absurdist vocabulary and its spread over the narrative."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .lexicon import ThemeLexicon


@dataclass(frozen=True)
class ThemeTag:
    tag: int
    matched: tuple = ()  # (pattern, offset), ordered by offset

    @property
    def patterns(self) -> List[str]:
        """Distinct matched patterns in order of first appearance."""
        seen = []
        for p, _ in self.matched:
            if p not in seen:
                seen.append(p)
        return seen


def tag_absurdity(text: str, lex: ThemeLexicon) -> ThemeTag:
    if not lex.may_match(text):
        return ThemeTag(0, ())
    hits = []
    for pattern, regex in lex.compiled:
        hits.extend((pattern, m.start()) for m in regex.finditer(text))
    if not hits:
        return ThemeTag(0, ())
    hits.sort(key=lambda h: (h[1], h[0]))
    return ThemeTag(1, tuple(hits))


def rolling_mean(tags: Sequence[int], window: int) -> List[float]:
    """Trailing-window mean: element i averages tags[max(0, i-window+1)..i]."""
    if isinstance(window, bool) or not isinstance(window, int) or window < 1:
        raise ValueError(f"window must be a positive integer, got {window!r}")
    out = []
    running = 0
    for i, t in enumerate(tags):
        running += t
        if i >= window:
            running -= tags[i - window]
        out.append(running / min(i + 1, window))
    return out


def absurdity_series(records: Sequence, window: int) -> List[Tuple[int, float]]:
    tags = [r.theme.tag for r in records]
    return [(r.paragraph.index, v) for r, v in zip(records, rolling_mean(tags, window))]
