"""Character mentions per paragraph and the interaction counts built on them.

Detection is dictionary matching against the gazetteer (case-sensitive,
word-bounded) plus a static pronoun map standing in for coreference. An
"interaction" is a paragraph that mentions the character, counted once per
paragraph however often the name recurs.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Tuple

from .lexicon import CharacterGazetteer


@dataclass(frozen=True)
class MentionSet:
    characters: frozenset
    evidence: tuple = ()  # (surface, character, offset), ordered by offset


EMPTY = MentionSet(frozenset(), ())


def detect_mentions(text: str, gaz: CharacterGazetteer) -> MentionSet:
    """Return every character named or pronominally referenced in ``text``.

    A character is present if any of its aliases occurs, even inside a longer
    alias of someone else, so adding aliases never removes a mention. The
    evidence list keeps only the leftmost-longest, non-overlapping alias hits.
    """
    names = set()
    evidence = []
    regex = gaz.alias_regex
    if regex is not None:
        owner = gaz.alias_owner
        prefix_owners = gaz.alias_prefix_owners
        covered_to = 0
        for m in regex.finditer(text):
            alias = m.group(1)
            start = m.start()
            names.update(prefix_owners[alias])
            if start >= covered_to:
                evidence.append((alias, owner[alias], start))
                covered_to = start + len(alias)
    pron_regex, targets = gaz.pronoun_regex
    if pron_regex is not None:
        for m in pron_regex.finditer(text):
            who = targets[m.group(1).lower()]
            names.add(who)
            evidence.append((m.group(1), who, m.start()))
    if not names:
        return EMPTY
    evidence.sort(key=lambda e: (e[2], e[1]))
    return MentionSet(frozenset(names), tuple(evidence))


def _names(record):
    chars = record.characters
    return chars.characters if isinstance(chars, MentionSet) else frozenset(chars)


def interaction_counts(records: Iterable) -> Dict[str, int]:
    """Paragraph count per character, most frequent first (ties by name)."""
    counts: Counter = Counter()
    for r in records:
        counts.update(_names(r))
    return dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))


def co_occurrence_edges(records: Iterable) -> Dict[Tuple[str, str], int]:
    """Paragraphs mentioning both members of each (sorted) character pair."""
    edges: Counter = Counter()
    for r in records:
        edges.update(combinations(sorted(_names(r)), 2))
    return dict(sorted(edges.items(), key=lambda kv: (-kv[1], kv[0])))
