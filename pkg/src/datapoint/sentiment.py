"""Rule-based paragraph sentiment.

Each lexicon token gets a valence that is then adjusted by a handful of
heuristics (ALL-CAPS emphasis, boosters/dampeners and negators in a short
look-back window, contrastive "but"). The adjusted valences are summed,
amplified by trailing '!' and '?' runs and squashed into [-1, 1] with
``s / sqrt(s*s + alpha)``.

All constants live in :class:`SentimentRules` so they can be pinned or
overridden from configuration.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields
from typing import List, NamedTuple

from .lexicon import ValenceLexicon

NEGATORS = frozenset("""
aint arent cannot cant couldnt darent didnt doesnt ain't aren't can't couldn't
daren't didn't doesn't dont hadnt hasnt havent isnt mightnt mustnt neither
don't hadn't hasn't haven't isn't mightn't mustn't neednt needn't never none
nope nor not nothing nowhere oughtnt shant shouldnt uhuh wasnt werent oughtn't
shan't shouldn't uh-uh wasn't weren't without wont wouldnt won't wouldn't
rarely seldom despite no nobody
""".split())

# +1 intensifies, -1 dampens
BOOSTERS = {w: 1 for w in """
absolutely amazingly awfully completely considerable considerably decidedly
deeply enormous enormously entirely especially exceptional exceptionally
extreme extremely fabulously fully greatly highly hugely incredible
incredibly intensely major majorly more most particularly purely quite
really remarkably so substantially thoroughly total totally tremendous
tremendously unbelievably unusually utter utterly very terribly truly
""".split()}
BOOSTERS.update({w: -1 for w in """
almost barely hardly kinda less little marginal marginally occasional
occasionally partly scarce scarcely slight slightly somewhat sorta
""".split()})

_EDGE = re.compile(r"^(\W*)(.*?)(\W*)$", re.DOTALL)


@dataclass(frozen=True)
class SentimentRules:
    alpha: float = 15.0
    booster_incr: float = 0.293
    booster_damping: tuple = (1.0, 0.95, 0.9)  # by look-back distance 1, 2, 3
    negation_scalar: float = -0.74
    window: int = 3
    caps_incr: float = 0.733
    exclamation_incr: float = 0.292
    exclamation_cap: int = 4
    question_incr: float = 0.18
    question_cap: int = 3
    question_max: float = 0.96
    but_before: float = 0.5
    but_after: float = 1.5
    contrast_word: str = "but"
    negators: frozenset = NEGATORS
    boosters: dict = field(default_factory=lambda: dict(BOOSTERS))

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.window < 0 or len(self.booster_damping) < self.window:
            raise ValueError("booster_damping needs one factor per look-back position")

    @classmethod
    def from_dict(cls, overrides: dict) -> "SentimentRules":
        """Build rules from a JSON-style mapping of field name -> value."""
        known = {f.name for f in fields(cls)}
        bad = set(overrides) - known
        if bad:
            raise ValueError(f"unknown sentiment rule(s): {', '.join(sorted(bad))}")
        kw = dict(overrides)
        if "booster_damping" in kw:
            kw["booster_damping"] = tuple(kw["booster_damping"])
        if "negators" in kw:
            kw["negators"] = frozenset(w.lower() for w in kw["negators"])
        if "boosters" in kw:
            kw["boosters"] = {k.lower(): float(v) for k, v in kw["boosters"].items()}
        for name in ("window", "exclamation_cap", "question_cap"):
            if name in kw and (not isinstance(kw[name], int) or isinstance(kw[name], bool)):
                raise ValueError(f"{name} must be an integer")
        return cls(**kw)


DEFAULT_RULES = SentimentRules()


class AffectToken(NamedTuple):
    surface: str   # whitespace-delimited chunk as written
    word: str      # surface minus leading/trailing punctuation
    lower: str     # lookup key: lowercased, curly apostrophes straightened
    caps: bool     # word is ALL CAPS
    trailing: str  # trailing punctuation run


@dataclass(frozen=True)
class SentimentScore:
    compound: float
    pos: float
    neu: float
    neg: float


def tokenize_affect(text: str) -> List[AffectToken]:
    tokens = []
    for chunk in text.split():
        if chunk[0].isalnum() and chunk[-1].isalnum():
            word, trailing = chunk, ""
        else:
            _, word, trailing = _EDGE.match(chunk).groups()
        tokens.append(AffectToken(chunk, word, word.lower().replace("’", "'"), word.isupper(), trailing))
    return tokens


def is_negator(lower: str, rules: SentimentRules = DEFAULT_RULES) -> bool:
    return lower in rules.negators or lower.endswith("n't")


def _cap_differential(tokens) -> bool:
    words = [t for t in tokens if t.word]
    caps = sum(1 for t in words if t.caps)
    return 0 < caps < len(words)


def token_valences(tokens, lex: ValenceLexicon, rules: SentimentRules = DEFAULT_RULES) -> List[float]:
    """Heuristic-adjusted valence per token, before the contrast rule."""
    entries = lex.entries
    boosters = rules.boosters
    cap_diff = _cap_differential(tokens)
    out = []
    for i, tok in enumerate(tokens):
        if tok.lower in boosters or tok.lower not in entries:
            out.append(0.0)
            continue
        v = entries[tok.lower]
        if cap_diff and tok.caps and v:
            v += rules.caps_incr if v > 0 else -rules.caps_incr
        for d in range(1, rules.window + 1):
            j = i - d
            if j < 0:
                break
            prev = tokens[j]
            if prev.lower in entries:
                continue
            direction = boosters.get(prev.lower)
            if direction and v:
                s = direction * rules.booster_incr
                if v < 0:
                    s = -s
                if cap_diff and prev.caps:
                    s += rules.caps_incr if v > 0 else -rules.caps_incr
                v += s * rules.booster_damping[d - 1]
            if is_negator(prev.lower, rules):
                v *= rules.negation_scalar
        out.append(v)
    return out


def apply_contrast(tokens, valences, rules: SentimentRules = DEFAULT_RULES) -> List[float]:
    for k, tok in enumerate(tokens):
        if tok.lower == rules.contrast_word:
            return ([v * rules.but_before for v in valences[:k]] + [valences[k]]
                    + [v * rules.but_after for v in valences[k + 1:]])
    return list(valences)


def punctuation_amplifier(text: str, rules: SentimentRules = DEFAULT_RULES) -> float:
    amp = min(text.count("!"), rules.exclamation_cap) * rules.exclamation_incr
    q = text.count("?")
    if q > 1:
        amp += q * rules.question_incr if q <= rules.question_cap else rules.question_max
    return amp


def normalize_sum(s: float, alpha: float) -> float:
    c = s / math.sqrt(s * s + alpha)
    return max(-1.0, min(1.0, c))


def score_paragraph(text: str, lex: ValenceLexicon, rules: SentimentRules = DEFAULT_RULES) -> SentimentScore:
    tokens = tokenize_affect(text)
    if not tokens:
        return SentimentScore(0.0, 0.0, 0.0, 0.0)
    valences = apply_contrast(tokens, token_valences(tokens, lex, rules), rules)
    amp = punctuation_amplifier(text, rules)

    total = sum(valences)
    if total > 0:
        total += amp
    elif total < 0:
        total -= amp
    compound = normalize_sum(total, rules.alpha) if total else 0.0

    # a sentiment-bearing token weighs 1 + |v| against 1 per neutral token
    pos = sum(v + 1 for v in valences if v > 0)
    neg = sum(1 - v for v in valences if v < 0)
    neu = sum(1 for v in valences if v == 0)
    if pos > neg:
        pos += amp
    elif neg > pos:
        neg += amp
    mass = pos + neg + neu
    return SentimentScore(compound, pos / mass, neu / mass, neg / mass)
