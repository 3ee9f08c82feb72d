"""Lookup tables that drive the analyzers.

Flat lexicons (valence, emotion, theme) are UTF-8 text files: tab-separated
``token<TAB>value`` rows for valence and emotion, one pattern per line for
themes, ``#`` starting a comment line. The character gazetteer is a JSON
document::

    {"characters": {"Marie": ["Marie", "Marie Cardona"], ...},
     "narrator": "Meursault",
     "pronoun_map": {"first_person": "Meursault", "third_masculine": null}}

Every loader raises :class:`LexiconError` with a line number (TSV) or a
JSON path expression on malformed input. Tables are treated as immutable
once loaded.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Optional, Union

PathLike = Union[str, Path]

EMOTION_LABELS = ("sadness", "joy", "anger", "fear", "surprise", "disgust", "neutral")
NEUTRAL = "neutral"
DEFAULT_PRIORITY = ("sadness", "anger", "fear", "disgust", "surprise", "joy", "neutral")
VALENCE_LIMIT = 4.0

PRONOUN_CLASSES = ("first_person", "third_masculine", "third_feminine")
PRONOUNS = {
    "first_person": ("i", "me", "my", "mine", "myself"),
    "third_masculine": ("he", "him", "his", "himself"),
    "third_feminine": ("she", "her", "hers", "herself"),
}

_WS = re.compile(r"\s")


class LexiconError(ValueError):
    """A lexicon or gazetteer file failed validation."""

    def __init__(self, source: str, message: str, line: Optional[int] = None,
                 where: Optional[str] = None):
        self.source = source
        self.line = line
        self.where = where
        self.message = message
        if line is not None:
            text = f"{source}: line {line}: {message}"
        elif where is not None:
            text = f"{source}: {where}: {message}"
        else:
            text = f"{source}: {message}"
        super().__init__(text)


@dataclass(frozen=True)
class ValenceLexicon:
    entries: dict
    warnings: tuple = field(default=(), compare=False)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class EmotionLexicon:
    entries: dict  # token -> frozenset of labels
    labels: tuple = EMOTION_LABELS
    priority: tuple = DEFAULT_PRIORITY
    warnings: tuple = field(default=(), compare=False)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class ThemeLexicon:
    """Case-insensitive word-boundary patterns.

    A trailing ``*`` matches any completion of the final word
    (``absurd*`` matches "absurdity"); spaces in a pattern match single
    spaces in the cleaned text.
    """

    patterns: tuple

    def __len__(self):
        return len(self.patterns)

    @cached_property
    def compiled(self):
        return tuple((p, compile_theme_pattern(p)) for p in self.patterns)

    @cached_property
    def any_match(self):
        # cheap pre-check so most paragraphs need one scan, not one per pattern
        return re.compile("|".join(f"(?:{rx.pattern})" for _, rx in self.compiled), re.IGNORECASE)

    @cached_property
    def needles(self):
        # literal lowercase prefix of each pattern, cut at the first apostrophe
        return tuple(re.split("['’]", p.rstrip("*").lower())[0] for p in self.patterns)

    def may_match(self, text: str) -> bool:
        """False only if no pattern can match; exact for ASCII text."""
        if not text.isascii():
            return self.any_match.search(text) is not None
        low = text.lower()
        return any(n in low for n in self.needles)


@dataclass(frozen=True)
class CharacterGazetteer:
    characters: dict  # canonical name -> tuple of aliases
    narrator: Optional[str] = None
    pronoun_map: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.characters)

    @cached_property
    def alias_owner(self):
        return {alias: name for name, aliases in self.characters.items() for alias in aliases}

    @cached_property
    def alias_regex(self):
        # Zero-width scan: finds the longest alias starting at every position.
        aliases = sorted(self.alias_owner, key=lambda a: (-len(a), a))
        if not aliases:
            return None
        body = "|".join(re.escape(a) for a in aliases)
        return re.compile(rf"(?<!\w)(?=({body})(?!\w))")

    @cached_property
    def alias_prefix_owners(self):
        """Owners of every alias that also matches at the start of each alias."""
        owners = {}
        for alias in self.alias_owner:
            names = {self.alias_owner[alias]}
            for other, name in self.alias_owner.items():
                if (len(other) < len(alias) and alias.startswith(other)
                        and not _is_word_char(alias[len(other)])):
                    names.add(name)
            owners[alias] = frozenset(names)
        return owners

    @cached_property
    def pronoun_regex(self):
        words = {}
        for cls, target in self.pronoun_map.items():
            if target is None:
                continue
            for w in PRONOUNS[cls]:
                words[w] = target
        if not words:
            return None, {}
        body = "|".join(sorted(words, key=lambda w: (-len(w), w)))
        return re.compile(rf"(?<!\w)({body})(?!\w)", re.IGNORECASE), words

    def with_narrator(self, name: str) -> "CharacterGazetteer":
        if name not in self.characters:
            raise LexiconError("<narrator>", f"narrator {name!r} is not a known character")
        pm = dict(self.pronoun_map)
        pm["first_person"] = name
        return CharacterGazetteer(dict(self.characters), name, pm)

    def with_pronoun(self, cls: str, name: Optional[str]) -> "CharacterGazetteer":
        if cls not in PRONOUN_CLASSES:
            raise LexiconError("<pronoun_map>", f"unknown pronoun class {cls!r}")
        if name is not None and name not in self.characters:
            raise LexiconError("<pronoun_map>", f"target {name!r} is not a known character")
        pm = dict(self.pronoun_map)
        pm[cls] = name
        return CharacterGazetteer(dict(self.characters), self.narrator, pm)


def _is_word_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def compile_theme_pattern(pattern: str) -> re.Pattern:
    stem = pattern[:-1] if pattern.endswith("*") else pattern
    parts = []
    for ch in stem:
        if ch == " ":
            parts.append(" ")
        elif ch in "'’":
            parts.append("['’]")
        else:
            parts.append(re.escape(ch))
    tail = r"\w*" if pattern.endswith("*") else ""
    return re.compile(r"(?<!\w)" + "".join(parts) + tail + r"(?!\w)", re.IGNORECASE)


# -- file reading ----------------------------------------------------------

def _read(path: PathLike) -> tuple[str, str]:
    source = str(path)
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise LexiconError(source, f"cannot read file ({exc.strerror or exc})") from exc
    try:
        return data.decode("utf-8"), source
    except UnicodeDecodeError as exc:
        raise LexiconError(source, f"invalid UTF-8 at byte offset {exc.start}") from exc


def _tsv_rows(text: str, source: str):
    """Yield (line number, token, value) for every data row."""
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise LexiconError(source, f"expected 2 tab-separated fields, found {len(fields)}", line=lineno)
        token = fields[0].strip()
        if not token:
            raise LexiconError(source, "empty token", line=lineno)
        if _WS.search(token):
            raise LexiconError(source, f"token {token!r} contains whitespace", line=lineno)
        yield lineno, token.lower(), fields[1].strip()


def _data_text(name: str) -> str:
    return resources.files("datapoint").joinpath("data", name).read_text(encoding="utf-8")


# -- valence ---------------------------------------------------------------

def parse_valence_lexicon(text: str, source: str = "<string>") -> ValenceLexicon:
    entries = {}
    warnings = []
    for lineno, token, value in _tsv_rows(text, source):
        try:
            valence = float(value)
        except ValueError:
            raise LexiconError(source, f"invalid valence {value!r}", line=lineno) from None
        if not math.isfinite(valence) or abs(valence) > VALENCE_LIMIT:
            raise LexiconError(source, f"valence {value} outside [-4, 4]", line=lineno)
        if token in entries:
            warnings.append(f"{source}: line {lineno}: duplicate token {token!r}, last entry wins")
        entries[token] = valence
    return ValenceLexicon(entries, tuple(warnings))


def load_valence_lexicon(path: PathLike) -> ValenceLexicon:
    return parse_valence_lexicon(*_read(path))


def dump_valence_lexicon(lex: ValenceLexicon) -> str:
    return "".join(f"{tok}\t{val!r}\n" for tok, val in lex.entries.items())


def default_valence_lexicon() -> ValenceLexicon:
    return parse_valence_lexicon(_data_text("valence.tsv"), "<bundled valence.tsv>")


# -- emotion ---------------------------------------------------------------

def parse_emotion_lexicon(text: str, source: str = "<string>",
                          priority: tuple = DEFAULT_PRIORITY) -> EmotionLexicon:
    if sorted(priority) != sorted(EMOTION_LABELS):
        raise LexiconError(source, f"priority must order exactly the labels {EMOTION_LABELS}")
    entries: dict = {}
    warnings = []
    for lineno, token, label in _tsv_rows(text, source):
        if label not in EMOTION_LABELS or label == NEUTRAL:
            raise LexiconError(source, f"unknown label {label!r}", line=lineno)
        labels = entries.setdefault(token, set())
        if label in labels:
            warnings.append(f"{source}: line {lineno}: duplicate row {token!r} -> {label!r}")
        labels.add(label)
    frozen = {tok: frozenset(labels) for tok, labels in entries.items()}
    return EmotionLexicon(frozen, EMOTION_LABELS, tuple(priority), tuple(warnings))


def load_emotion_lexicon(path: PathLike, priority: tuple = DEFAULT_PRIORITY) -> EmotionLexicon:
    text, source = _read(path)
    return parse_emotion_lexicon(text, source, priority)


def dump_emotion_lexicon(lex: EmotionLexicon) -> str:
    return "".join(
        f"{tok}\t{label}\n"
        for tok, labels in lex.entries.items()
        for label in sorted(labels)
    )


def default_emotion_lexicon() -> EmotionLexicon:
    return parse_emotion_lexicon(_data_text("emotion.tsv"), "<bundled emotion.tsv>")


# -- themes ----------------------------------------------------------------

def parse_theme_lexicon(text: str, source: str = "<string>") -> ThemeLexicon:
    patterns = []
    seen = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" in line:
            raise LexiconError(source, "tab inside theme pattern", line=lineno)
        pattern = " ".join(line.split())
        stem = pattern[:-1] if pattern.endswith("*") else pattern
        if not stem or "*" in stem:
            raise LexiconError(source, f"'*' is only allowed as the final character: {pattern!r}", line=lineno)
        if not (_is_word_char(stem[0]) and _is_word_char(stem[-1])):
            raise LexiconError(source, f"pattern {pattern!r} must start and end with a word character",
                               line=lineno)
        key = pattern.lower()
        if key in seen:
            raise LexiconError(source, f"duplicate pattern {pattern!r} (first on line {seen[key]})", line=lineno)
        seen[key] = lineno
        patterns.append(pattern)
    if not patterns:
        raise LexiconError(source, "empty theme lexicon")
    return ThemeLexicon(tuple(patterns))


def load_theme_lexicon(path: PathLike) -> ThemeLexicon:
    return parse_theme_lexicon(*_read(path))


def dump_theme_lexicon(lex: ThemeLexicon) -> str:
    return "".join(p + "\n" for p in lex.patterns)


def default_theme_lexicon() -> ThemeLexicon:
    return parse_theme_lexicon(_data_text("themes.txt"), "<bundled themes.txt>")


# -- gazetteer -------------------------------------------------------------

def gazetteer_from_dict(doc, source: str = "<dict>") -> CharacterGazetteer:
    def fail(where, message):
        raise LexiconError(source, message, where=where)

    if not isinstance(doc, dict):
        fail("$", "expected a JSON object")
    unknown = set(doc) - {"characters", "narrator", "pronoun_map"}
    if unknown:
        fail(f"$.{sorted(unknown)[0]}", "unknown key")
    chars = doc.get("characters")
    if not isinstance(chars, dict) or not chars:
        fail("$.characters", "expected a non-empty object of name -> [aliases]")

    characters = {}
    owner = {}
    for name, aliases in chars.items():
        where = f"$.characters[{json.dumps(name, ensure_ascii=False)}]"
        if not name.strip() or name != name.strip() or ";" in name:
            fail(where, "canonical name must be non-empty, trimmed, and contain no ';'")
        if not isinstance(aliases, list) or not aliases:
            fail(where, "expected a non-empty list of aliases")
        kept = []
        for k, alias in enumerate(aliases):
            if not isinstance(alias, str) or not alias.strip() or alias != alias.strip():
                fail(f"{where}[{k}]", "alias must be a non-empty trimmed string")
            if alias in owner and owner[alias] != name:
                fail(f"{where}[{k}]", f"alias {alias!r} is used by both {owner[alias]!r} and {name!r}")
            if alias not in kept:
                kept.append(alias)
            owner[alias] = name
        characters[name] = tuple(kept)

    narrator = doc.get("narrator")
    if narrator is not None:
        if not isinstance(narrator, str):
            fail("$.narrator", "expected a string or null")
        if narrator not in characters:
            fail("$.narrator", f"narrator {narrator!r} is not among the characters")

    raw_map = doc.get("pronoun_map", {})
    if raw_map is None:
        raw_map = {}
    if not isinstance(raw_map, dict):
        fail("$.pronoun_map", "expected an object")
    pronoun_map = {}
    for cls, target in raw_map.items():
        if cls not in PRONOUN_CLASSES:
            fail(f"$.pronoun_map.{cls}", f"unknown pronoun class; expected one of {PRONOUN_CLASSES}")
        if target is not None and (not isinstance(target, str) or target not in characters):
            fail(f"$.pronoun_map.{cls}", f"target {target!r} is not among the characters")
        pronoun_map[cls] = target
    if narrator is not None and "first_person" not in pronoun_map:
        pronoun_map["first_person"] = narrator
    return CharacterGazetteer(characters, narrator, pronoun_map)


def parse_gazetteer(text: str, source: str = "<string>") -> CharacterGazetteer:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconError(source, f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return gazetteer_from_dict(doc, source)


def load_gazetteer(path: PathLike) -> CharacterGazetteer:
    return parse_gazetteer(*_read(path))


def gazetteer_to_dict(gaz: CharacterGazetteer) -> dict:
    return {
        "characters": {name: list(aliases) for name, aliases in gaz.characters.items()},
        "narrator": gaz.narrator,
        "pronoun_map": dict(gaz.pronoun_map),
    }


def dump_gazetteer(gaz: CharacterGazetteer) -> str:
    return json.dumps(gazetteer_to_dict(gaz), ensure_ascii=False, indent=2) + "\n"


def default_gazetteer() -> CharacterGazetteer:
    return parse_gazetteer(_data_text("default_gazetteer.json"), "<bundled default_gazetteer.json>")


LOADERS = {
    "valence": load_valence_lexicon,
    "emotion": load_emotion_lexicon,
    "theme": load_theme_lexicon,
    "gazetteer": load_gazetteer,
}
