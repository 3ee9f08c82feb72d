"""Turn raw narrative text into ordered, cleaned paragraph units."""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

_RUNS = re.compile(r"[ \t\r\n]+")
_NEWLINES = re.compile(r"\r\n?")

POLICIES = ("blank_line", "line")


class CorpusError(ValueError):
    pass


class CorpusDecodeError(CorpusError):
    def __init__(self, offset: int, source: str = "<input>"):
        self.offset = offset
        super().__init__(f"{source}: invalid UTF-8 at byte offset {offset}")


@dataclass(frozen=True)
class SegmentationConfig:
    """``blank_line`` splits on one or more blank lines; ``line`` makes
    every non-blank line its own paragraph."""

    policy: str = "blank_line"

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"unknown segmentation policy {self.policy!r}; expected one of {POLICIES}")


@dataclass(frozen=True)
class Paragraph:
    index: int
    text: str
    source_offset: int


def clean_paragraph(text: str) -> str:
    """Collapse spaces, tabs and newlines to single spaces and trim."""
    return _RUNS.sub(" ", text).strip()


def decode(data: bytes, source: str = "<input>") -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusDecodeError(exc.start, source) from None


def normalize(raw: str) -> str:
    """Newline (CRLF/CR -> LF) and NFC normalization applied once at ingestion."""
    return unicodedata.normalize("NFC", _NEWLINES.sub("\n", raw))


def segment_text(raw: Union[str, bytes], cfg: SegmentationConfig = SegmentationConfig()) -> List[Paragraph]:
    """Split ``raw`` into paragraphs.

    ``source_offset`` is measured in the normalized text, so CRLF and LF
    inputs segment identically.
    """
    if isinstance(raw, bytes):
        raw = decode(raw)
    text = normalize(raw)

    blocks = []  # (offset of first line, [lines])
    pos = 0
    current = None
    for line in text.split("\n"):
        if line.strip():
            if current is None or cfg.policy == "line":
                current = (pos, [])
                blocks.append(current)
            current[1].append(line)
        else:
            current = None
        pos += len(line) + 1

    out = []
    for start, lines in blocks:
        first = lines[0]
        offset = start + (len(first) - len(first.lstrip()))
        out.append(Paragraph(len(out), clean_paragraph("\n".join(lines)), offset))
    return out


def read_corpus(path: Union[str, Path], cfg: SegmentationConfig = SegmentationConfig()) -> List[Paragraph]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CorpusError(f"{path}: cannot read input ({exc.strerror or exc})") from exc
    return segment_text(decode(data, str(path)), cfg)
