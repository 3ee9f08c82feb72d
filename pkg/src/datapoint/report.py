"""CSV/JSON serialization of records and summaries.

``records.csv`` is RFC 4180 (CRLF line ends, minimal quoting) with the
header in :data:`CSV_HEADER`; multi-valued cells are joined with ``;``.
``summary.json`` has sorted keys and every real printed with exactly six
decimals, which bounds (but does not define) its precision.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

from .characters import MentionSet
from .corpus import Paragraph
from .dataset import HIST_BINS, HIST_EDGES, CorpusSummary, ParagraphRecord
from .dialogue import DEFAULT_QUOTE_STYLES, WEIGHTINGS, classify_dialogue
from .emotion import EmotionResult
from .sentiment import SentimentScore
from .themes import ThemeTag

PathLike = Union[str, Path]

CSV_HEADER = ("index", "text", "emotion", "emotion_source", "compound", "pos", "neu", "neg",
              "characters", "absurdity", "matched", "is_dialogue")
EDGES_HEADER = ("source", "target", "weight")


class SummaryFormatError(ValueError):
    pass


def atomic_write(path: PathLike, data: Union[str, bytes]) -> None:
    """Write via a temp file in the same directory, then rename over ``path``."""
    path = Path(path)
    if isinstance(data, str):
        data = data.encode("utf-8")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# -- records ---------------------------------------------------------------

def record_row(r: ParagraphRecord) -> List[str]:
    s = r.sentiment
    return [
        str(r.paragraph.index),
        r.paragraph.text,
        r.emotion.label,
        r.emotion.source,
        repr(s.compound), repr(s.pos), repr(s.neu), repr(s.neg),
        ";".join(sorted(r.characters.characters)),
        str(r.theme.tag),
        ";".join(r.theme.patterns),
        "1" if r.dialogue.is_dialogue else "0",
    ]


def records_csv(records: Sequence[ParagraphRecord]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(record_row(r))
    return buf.getvalue()


def write_records_csv(records: Sequence[ParagraphRecord], path: PathLike) -> None:
    atomic_write(path, records_csv(records))


def read_records_csv(path: PathLike) -> List[Dict[str, str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header}")
        return [dict(zip(CSV_HEADER, row)) for row in reader]


def records_from_csv(path: PathLike, quote_styles=DEFAULT_QUOTE_STYLES) -> List[ParagraphRecord]:
    """Rebuild records from ``records.csv``.

    Fields the CSV does not carry are approximated: source offsets become -1,
    emotion scores ``{label: 1.0}``, theme offsets -1, and quote spans are
    recomputed from the text.
    """
    out = []
    for row in read_records_csv(path):
        text = row["text"]
        split = lambda cell: [x for x in cell.split(";") if x]  # noqa: E731
        dialogue = classify_dialogue(text, quote_styles)
        if dialogue.is_dialogue != (row["is_dialogue"] == "1"):
            raise ValueError(f"row {row['index']}: is_dialogue disagrees with quote styles {quote_styles}")
        out.append(ParagraphRecord(
            paragraph=Paragraph(int(row["index"]), text, -1),
            emotion=EmotionResult(row["emotion"], {row["emotion"]: 1.0}, row["emotion_source"]),
            sentiment=SentimentScore(*(float(row[k]) for k in ("compound", "pos", "neu", "neg"))),
            characters=MentionSet(frozenset(split(row["characters"]))),
            theme=ThemeTag(int(row["absurdity"]), tuple((p, -1) for p in split(row["matched"]))),
            dialogue=dialogue,
        ))
    return out


def record_to_dict(r: ParagraphRecord) -> dict:
    p, e, s, c, t, d = r.paragraph, r.emotion, r.sentiment, r.characters, r.theme, r.dialogue
    return {
        "index": p.index,
        "source_offset": p.source_offset,
        "text": p.text,
        "emotion": {"label": e.label, "source": e.source, "scores": dict(sorted(e.scores.items()))},
        "sentiment": {"compound": s.compound, "pos": s.pos, "neu": s.neu, "neg": s.neg},
        "characters": sorted(c.characters),
        "mentions": [{"surface": sf, "character": ch, "offset": off} for sf, ch, off in c.evidence],
        "absurdity": t.tag,
        "matched": [{"pattern": pat, "offset": off} for pat, off in t.matched],
        "is_dialogue": d.is_dialogue,
        "quote_spans": [list(sp) for sp in d.spans],
        "unbalanced_quotes": d.unbalanced,
    }


def records_json(records: Sequence[ParagraphRecord]) -> str:
    """A JSON array with one compact record per line (indent would force the slow encoder)."""
    if not records:
        return "[]\n"
    rows = (json.dumps(record_to_dict(r), ensure_ascii=False) for r in records)
    return "[\n" + ",\n".join(rows) + "\n]\n"


def write_records_json(records: Sequence[ParagraphRecord], path: PathLike) -> None:
    atomic_write(path, records_json(records))


def edges_csv(edges: Dict[Tuple[str, str], int]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(EDGES_HEADER)
    for (a, b), w in edges.items():
        writer.writerow([a, b, w])
    return buf.getvalue()


def write_edges_csv(edges: Dict[Tuple[str, str], int], path: PathLike) -> None:
    atomic_write(path, edges_csv(edges))


# -- summary ---------------------------------------------------------------

def summary_to_dict(summary: CorpusSummary) -> dict:
    return {
        "n_paragraphs": summary.n_paragraphs,
        "emotion_freq": dict(summary.emotion_freq),
        "sentiment_mean": summary.sentiment_mean,
        "sentiment_std": summary.sentiment_std,
        "sentiment_hist": list(summary.sentiment_hist),
        "sentiment_hist_edges": list(summary.hist_edges),
        "interaction_counts": dict(summary.interaction_counts),
        "absurd_count": summary.absurd_count,
        "absurd_ratio": summary.absurd_ratio,
        "absurdity_window": summary.window,
        "absurdity_series": [[i, v] for i, v in summary.absurdity_series],
        "dialogue_share": summary.dialogue_share,
        "narrative_share": summary.narrative_share,
        "dialogue_weighting": summary.dialogue_weighting,
    }


def _fmt(obj, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialize non-finite number {obj}")
        text = f"{obj:.6f}"
        return "0.000000" if text == "-0.000000" else text
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_fmt(obj[k], indent + 1)}"
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return "[" + ", ".join(_fmt(x) for x in obj) + "]"
        return "[\n" + ",\n".join(pad + _fmt(x, indent + 1) for x in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def summary_json(summary: CorpusSummary) -> str:
    return _fmt(summary_to_dict(summary)) + "\n"


def write_summary_json(summary: CorpusSummary, path: PathLike) -> None:
    atomic_write(path, summary_json(summary))


def summary_from_dict(doc) -> CorpusSummary:
    """Validate and rebuild a summary from its JSON form."""
    def need(key, kind):
        if key not in doc:
            raise SummaryFormatError(f"summary is missing {key!r}")
        val = doc[key]
        ok = isinstance(val, kind) and not (kind in (int, (int, float)) and isinstance(val, bool))
        if not ok:
            raise SummaryFormatError(f"summary field {key!r} has the wrong type")
        return val

    if not isinstance(doc, dict):
        raise SummaryFormatError("summary must be a JSON object")
    num = (int, float)
    hist = need("sentiment_hist", list)
    if len(hist) != HIST_BINS or not all(isinstance(x, int) and x >= 0 for x in hist):
        raise SummaryFormatError(f"sentiment_hist must hold {HIST_BINS} non-negative integers")
    series = need("absurdity_series", list)
    if not all(isinstance(p, list) and len(p) == 2 and all(isinstance(x, num) for x in p) for p in series):
        raise SummaryFormatError("absurdity_series must be a list of [index, value] pairs")
    freq = need("emotion_freq", dict)
    counts = need("interaction_counts", dict)
    for name, table in (("emotion_freq", freq), ("interaction_counts", counts)):
        if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in table.values()):
            raise SummaryFormatError(f"{name} values must be non-negative integers")
    weighting = doc.get("dialogue_weighting", "paragraphs")
    if weighting not in WEIGHTINGS:
        raise SummaryFormatError(f"unknown dialogue_weighting {weighting!r}")
    edges = doc.get("sentiment_hist_edges", list(HIST_EDGES))
    return CorpusSummary(
        n_paragraphs=need("n_paragraphs", int),
        emotion_freq=dict(freq),
        sentiment_mean=float(need("sentiment_mean", num)),
        sentiment_std=float(need("sentiment_std", num)),
        sentiment_hist=tuple(hist),
        interaction_counts=dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))),
        absurd_count=need("absurd_count", int),
        absurd_ratio=float(need("absurd_ratio", num)),
        dialogue_share=float(need("dialogue_share", num)),
        narrative_share=float(need("narrative_share", num)),
        absurdity_series=tuple((int(i), float(v)) for i, v in series),
        window=int(doc.get("absurdity_window", 10)),
        dialogue_weighting=weighting,
        hist_edges=tuple(float(x) for x in edges),
    )


def read_summary_json(path: PathLike) -> CorpusSummary:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SummaryFormatError(f"{path}: cannot read summary ({exc})") from exc
    return summary_from_dict(doc)
