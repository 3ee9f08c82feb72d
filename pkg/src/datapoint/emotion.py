"""One emotion label per paragraph.

The built-in baseline counts lexicon hits per label and takes the argmax,
breaking ties by the lexicon's priority order. An external classifier can
take its place through a newline-delimited JSON protocol on the child's
stdin/stdout::

    request   {"id": 0, "text": "Mother died today."}
    response  {"id": 0, "label": "sadness", "scores": {"sadness": 0.9}}

``scores`` is optional and defaults to ``{label: 1.0}``.
"""
from __future__ import annotations

import json
import logging
import re
import shlex
import subprocess
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .lexicon import EMOTION_LABELS, NEUTRAL, EmotionLexicon

log = logging.getLogger(__name__)

_WORD = re.compile(r"\w+(?:['’]\w+)*")

BASELINE = "baseline"
ADAPTER = "adapter"


@dataclass(frozen=True)
class EmotionResult:
    label: str
    scores: dict
    source: str = BASELINE


def argmax_label(scores: Dict[str, float], priority: Sequence[str]) -> str:
    best, best_score = NEUTRAL, 0.0
    for label in priority:
        s = scores.get(label, 0.0)
        if label != NEUTRAL and s > best_score:
            best, best_score = label, s
    return best


def classify_baseline(text: str, lex: EmotionLexicon) -> EmotionResult:
    counts: Counter = Counter()
    entries = lex.entries
    for word in _WORD.findall(text):
        labels = entries.get(word.lower().replace("’", "'"))
        if labels:
            counts.update(labels)
    scores = {label: float(counts[label]) for label in lex.labels}
    return EmotionResult(argmax_label(scores, lex.priority), scores, BASELINE)


# -- external adapter ------------------------------------------------------

class AdapterError(RuntimeError):
    """Base class; the CLI maps every subclass to exit code 4."""


class AdapterSpawnError(AdapterError):
    pass


class AdapterTimeoutError(AdapterError):
    pass


class AdapterResponseError(AdapterError):
    pass


class UnknownLabelError(AdapterError):
    pass


class MissingIdError(AdapterError):
    pass


@dataclass(frozen=True)
class AdapterConfig:
    command: str
    timeout: float = 30.0  # seconds per batch
    labels: tuple = EMOTION_LABELS
    batch_size: int = 256

    def __post_init__(self):
        if not shlex.split(self.command):
            raise ValueError("adapter command is empty")
        if self.timeout <= 0 or self.batch_size < 1:
            raise ValueError("adapter timeout and batch size must be positive")


def encode_request(ident: int, text: str) -> str:
    return json.dumps({"id": ident, "text": text}, ensure_ascii=False) + "\n"


def parse_response(line: str, labels: Sequence[str]) -> Tuple[int, EmotionResult]:
    """Parse one response line; raises on malformed content or unknown labels."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise AdapterResponseError(f"malformed response line (invalid JSON: {exc.msg}): {line[:80]!r}") from None
    if not isinstance(obj, dict):
        raise AdapterResponseError(f"malformed response line (not an object): {line[:80]!r}")
    ident = obj.get("id")
    if not isinstance(ident, int) or isinstance(ident, bool):
        raise AdapterResponseError(f"malformed response line (missing integer id): {line[:80]!r}")
    label = obj.get("label")
    if not isinstance(label, str):
        raise AdapterResponseError(f"malformed response for id {ident} (missing string label)")
    if label not in labels:
        raise UnknownLabelError(f"unknown label {label!r} for id {ident}; expected one of {list(labels)}")
    scores = obj.get("scores")
    if scores is None:
        scores = {label: 1.0}
    if not isinstance(scores, dict):
        raise AdapterResponseError(f"malformed response for id {ident} (scores must be an object)")
    clean = {}
    for k, v in scores.items():
        if k not in labels:
            raise UnknownLabelError(f"unknown label {k!r} in scores for id {ident}")
        if isinstance(v, bool) or not isinstance(v, (int, float)) or v < 0:
            raise AdapterResponseError(f"malformed response for id {ident} (score for {k!r} must be >= 0)")
        clean[k] = float(v)
    return ident, EmotionResult(label, clean, ADAPTER)


def _run_batch(chunk: List[Tuple[int, str]], adapter: AdapterConfig) -> Dict[int, EmotionResult]:
    argv = shlex.split(adapter.command)
    payload = "".join(encode_request(i, t) for i, t in chunk).encode("utf-8")
    try:
        proc = subprocess.Popen(argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE, stderr=subprocess.PIPE)
    except OSError as exc:
        raise AdapterSpawnError(f"cannot start adapter {argv[0]!r}: {exc.strerror or exc}") from None
    try:
        out, err = proc.communicate(payload, timeout=adapter.timeout)
    except subprocess.TimeoutExpired:
        proc.kill()
        proc.communicate()
        raise AdapterTimeoutError(f"adapter timed out after {adapter.timeout:g} s") from None
    if proc.returncode != 0:
        tail = err.decode("utf-8", "replace").strip().splitlines()[-1:] or [""]
        raise AdapterSpawnError(f"adapter exited with status {proc.returncode} {tail[0]}".rstrip())
    try:
        text = out.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise AdapterResponseError(f"adapter output is not UTF-8 (byte offset {exc.start})") from None

    wanted = {i for i, _ in chunk}
    results: Dict[int, EmotionResult] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        ident, res = parse_response(line, adapter.labels)
        if ident not in wanted:
            raise AdapterResponseError(f"adapter answered unknown id {ident}")
        if ident in results:
            raise AdapterResponseError(f"adapter answered id {ident} twice")
        results[ident] = res
    missing = sorted(wanted - set(results))
    if missing:
        raise MissingIdError(f"adapter gave no response for id(s) {missing[:10]}")
    return results


def classify_via_adapter(batch: Iterable[Tuple[int, str]], adapter: AdapterConfig) -> List[EmotionResult]:
    """Classify ``(id, text)`` pairs externally; results come back in id order."""
    items = sorted(batch)
    if len({i for i, _ in items}) != len(items):
        raise ValueError("duplicate ids in adapter batch")
    results: Dict[int, EmotionResult] = {}
    for start in range(0, len(items), adapter.batch_size):
        chunk = items[start:start + adapter.batch_size]
        log.debug("adapter batch of %d starting at id %d", len(chunk), chunk[0][0])
        results.update(_run_batch(chunk, adapter))
    return [results[i] for i, _ in items]
