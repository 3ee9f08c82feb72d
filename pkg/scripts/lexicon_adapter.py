"""Minimal emotion adapter: wraps the lexicon baseline in the NDJSON protocol.

    datapoint analyze ... --emotion-adapter "python3 scripts/lexicon_adapter.py"

Reads one {"id", "text"} object per line on stdin and writes one
{"id", "label", "scores"} object per line on stdout. A real classifier
would replace classify_baseline with a model call.
"""
import json
import sys

from datapoint.emotion import classify_baseline
from datapoint.lexicon import default_emotion_lexicon

lex = default_emotion_lexicon()
for line in sys.stdin:
    if not line.strip():
        continue
    req = json.loads(line)
    res = classify_baseline(req["text"], lex)
    print(json.dumps({"id": req["id"], "label": res.label, "scores": res.scores}), flush=True)
