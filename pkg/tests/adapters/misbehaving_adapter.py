"""Adapter with a selectable fault, for error-path tests.

modes: reverse, unknown-label, drop-first, garbage, no-scores, sleep, crash
"""
import json
import sys
import time

mode = sys.argv[1]
reqs = [json.loads(line) for line in sys.stdin if line.strip()]

if mode == "crash":
    print("boom", file=sys.stderr)
    sys.exit(3)
if mode == "sleep":
    time.sleep(30)
if mode == "reverse":
    reqs.reverse()
if mode == "drop-first":
    reqs = reqs[1:]
for r in reqs:
    if mode == "garbage":
        print("this is not json")
    elif mode == "unknown-label":
        print(json.dumps({"id": r["id"], "label": "ennui"}))
    elif mode == "no-scores":
        print(json.dumps({"id": r["id"], "label": "joy"}))
    else:
        label = "joy" if r["id"] % 2 else "sadness"
        print(json.dumps({"id": r["id"], "label": label, "scores": {label: 0.5}}))
