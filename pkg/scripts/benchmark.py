"""Time the analyze command on a synthetic corpus built from the sample story.

    python3 scripts/benchmark.py [--paragraphs 10000] [--jobs 1] [--repeat 3]

Each synthetic paragraph joins two random sample paragraphs, so the text
mix (dialogue, names, theme words) matches the story.
"""
import argparse
import random
import statistics
import tempfile
import time
from importlib import resources
from pathlib import Path

from datapoint.cli import main
from datapoint.corpus import read_corpus


def synthetic(n, seed):
    rng = random.Random(seed)
    source = [p.text for p in read_corpus(resources.files("datapoint") / "data" / "sample_corpus.txt")]
    return "\n\n".join(f"{rng.choice(source)} {rng.choice(source)}" for _ in range(n))


def run():
    ap = argparse.ArgumentParser()
    ap.add_argument("--paragraphs", type=int, default=10_000)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=9)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        src = Path(tmp) / "corpus.txt"
        src.write_text(synthetic(args.paragraphs, args.seed), encoding="utf-8")
        times = []
        for k in range(args.repeat):
            t0 = time.perf_counter()
            code = main(["analyze", "--input", str(src), "--out", str(Path(tmp) / f"out{k}"),
                         "--jobs", str(args.jobs)])
            times.append(time.perf_counter() - t0)
            if code:
                raise SystemExit(code)
    print(f"{args.paragraphs} paragraphs, jobs={args.jobs}: "
          f"median {statistics.median(times):.2f} s, best {min(times):.2f} s")


if __name__ == "__main__":
    run()
