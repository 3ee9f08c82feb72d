"""Run the full pipeline on the bundled sample story.

    python3 scripts/run_sample.py [OUT_DIR]

Uses the sample cast (narrator "Clerk") rather than the default gazetteer.
"""
import sys
from importlib import resources

from datapoint.cli import main

out = sys.argv[1] if len(sys.argv) > 1 else "sample_out"
data = resources.files("datapoint") / "data"
sys.exit(main([
    "analyze",
    "--input", str(data / "sample_corpus.txt"),
    "--characters", str(data / "sample_gazetteer.json"),
    "--out", out,
]))
