"""Acceptance gate: one test group per criterion, at the stated tolerance.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints a
PASS/FAIL line per criterion.
"""
import json
import random
import time
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings, strategies as st

from datapoint import lexicon as lx
from datapoint.characters import detect_mentions
from datapoint.charts import CHART_KINDS, ChartSpec, render_chart
from datapoint.cli import OUTPUT_FILES, main
from datapoint.corpus import read_corpus
from datapoint.dataset import Analyzers, aggregate, assemble
from datapoint.emotion import classify_baseline
from datapoint.lexicon import EmotionLexicon, ValenceLexicon
from datapoint.sentiment import BOOSTERS, NEGATORS, score_paragraph
from datapoint.themes import tag_absurdity
from conftest import SAMPLE_CORPUS, adapter_cmd
from oracles import emotion_oracle, sentiment_oracle, theme_oracle
from test_sentiment import MINI, all_sequences
from test_charts import bars, slice_angles

C1 = pytest.mark.acceptance(1, "absurdity tagging fixtures give 1, 1, 0 under the default theme list")
C2 = pytest.mark.acceptance(2, "character fixtures give the three expected mention sets")
C3 = pytest.mark.acceptance(3, "sentiment properties over >=1000 fuzzed inputs; compound('good') = 0.4404")
C4 = pytest.mark.acceptance(4, "emotion, absurdity and sentiment agree with independent oracles")
C5 = pytest.mark.acceptance(5, "aggregate invariants on the bundled test corpus")
C6 = pytest.mark.acceptance(6, "--jobs 1 and --jobs 8 give byte-identical artifacts")
C7 = pytest.mark.acceptance(7, "chart geometry within 0.5 px / 0.1 deg; SVGs well-formed")
C8 = pytest.mark.acceptance(8, "adapter loopback, failure exit code, fallback equals baseline")
C9 = pytest.mark.acceptance(9, "10,000-paragraph corpus in < 5 s single-threaded")


# -- 1 ---------------------------------------------------------------------

@C1
def test_absurdity_fixtures():
    t0 = time.perf_counter()
    lex = lx.default_theme_lexicon()
    rows = [
        ("The death of my mother didn’t mean anything.", 1),
        ("Everything is meaningless in the end.", 1),
        ("I don’t care about people, nor their emotions.", 0),
    ]
    assert [tag_absurdity(text, lex).tag for text, _ in rows] == [want for _, want in rows]
    assert time.perf_counter() - t0 < 1.0


# -- 2 ---------------------------------------------------------------------

@C2
def test_character_fixtures():
    t0 = time.perf_counter()
    gaz = lx.default_gazetteer().with_narrator("Meursault").with_pronoun("third_masculine", "Meursault")
    rows = [
        ("Meursault went to the funeral.", {"Meursault"}),
        ("He met Marie at the beach.", {"Meursault", "Marie"}),
        ("Meursault had a brief conversation with the lawyer.", {"Meursault", "Lawyer"}),
    ]
    assert [set(detect_mentions(text, gaz).characters) for text, _ in rows] == [want for _, want in rows]
    assert time.perf_counter() - t0 < 1.0


# -- 3 ---------------------------------------------------------------------

@C3
def test_good_spot_check():
    lex = lx.default_valence_lexicon()
    assert lex.entries["good"] == 1.9
    assert abs(score_paragraph("good", lex).compound - 0.4404) <= 1e-4


FUZZ = settings(max_examples=1000, deadline=None, database=None)
neutral = st.sampled_from(["the", "table", "a", "window", "went", "sea"])
positive = st.sampled_from(["good", "love", "okay"])
mixed = st.sampled_from(["good", "bad", "love", "hate", "OKAY", "not", "very", "barely", "but", "table",
                         "can't", "GOOD!!", "so", "bad?"])


def run_counted(body, strategy):
    seen = []

    @FUZZ
    @given(strategy)
    def prop(args):
        seen.append(1)
        body(*args)

    prop()
    return len(seen)


@C3
def test_range_fuzz():
    def body(text):
        s = score_paragraph(text, MINI)
        assert -1.0 <= s.compound <= 1.0
        assert all(0.0 <= p <= 1.0 for p in (s.pos, s.neu, s.neg))
        if text.split():
            assert abs(s.pos + s.neu + s.neg - 1) <= 1e-6
    texts = st.one_of(st.text(max_size=60), st.lists(mixed, max_size=12).map(" ".join))
    assert run_counted(body, st.tuples(texts)) >= 1000


@C3
def test_sign_symmetry_fuzz():
    def body(before, after, v, punct):
        text = " ".join(before + ["x"] + after) + punct
        a = score_paragraph(text, ValenceLexicon({"x": v})).compound
        b = score_paragraph(text, ValenceLexicon({"x": -v})).compound
        assert abs(a + b) <= 1e-9
    strat = st.tuples(st.lists(neutral, max_size=6), st.lists(neutral, max_size=6), st.floats(0.05, 4.0),
                      st.sampled_from(["", ".", "!", "!!!", "??"]))
    assert run_counted(body, strat) >= 1000


@C3
def test_exclamation_fuzz():
    def body(word, filler, k):
        def c(n):
            return score_paragraph(" ".join(filler + [word]) + "!" * n, MINI).compound
        assert c(k) <= c(k + 1)
        if k >= 4:
            assert c(k) == c(4)
    assert run_counted(body, st.tuples(positive, st.lists(neutral, max_size=4), st.integers(0, 12))) >= 1000


@C3
def test_negation_fuzz():
    negs = st.sampled_from(sorted(NEGATORS))
    def body(neg, gap, word, tail):
        assert score_paragraph(" ".join([neg] + gap + [word] + tail), MINI).compound < 0
    strat = st.tuples(negs, st.lists(neutral, max_size=2), positive, st.lists(neutral, max_size=3))
    assert run_counted(body, strat) >= 1000


# -- 4 ---------------------------------------------------------------------

@C4
def test_emotion_oracle_200():
    rng = random.Random(4)
    labels = lx.EMOTION_LABELS[:-1]
    words = ["".join(rng.choice("bcdfghklmnprstvz") for _ in range(5)) for _ in range(30)]
    table = {w: frozenset(rng.sample(labels, rng.choice([1, 1, 2, 3]))) for w in words}
    lex = EmotionLexicon(table)
    mismatches = 0
    for _ in range(200):
        toks = [rng.choice(words + ["the", "was", "and"]) for _ in range(rng.randint(1, 60))]
        text = " ".join(t.capitalize() if rng.random() < 0.2 else t for t in toks) + "."
        want, _ = emotion_oracle(text, {w: sorted(v) for w, v in table.items()})
        mismatches += classify_baseline(text, lex).label != want
    assert mismatches == 0


@C4
def test_absurdity_oracle():
    lex = lx.default_theme_lexicon()
    paras = [p.text for p in read_corpus(SAMPLE_CORPUS)]
    rng = random.Random(44)
    vocab = ["absurd", "meaningless", "no meaning", "didn’t matter", "Indifference", "futility", "mean", "sea"]
    paras += [" ".join(rng.choice(vocab) for _ in range(rng.randint(1, 6))) for _ in range(300)]
    got = [tag_absurdity(p, lex).tag for p in paras]
    want = [theme_oracle(p, lex.patterns) for p in paras]
    assert sum(got) == sum(want)
    assert sum(g != w for g, w in zip(got, want)) == 0


@C4
def test_sentiment_oracle_all_short_sequences():
    mismatches = 0
    n = 0
    for text in all_sequences():
        n += 1
        s = score_paragraph(text, MINI)
        mismatches += (s.compound, s.pos, s.neu, s.neg) != sentiment_oracle(text, MINI.entries, NEGATORS, BOOSTERS)
    assert n == 1111 and mismatches == 0


# -- 5 ---------------------------------------------------------------------

@C5
@pytest.mark.parametrize("weighting", ["paragraphs", "characters"])
def test_aggregate_invariants(weighting):
    recs = assemble(read_corpus(SAMPLE_CORPUS), Analyzers.defaults())
    n = len(recs)
    assert n >= 200
    s = aggregate(recs, weighting=weighting)
    assert sum(s.emotion_freq.values()) == n
    assert sum(s.sentiment_hist) == n
    assert abs(s.dialogue_share + s.narrative_share - 1) <= 1e-9
    assert s.absurd_ratio == s.absurd_count / n


# -- 6 ---------------------------------------------------------------------

@C6
def test_jobs_determinism(tmp_path):
    a, b = tmp_path / "j1", tmp_path / "j8"
    assert main(["analyze", "--input", str(SAMPLE_CORPUS), "--out", str(a), "--jobs", "1"]) == 0
    assert main(["analyze", "--input", str(SAMPLE_CORPUS), "--out", str(b), "--jobs", "8"]) == 0
    names = ["records.csv", "summary.json"] + [f"{k}.svg" for k in CHART_KINDS]
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


# -- 7 ---------------------------------------------------------------------

@C7
def test_chart_geometry():
    rng = random.Random(7)
    for _ in range(200):
        counts = [rng.randint(0, 1000) for _ in range(rng.randint(1, 20))]
        svg = render_chart(ChartSpec("emotion_bar", "t", tuple((f"l{k}", c) for k, c in enumerate(counts))))
        vmax = max(counts) or 1
        for (_, h), c in zip(bars(svg), counts):
            assert abs(h - c / vmax * 296) <= 0.5
        hist = [rng.randint(0, 300) for _ in range(20)]
        vmax = max(hist) or 1
        for (_, h), c in zip(bars(render_chart(ChartSpec("sentiment_hist", "t", tuple(hist)))), hist):
            assert abs(h - c / vmax * 296) <= 0.5
        share = rng.random()
        ang = slice_angles(render_chart(ChartSpec("dialogue_pie", "t", (share, 1 - share))))
        assert abs(ang["dialogue"] - share * 360) <= 0.1
        assert abs(ang["narrative"] - (1 - share) * 360) <= 0.1


@C7
def test_svgs_well_formed(tmp_path):
    out = tmp_path / "o"
    assert main(["analyze", "--input", str(SAMPLE_CORPUS), "--out", str(out)]) == 0
    for kind in CHART_KINDS:
        ET.parse(out / f"{kind}.svg")


# -- 8 ---------------------------------------------------------------------

@C8
def test_adapter_loopback(tmp_path):
    out = tmp_path / "o"
    assert main(["analyze", "--input", str(SAMPLE_CORPUS), "--out", str(out),
                 "--emotion-adapter", adapter_cmd("echo_adapter.py", "surprise")]) == 0
    recs = json.loads((out / "records.json").read_text(encoding="utf-8"))
    assert [r["index"] for r in recs] == list(range(len(recs)))
    assert all(r["emotion"]["label"] == "surprise" and r["emotion"]["source"] == "adapter" for r in recs)


@C8
def test_adapter_failure_and_fallback(tmp_path):
    base, fb = tmp_path / "base", tmp_path / "fb"
    assert main(["analyze", "--input", str(SAMPLE_CORPUS), "--out", str(tmp_path / "x"),
                 "--emotion-adapter", "false"]) == 4
    assert main(["analyze", "--input", str(SAMPLE_CORPUS), "--out", str(base)]) == 0
    assert main(["analyze", "--input", str(SAMPLE_CORPUS), "--out", str(fb),
                 "--emotion-adapter", "false", "--adapter-fallback"]) == 0
    for name in OUTPUT_FILES:
        assert (base / name).read_bytes() == (fb / name).read_bytes(), name


# -- 9 ---------------------------------------------------------------------

def synthetic_corpus(n, seed=9):
    rng = random.Random(seed)
    source = [p.text for p in read_corpus(SAMPLE_CORPUS)]
    return "\n\n".join(f"{rng.choice(source)} {rng.choice(source)}" for _ in range(n))


@C9
def test_performance(tmp_path):
    f = tmp_path / "big.txt"
    f.write_text(synthetic_corpus(10_000), encoding="utf-8")
    t0 = time.perf_counter()
    assert main(["analyze", "--input", str(f), "--out", str(tmp_path / "o"), "--jobs", "1"]) == 0
    elapsed = time.perf_counter() - t0
    print(f"10,000 paragraphs in {elapsed:.2f} s")
    assert len(read_corpus(f)) == 10_000
    assert elapsed < 5.0
