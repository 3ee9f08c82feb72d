import pytest
from hypothesis import given, settings, strategies as st

from datapoint.characters import MentionSet, detect_mentions
from datapoint.corpus import Paragraph, read_corpus, segment_text
from datapoint.dataset import (HIST_BINS, Analyzers, ParagraphRecord, aggregate, analyze_paragraph, assemble,
                               histogram)
from datapoint.dialogue import DialogueInfo, classify_dialogue
from datapoint.emotion import EmotionResult, classify_baseline
from datapoint.report import records_csv, summary_json
from datapoint.sentiment import SentimentScore, score_paragraph
from datapoint.themes import ThemeTag, tag_absurdity
from conftest import SAMPLE_CORPUS


@pytest.fixture(scope="module")
def an():
    return Analyzers.defaults()


def fake(i, compound=0.0, tag=0, label="neutral", names=(), dialogue=False):
    return ParagraphRecord(
        paragraph=Paragraph(i, f"p{i}", i * 4),
        emotion=EmotionResult(label, {label: 1.0}),
        sentiment=SentimentScore(compound, 0.0, 1.0, 0.0),
        characters=MentionSet(frozenset(names)),
        theme=ThemeTag(tag, (("absurd*", 0),) if tag else ()),
        dialogue=DialogueInfo(dialogue, ((0, 2),) if dialogue else ()),
    )


def test_empty_corpus(an):
    assert assemble([], an) == []
    with pytest.raises(ValueError):
        aggregate([])


def test_single_paragraph_composition(an):
    p = Paragraph(0, '"I am happy," said Marie. It was absurd.', 0)
    [r] = assemble([p], an)
    assert r.paragraph == p
    assert r.emotion == classify_baseline(p.text, an.emotion)
    assert r.sentiment == score_paragraph(p.text, an.valence, an.rules)
    assert r.characters == detect_mentions(p.text, an.gazetteer)
    assert r.theme == tag_absurdity(p.text, an.themes)
    assert r.dialogue == classify_dialogue(p.text, an.quote_styles)
    assert r == analyze_paragraph(p, an)


def test_mean_and_population_std():
    s = aggregate([fake(0, -0.5), fake(1, 0.5)])
    assert s.sentiment_mean == 0.0 and s.sentiment_std == 0.5


def test_absurd_ratio():
    s = aggregate([fake(i, tag=t) for i, t in enumerate([1, 1, 0, 1])])
    assert s.absurd_count == 3 and s.absurd_ratio == 0.75


def test_histogram_edges():
    h = histogram([1.0, -1.0, 0.0, 0.05, -0.05, 0.1])
    assert h[-1] == 1 and h[0] == 1
    assert h[10] == 2 and h[9] == 1 and h[11] == 1
    assert sum(histogram([0.3])) == 1 and histogram([0.3])[13] == 1
    with pytest.raises(ValueError):
        histogram([1.5])


def test_emotion_freq_lists_every_label():
    s = aggregate([fake(0, label="joy")])
    assert s.emotion_freq == {"sadness": 0, "joy": 1, "anger": 0, "fear": 0, "surprise": 0, "disgust": 0,
                              "neutral": 0}


def test_record_index_equals_paragraph_index(an):
    ps = read_corpus(SAMPLE_CORPUS)
    recs = assemble(ps, an)
    assert [r.index for r in recs] == [p.index for p in ps]


def test_parallel_identical(an):
    ps = read_corpus(SAMPLE_CORPUS)[:100]
    one = assemble(ps, an, jobs=1)
    eight = assemble(ps, an, jobs=8)
    assert one == eight
    assert records_csv(one) == records_csv(eight)
    assert summary_json(aggregate(one)) == summary_json(aggregate(eight))


def test_bad_jobs(an):
    with pytest.raises(ValueError):
        assemble([Paragraph(0, "x", 0)], an, jobs=0)


sentences = st.sampled_from([
    "Good news!", "It was absurd.", '"Hello," said Marie.', "I hate it, but I love it.", "Nothing.",
    "Raymond wept in grief.", "The sea was calm", "“Wait", "NOT GOOD at all!!!", "Everything is meaningless."])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(sentences, min_size=1, max_size=4).map(" ".join), min_size=1, max_size=25),
       st.integers(1, 12), st.sampled_from(["paragraphs", "characters"]))
def test_summary_invariants_on_fuzzed_corpora(paras, window, weighting):
    an = Analyzers.defaults()
    recs = assemble(segment_text("\n\n".join(paras)), an)
    s = aggregate(recs, window, weighting)
    n = len(recs)
    assert s.n_paragraphs == n == len(paras)
    assert sum(s.emotion_freq.values()) == n
    assert sum(s.sentiment_hist) == n and len(s.sentiment_hist) == HIST_BINS
    assert s.absurd_ratio == s.absurd_count / n
    assert abs(s.dialogue_share + s.narrative_share - 1) <= 1e-9
    assert all(c <= n for c in s.interaction_counts.values())
    assert len(s.absurdity_series) == n
