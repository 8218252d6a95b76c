import itertools
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from codemix.errors import AlignmentMismatchError, LabelError
from codemix.labels import LABELS
from codemix.metrics import (
    OTHER_EXCLUDE,
    cmi_corpus,
    cmi_sentence,
    corpus_stats,
    evaluate_lid,
    format_cmi_report,
    format_corpus_stats,
    format_eval_report,
)


def cmi_brute_force(labels):
    """Independent oracle: 100*(1 - max_w/(n-u)), 0 when n == u."""
    counts = Counter(l for l in labels if l in ("EN", "HI"))
    n = len(labels)
    u = n - sum(counts.values())
    if n == u:
        return 0.0
    return 100.0 * (1.0 - max(counts.values()) / (n - u))


LABEL_LISTS = st.lists(st.sampled_from(LABELS), max_size=12)


def test_cmi_mixed_example():
    assert cmi_sentence(["HI", "HI", "EN", "EN", "OTHER"]) == 50.0


def test_cmi_monolingual_is_zero():
    assert cmi_sentence(["EN", "EN", "EN"]) == 0.0
    assert cmi_sentence(["HI"]) == 0.0


def test_cmi_all_other_is_zero():
    assert cmi_sentence(["OTHER", "OTHER"]) == 0.0
    assert cmi_sentence([]) == 0.0


def test_cmi_other_conventions_coincide():
    for labels in [["HI", "EN", "OTHER"], ["EN"] * 3, ["OTHER"], ["HI", "EN"] * 4]:
        assert cmi_sentence(labels) == cmi_sentence(labels, OTHER_EXCLUDE)


def test_cmi_bad_label_rejected():
    with pytest.raises(LabelError):
        cmi_sentence(["EN", "FR"])
    with pytest.raises(ValueError):
        cmi_sentence(["EN"], other_mode="bogus")


def test_cmi_exhaustive_short_sequences():
    for length in range(0, 5):
        for labels in itertools.product(LABELS, repeat=length):
            assert cmi_sentence(list(labels)) == cmi_brute_force(labels)


@given(LABEL_LISTS)
def test_cmi_matches_brute_force(labels):
    assert cmi_sentence(labels) == cmi_brute_force(labels)


@given(LABEL_LISTS, st.randoms())
def test_cmi_invariant_under_permutation(labels, rnd):
    shuffled = list(labels)
    rnd.shuffle(shuffled)
    assert cmi_sentence(shuffled) == cmi_sentence(labels)


@given(LABEL_LISTS)
def test_cmi_invariant_under_language_swap(labels):
    swapped = [{"EN": "HI", "HI": "EN"}.get(l, l) for l in labels]
    assert cmi_sentence(swapped) == cmi_sentence(labels)


@given(LABEL_LISTS)
def test_cmi_range_and_zero_characterization(labels):
    value = cmi_sentence(labels)
    assert 0.0 <= value <= 100.0
    langs = {l for l in labels if l != "OTHER"}
    assert (value == 0.0) == (len(langs) <= 1 or cmi_brute_force(labels) == 0.0)


def test_cmi_corpus_mean():
    report = cmi_corpus([["EN", "EN"], ["HI", "HI", "EN", "EN"]])
    assert report.sentence_count == 2
    assert report.mean_cmi == 25.0
    assert report.monolingual_fraction == 0.5
    assert sum(report.histogram) == 2
    assert report.histogram[0] == 1  # the CMI-0 sentence
    assert report.histogram[5] == 1  # the CMI-50 sentence


def test_cmi_corpus_empty():
    report = cmi_corpus([])
    assert report.sentence_count == 0
    assert report.mean_cmi == 0.0
    assert "empty: true" in format_cmi_report(report)


@given(st.lists(LABEL_LISTS, max_size=30))
def test_cmi_corpus_matches_recount(seqs):
    report = cmi_corpus(seqs)
    values = [cmi_brute_force(labels) for labels in seqs]
    assert report.sentence_count == len(seqs)
    if seqs:
        assert report.mean_cmi == pytest.approx(sum(values) / len(values))
        assert report.monolingual_fraction == pytest.approx(
            sum(v == 0 for v in values) / len(values)
        )
    assert sum(report.histogram) == len(seqs)


# -- corpus stats ------------------------------------------------------------


def test_corpus_stats_single_sentence():
    stats = corpus_stats([[("a", "EN"), ("b", "EN")]])
    assert stats.sentences == 1
    assert stats.tokens == 2
    assert stats.label_counts["EN"] == 2
    assert stats.mean_tokens_per_sentence == 2.0


def test_corpus_stats_additive():
    part1 = [[("a", "EN")], [("b", "HI"), ("c", "OTHER")]]
    part2 = [[("d", "HI")]]
    merged = corpus_stats(part1).add(corpus_stats(part2))
    direct = corpus_stats(part1 + part2)
    assert merged == direct


def test_corpus_stats_report_format():
    text = format_corpus_stats(corpus_stats([[("a", "EN")]]))
    assert "sentences: 1" in text
    assert "tokens_en: 1" in text
    assert "mean_tokens_per_sentence: 1.0000" in text


# -- evaluation ----------------------------------------------------------------


def sent(tokens, labels):
    return list(zip(tokens, labels))


def test_eval_identical_predictions():
    gold = [sent(["a", "b"], ["EN", "HI"])]
    report = evaluate_lid(gold, gold)
    assert report.accuracy == 1.0
    assert report.per_label["EN"].f1 == 1.0
    assert report.per_label["HI"].f1 == 1.0
    assert report.weighted_f1 == 1.0


def test_eval_hand_computed_example():
    gold = [sent(["a", "b", "c"], ["EN", "EN", "HI"])]
    pred = [sent(["a", "b", "c"], ["EN", "HI", "HI"])]
    report = evaluate_lid(gold, pred)
    assert report.accuracy == pytest.approx(2 / 3)
    en = report.per_label["EN"]
    hi = report.per_label["HI"]
    assert en.precision == 1.0
    assert en.recall == pytest.approx(1 / 2)
    assert en.f1 == pytest.approx(2 / 3)
    assert hi.precision == pytest.approx(1 / 2)
    assert hi.recall == 1.0
    assert hi.f1 == pytest.approx(2 / 3)


def test_eval_zero_support_convention():
    gold = [sent(["!", "?"], ["OTHER", "OTHER"])]
    report = evaluate_lid(gold, gold)
    assert report.per_label["OTHER"].f1 == 1.0
    assert report.per_label["EN"].f1 == 0.0
    assert report.per_label["HI"].f1 == 0.0
    assert report.macro_f1 == pytest.approx(1 / 3)


def test_eval_confusion_row_sums_are_gold_counts():
    gold = [sent(["a", "b", "c", "d"], ["EN", "EN", "HI", "OTHER"])]
    pred = [sent(["a", "b", "c", "d"], ["HI", "EN", "HI", "EN"])]
    report = evaluate_lid(gold, pred)
    assert [sum(row) for row in report.confusion] == [2, 1, 1]
    assert report.token_count == 4
    trace = sum(report.confusion[i][i] for i in range(3))
    assert report.accuracy == trace / 4


def test_eval_alignment_errors():
    gold = [sent(["a", "b"], ["EN", "EN"])]
    with pytest.raises(AlignmentMismatchError):
        evaluate_lid(gold, [sent(["a"], ["EN"])])
    with pytest.raises(AlignmentMismatchError):
        evaluate_lid(gold, gold + gold)
    with pytest.raises(AlignmentMismatchError):
        evaluate_lid(gold, [sent(["a", "DIFFERENT"], ["EN", "EN"])])


def test_eval_report_format():
    gold = [sent(["a"], ["EN"])]
    text = format_eval_report(evaluate_lid(gold, gold))
    assert "accuracy: 1.0000" in text
    assert "weighted_f1_pct: 100.00" in text
    assert "confusion_en_en: 1" in text
