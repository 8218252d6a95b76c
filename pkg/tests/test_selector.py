import pytest

from codemix.errors import UnlabeledTokenError
from codemix.labels import EN, HI, OTHER
from codemix.selector import CorpusFilter, FilterConfig, classify_sentence, filter_corpus
from codemix.tokenizer import PUNCT, WORD, Token

import synthgen


def word(text, label):
    return Token(text, 0, len(text), WORD, label=label, confidence=1.0)


def punct(text, label=OTHER):
    return Token(text, 0, len(text), PUNCT, label=label, confidence=1.0)


def test_accepts_two_two():
    decision = classify_sentence(
        [word("a", HI), word("b", HI), word("c", EN), word("d", EN), punct("!")]
    )
    assert decision.hi_count == 2
    assert decision.en_count == 2
    assert decision.other_count == 1
    assert decision.accepted
    assert decision.token_count == 5


def test_rejects_single_hi():
    decision = classify_sentence(
        [word("a", HI), word("b", EN), word("c", EN), word("d", EN)]
    )
    assert decision.hi_count == 1
    assert not decision.accepted


def test_empty_sentence_rejected():
    decision = classify_sentence([])
    assert (decision.hi_count, decision.en_count, decision.other_count) == (0, 0, 0)
    assert not decision.accepted


def test_other_labeled_word_counts_as_other():
    decision = classify_sentence([word("lol", OTHER), word("a", HI), word("b", EN)])
    assert decision.other_count == 1
    assert decision.hi_count == 1


def test_unlabeled_token_is_error():
    tokens = [word("a", HI), Token("b", 0, 1, WORD)]
    with pytest.raises(UnlabeledTokenError) as err:
        classify_sentence(tokens)
    assert err.value.index == 1


def test_config_validation():
    with pytest.raises(ValueError):
        FilterConfig(min_hi=0)


def test_decision_ignores_order():
    tokens = [word("a", HI), word("b", EN), word("c", HI), word("d", EN)]
    reversed_decision = classify_sentence(list(reversed(tokens)))
    decision = classify_sentence(tokens)
    assert decision == reversed_decision


def test_monolingual_corpus_rejected(small_model):
    lines = ["aaa bbb ccc ddd", "abc abd cde fgh"]  # EN-alphabet words only
    accepted, stats = filter_corpus(small_model, lines)
    assert accepted == []
    assert stats.total == 2
    assert stats.accepted == 0
    assert stats.rejected_low_hi == 2


def test_stats_reconcile(small_model):
    lines = synthgen.to_raw_lines(synthgen.make_corpus(200, seed=21))
    lines += ["@onlymention", ""]  # normalize to nothing
    accepted, stats = filter_corpus(small_model, lines)
    assert stats.total == len(lines)
    assert (
        stats.accepted
        + stats.rejected_low_hi
        + stats.rejected_low_en
        + stats.rejected_empty
        == stats.total
    )
    assert stats.rejected_empty == 2
    assert len(accepted) == stats.accepted


def test_accepted_set_matches_per_sentence_recount(small_model):
    from codemix.lid import predict_sentence
    from codemix.normalize import normalize_sentence
    from codemix.tokenizer import tokenize

    lines = synthgen.to_raw_lines(synthgen.make_corpus(150, seed=33))
    accepted, _ = filter_corpus(small_model, lines)

    expected = []
    for line in lines:
        normalized = normalize_sentence(line)
        if normalized is None:
            continue
        labeled = predict_sentence(small_model, tokenize(normalized))
        hi = sum(1 for t in labeled.tokens if t.kind == WORD and t.label == HI)
        en = sum(1 for t in labeled.tokens if t.kind == WORD and t.label == EN)
        if hi >= 2 and en >= 2:
            expected.append(normalized)
    assert accepted == expected


def test_threshold_monotonicity(small_model):
    lines = synthgen.to_raw_lines(synthgen.make_corpus(150, seed=34))
    loose, _ = filter_corpus(small_model, lines, FilterConfig(min_hi=1, min_en=1))
    default, _ = filter_corpus(small_model, lines, FilterConfig())
    strict, _ = filter_corpus(small_model, lines, FilterConfig(min_hi=3, min_en=3))
    assert set(default) <= set(loose)
    assert set(strict) <= set(default)


def test_sharding_equivalence(small_model):
    lines = synthgen.to_raw_lines(synthgen.make_corpus(120, seed=35))
    whole, _ = filter_corpus(small_model, lines)
    first, _ = filter_corpus(small_model, lines[:60])
    second, _ = filter_corpus(small_model, lines[60:])
    assert whole == first + second


def test_streaming_order_preserved(small_model):
    lines = synthgen.to_raw_lines(synthgen.make_corpus(80, seed=36))
    filt = CorpusFilter(small_model)
    accepted = list(filt.run(lines))
    positions = [lines.index(a) for a in accepted]
    assert positions == sorted(positions)
