import random

from hypothesis import given
from hypothesis import strategies as st

from codemix.corpus_io import (
    SplitSpec,
    dedup,
    read_sentences,
    shuffle_lines,
    split_corpus,
)


def write(path, text, binary=False):
    if binary:
        path.write_bytes(text)
    else:
        path.write_text(text, encoding="utf-8")
    return path


def test_read_skips_empty_lines(tmp_path):
    path = write(tmp_path / "c.txt", "a\n\nb\n")
    reader = read_sentences(path)
    assert list(reader) == ["a", "b"]
    assert reader.line_count == 3
    assert reader.errors == []


def test_read_empty_file(tmp_path):
    path = write(tmp_path / "c.txt", "")
    reader = read_sentences(path)
    assert list(reader) == []
    assert reader.line_count == 0


def test_read_records_invalid_utf8(tmp_path):
    path = write(tmp_path / "c.txt", b"good\n\xff\xfe bad\nalso good\n", binary=True)
    reader = read_sentences(path)
    assert list(reader) == ["good", "also good"]
    assert len(reader.errors) == 1
    assert reader.errors[0].line_no == 2


def test_read_handles_crlf(tmp_path):
    path = write(tmp_path / "c.txt", "a\r\nb\r\n")
    assert list(read_sentences(path)) == ["a", "b"]


def test_dedup_keeps_first_occurrence():
    deduper = dedup(["x", "y", "x"])
    assert list(deduper) == ["x", "y"]
    assert deduper.removed == 1


def test_dedup_all_unique():
    lines = [f"line{i}" for i in range(20)]
    deduper = dedup(lines)
    assert list(deduper) == lines
    assert deduper.removed == 0


def test_dedup_thousand_duplicated_shuffled():
    lines = [f"sentence number {i}" for i in range(500)] * 2
    random.Random(9).shuffle(lines)
    deduper = dedup(lines)
    assert len(list(deduper)) == 500
    assert deduper.removed == 500


def test_dedup_idempotent():
    lines = ["a", "b", "a", "c", "b"]
    once = list(dedup(lines))
    assert list(dedup(once)) == once


def test_shuffle_deterministic():
    lines = [str(i) for i in range(100)]
    assert shuffle_lines(lines, 42) == shuffle_lines(lines, 42)
    assert shuffle_lines(lines, 42) != shuffle_lines(lines, 43)


def test_shuffle_is_permutation():
    lines = [str(i) for i in range(100)]
    assert sorted(shuffle_lines(lines, 7)) == sorted(lines)


def test_shuffle_single_line():
    assert shuffle_lines(["only"], 1) == ["only"]


def test_split_exact_quota():
    lines = [str(i) for i in range(1000)]
    train, valid = split_corpus(lines, SplitSpec(valid_fraction=0.1, seed=0))
    assert len(valid) == 100
    assert len(train) == 900


def test_split_zero_fraction():
    lines = [str(i) for i in range(10)]
    train, valid = split_corpus(lines, SplitSpec(valid_fraction=0.0, seed=0))
    assert train == lines
    assert valid == []


def test_split_partition_preserves_order():
    lines = [str(i) for i in range(200)]
    train, valid = split_corpus(lines, SplitSpec(valid_fraction=0.25, seed=5))
    assert sorted(train + valid) == sorted(lines)
    assert train == [l for l in lines if l in set(train)]
    assert valid == [l for l in lines if l in set(valid)]


def test_split_deterministic_and_seed_sensitive():
    lines = [str(i) for i in range(300)]
    a = split_corpus(lines, SplitSpec(valid_fraction=0.2, seed=1))
    b = split_corpus(lines, SplitSpec(valid_fraction=0.2, seed=1))
    c = split_corpus(lines, SplitSpec(valid_fraction=0.2, seed=2))
    assert a == b
    assert a != c


def test_split_fraction_validation():
    import pytest

    with pytest.raises(ValueError):
        SplitSpec(valid_fraction=1.0)
    with pytest.raises(ValueError):
        SplitSpec(valid_fraction=-0.1)


def test_default_fraction_matches_published_corpus_split():
    # 52.93M sentences at the default 0.097 leaves ~5.13M for validation.
    quota = int(52_930_000 * SplitSpec().valid_fraction + 0.5)
    assert round(quota / 1e6, 2) == 5.13


def test_reader_and_dedup_stats_reset_between_iterations(tmp_path):
    path = write(tmp_path / "c.txt", "a\na\nb\n")
    deduper = dedup(["x", "x"])
    assert list(deduper) == ["x"] and deduper.removed == 1
    assert list(deduper) == ["x"] and deduper.removed == 1
    reader = read_sentences(path)
    assert len(list(reader)) == 3 and reader.line_count == 3
    assert len(list(reader)) == 3 and reader.line_count == 3


@given(
    st.lists(st.text(alphabet="abc", min_size=1, max_size=3), max_size=60),
    st.floats(min_value=0.0, max_value=0.99),
    st.integers(min_value=0, max_value=2**63),
)
def test_split_partition_property(lines, fraction, seed):
    train, valid = split_corpus(lines, SplitSpec(valid_fraction=fraction, seed=seed))
    assert len(train) + len(valid) == len(lines)
    assert len(valid) == int(len(lines) * fraction + 0.5)
    assert sorted(train + valid) == sorted(lines)
