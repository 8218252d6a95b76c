"""Streaming line-corpus ingestion, dedup, shuffle and train/valid split.

The interchange format is UTF-8 text, one sentence per line. Readers
skip empty lines and record (rather than raise on) lines that fail to
decode, so one bad byte cannot kill a long stream. Dedup, shuffle and
split are deterministic given their seeds; stats go to a side channel,
never into the data stream.
"""

from __future__ import annotations

import random
import struct
import zlib
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .validation import check_fraction


@dataclass
class LineError:
    line_no: int
    message: str


class SentenceReader:
    """Iterate non-empty sentences from a line file.

    Lines that are not valid UTF-8 are recorded in .errors with their
    1-based line number and skipped. .line_count counts lines seen
    (empty ones included) and is final once iteration ends.
    """

    def __init__(self, path):
        self.path = path
        self.errors: list[LineError] = []
        self.line_count = 0

    def __iter__(self) -> Iterator[str]:
        self.errors = []
        self.line_count = 0
        with open(self.path, "rb") as fh:
            for line_no, raw in enumerate(fh, start=1):
                self.line_count = line_no
                raw = raw.rstrip(b"\n").rstrip(b"\r")
                if not raw:
                    continue
                try:
                    yield raw.decode("utf-8")
                except UnicodeDecodeError as exc:
                    self.errors.append(LineError(line_no, str(exc)))


def read_sentences(path) -> SentenceReader:
    return SentenceReader(path)


class Deduplicator:
    """Keep the first occurrence of each exact line, preserving order."""

    def __init__(self, lines: Iterable[str]):
        self._lines = lines
        self.removed = 0

    def __iter__(self) -> Iterator[str]:
        self.removed = 0
        seen: set[str] = set()
        for line in self._lines:
            if line in seen:
                self.removed += 1
                continue
            seen.add(line)
            yield line


def dedup(lines: Iterable[str]) -> Deduplicator:
    return Deduplicator(lines)


def shuffle_lines(lines: Iterable[str], seed: int) -> list[str]:
    """Deterministic permutation of the corpus for a given seed."""
    out = list(lines)
    random.Random(seed).shuffle(out)
    return out


@dataclass
class SplitSpec:
    """Validation fraction and seed for the deterministic split."""

    valid_fraction: float = 0.097
    seed: int = 0

    def __post_init__(self):
        check_fraction(self.valid_fraction)


def _split_key(index: int, seed: int) -> int:
    return zlib.crc32(struct.pack("<QQ", index, seed & (2**64 - 1)))


def split_corpus(
    lines: Sequence[str] | Iterable[str], spec: SplitSpec
) -> tuple[list[str], list[str]]:
    """Partition lines into (train, valid), exactly round(f*N) valid.

    Assignment depends only on (line index, seed): lines are ranked by a
    hash of their index and the smallest-quota indices go to validation,
    so the same corpus always splits the same way.
    """
    lines = list(lines)
    n = len(lines)
    quota = int(n * spec.valid_fraction + 0.5)
    if quota == 0:
        return lines, []
    ranked = sorted(range(n), key=lambda i: (_split_key(i, spec.seed), i))
    valid_idx = set(ranked[:quota])
    train = [line for i, line in enumerate(lines) if i not in valid_idx]
    valid = [line for i, line in enumerate(lines) if i in valid_idx]
    return train, valid
