"""The labeled-corpus interchange format: token<TAB>label lines.

One token per line, a blank line between sentences, labels from
{EN, HI, OTHER}, UTF-8. Lines without a tab parse as unlabeled tokens
when labels are optional (prediction input); otherwise they are format
errors with a line number.
"""

from __future__ import annotations

from pathlib import Path
from typing import IO, Iterable, Iterator, Sequence

from .errors import ConllFormatError
from .labels import LABELS

# A sentence is a list of (token text, label-or-None) pairs.
LabeledSentence = list[tuple[str, str | None]]


def iter_sentences(
    lines: Iterable[str], require_labels: bool = True, source: str = "<stream>"
) -> Iterator[LabeledSentence]:
    current: LabeledSentence = []
    line_no = 0
    for line in lines:
        line_no += 1
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip():
            if current:
                yield current
                current = []
            continue
        if "\t" in line:
            token, label = line.split("\t", 1)
            label = label.strip()
            if not token:
                raise ConllFormatError(line_no, f"{source}: empty token")
            if label not in LABELS:
                raise ConllFormatError(
                    line_no, f"{source}: label {label!r} not in {'/'.join(LABELS)}"
                )
            current.append((token, label))
        else:
            if require_labels:
                raise ConllFormatError(line_no, f"{source}: missing tab separator")
            current.append((line, None))
    if current:
        yield current


def read_labeled(path, require_labels: bool = True) -> list[LabeledSentence]:
    with open(path, "r", encoding="utf-8") as fh:
        return list(iter_sentences(fh, require_labels=require_labels, source=str(path)))


def write_sentences(out: IO[str], sentences: Iterable[Sequence[tuple[str, str | None]]]) -> int:
    """Write sentences; returns how many were written."""
    count = 0
    for sent in sentences:
        if not sent:
            continue
        for token, label in sent:
            out.write(f"{token}\t{label}\n" if label is not None else f"{token}\n")
        out.write("\n")
        count += 1
    return count


def write_labeled(path, sentences: Iterable[Sequence[tuple[str, str | None]]]) -> int:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        return write_sentences(fh, sentences)


def to_xy(sentences: Sequence[LabeledSentence]) -> tuple[list[list[str]], list[list[str]]]:
    """Split (token, label) sentences into parallel X, y lists."""
    X = [[token for token, _ in sent] for sent in sentences]
    y = [[label for _, label in sent] for sent in sentences]
    return X, y
