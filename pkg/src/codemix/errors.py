"""Exception types shared across the toolkit."""

from __future__ import annotations


class CodemixError(Exception):
    """Base class for all toolkit errors."""


class ConllFormatError(CodemixError):
    """Malformed line in a token<TAB>label corpus file."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class EmptyCorpusError(CodemixError):
    """Training corpus contains no usable word tokens."""


class LabelError(CodemixError):
    """A label falls outside the EN/HI/OTHER alphabet."""

    def __init__(self, label: object, token: str | None = None):
        self.label = label
        self.token = token
        where = f" on token {token!r}" if token is not None else ""
        super().__init__(f"label {label!r}{where} is not one of EN/HI/OTHER")


class UnlabeledTokenError(CodemixError):
    """A token that should carry a label does not."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"token at index {index} has no label")


class AlignmentMismatchError(CodemixError):
    """Gold and predicted corpora disagree on sentence or token structure."""

    def __init__(self, sentence_id: object, detail: str = ""):
        self.sentence_id = sentence_id
        msg = f"sentence {sentence_id}: tokenization mismatch"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PendingItemsRemainError(CodemixError):
    """Corrections were requested while review items are still pending."""

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"{count} review item(s) still pending")


class ModelFormatError(CodemixError):
    """Base class for model-file deserialization failures."""


class FormatVersionMismatch(ModelFormatError):
    """Model file has wrong magic bytes or an unsupported version."""


class ChecksumMismatch(ModelFormatError):
    """Model file is truncated or its trailing CRC32 does not match."""


class CorruptStateError(CodemixError):
    """A bootstrap state directory is missing files or inconsistent."""


class NotFittedError(CodemixError):
    """The classifier was used before fit() or load()."""
