"""Split normalized sentences into word/punct/emoji/number tokens.

Tokens carry half-open byte spans into the normalized sentence (UTF-8
offsets), so joining token texts with the original inter-token
whitespace reconstructs the input exactly. Words are maximal letter
runs; digits and apostrophes are allowed inside a word ("don't" stays
one token). Punctuation groups into runs of the same script class, so
a smiley like ":)" is a single token; every emoji scalar is its own
token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .normalize import EMOJI_RANGES, script_class

# Token kinds.
WORD = "word"
PUNCT = "punct"
EMOJI = "emoji"
NUMBER = "number"

_LETTER_CC = "A-Za-zऀ-ॿ"
_EMOJI_CC = "".join(f"{chr(lo)}-{chr(hi)}" for lo, hi in EMOJI_RANGES)

_WORD_RE = re.compile(
    rf"[{_LETTER_CC}](?:[{_LETTER_CC}0-9]|'(?=[{_LETTER_CC}0-9]))*"
)
_NUMBER_RE = re.compile(r"[0-9]+")
_EMOJI_RE = re.compile(f"[{_EMOJI_CC}]")
_HAS_LETTER_RE = re.compile(rf"[{_LETTER_CC}]")


@dataclass
class Token:
    """One token with its UTF-8 byte span in the normalized sentence."""

    text: str
    start: int
    end: int
    kind: str
    label: str | None = None
    confidence: float | None = None

    def with_label(self, label: str, confidence: float) -> "Token":
        return replace(self, label=label, confidence=confidence)


@dataclass
class TokenizedSentence:
    raw: str
    tokens: list[Token]


def token_kind(text: str) -> str:
    """Kind of an externally sourced token, from its characters alone."""
    if _HAS_LETTER_RE.search(text):
        return WORD
    if text.isdigit() and text.isascii():
        return NUMBER
    if len(text) == 1 and script_class(text) == "emoji":
        return EMOJI
    return PUNCT


def tokenize(normalized: str) -> TokenizedSentence:
    """Tokenize a normalized sentence.

    Expects normalize_sentence output (single spaces, policy-clean
    characters) but is total: unexpected characters group into punct
    runs by script class.
    """
    tokens: list[Token] = []
    pos = 0
    n = len(normalized)
    while pos < n:
        ch = normalized[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _WORD_RE.match(normalized, pos)
        if m:
            tokens.append(Token(m.group(), pos, m.end(), WORD))
            pos = m.end()
            continue
        m = _NUMBER_RE.match(normalized, pos)
        if m:
            tokens.append(Token(m.group(), pos, m.end(), NUMBER))
            pos = m.end()
            continue
        m = _EMOJI_RE.match(normalized, pos)
        if m:
            tokens.append(Token(m.group(), pos, m.end(), EMOJI))
            pos = m.end()
            continue
        # Run of remaining characters sharing one script class.
        cls = script_class(ch)
        end = pos + 1
        while end < n:
            nxt = normalized[end]
            if (
                nxt.isspace()
                or script_class(nxt) != cls
                or _WORD_RE.match(normalized, end)
                or _NUMBER_RE.match(normalized, end)
                or _EMOJI_RE.match(normalized, end)
            ):
                break
            end += 1
        tokens.append(Token(normalized[pos:end], pos, end, PUNCT))
        pos = end
    _char_spans_to_bytes(normalized, tokens)
    return TokenizedSentence(normalized, tokens)


def _char_spans_to_bytes(text: str, tokens: list[Token]) -> None:
    if text.isascii():
        return
    byte_at = [0] * (len(text) + 1)
    total = 0
    for i, ch in enumerate(text):
        byte_at[i] = total
        total += len(ch.encode("utf-8"))
    byte_at[len(text)] = total
    for tok in tokens:
        tok.start, tok.end = byte_at[tok.start], byte_at[tok.end]


def token_at_span(sentence: str, start: int, end: int) -> str:
    """Substring of the sentence at a byte span."""
    return sentence.encode("utf-8")[start:end].decode("utf-8")


def detokenize(sent: TokenizedSentence) -> str:
    """Rebuild the normalized sentence from token spans and the gaps."""
    raw_bytes = sent.raw.encode("utf-8")
    out = bytearray()
    prev_end = 0
    for tok in sent.tokens:
        out += raw_bytes[prev_end:tok.start]
        out += tok.text.encode("utf-8")
        prev_end = tok.end
    out += raw_bytes[prev_end:]
    return out.decode("utf-8")
