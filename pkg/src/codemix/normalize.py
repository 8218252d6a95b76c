"""Sentence normalization: mention/URL stripping, script policy, whitespace.

Normalized text is the interchange form for the rest of the pipeline.
Mentions and URLs are removed first (so their spans cannot leave stray
fragments), then characters outside the script policy are dropped, then
whitespace runs collapse to single spaces. Case, ASCII punctuation and
emoji survive untouched; a sentence that ends up empty is dropped.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from functools import lru_cache

# Script classes, total over Unicode scalar values.
ROMAN = "roman"
DEVANAGARI = "devanagari"
DIGIT = "digit"
PUNCT = "punct"
EMOJI = "emoji"
OTHER_SCRIPT = "other"

# Policy script modes.
SCRIPT_ROMAN = "roman"
SCRIPT_MIXED = "mixed"

# Pictographic blocks treated as emoji (plus regional-indicator flags).
EMOJI_RANGES = ((0x1F300, 0x1FAFF), (0x2600, 0x27BF), (0x1F1E6, 0x1F1FF))

_ASCII_PUNCT = frozenset(string.punctuation)

_MENTION_RE = re.compile(r"(?<!\S)@[A-Za-z0-9_]+")
_URL_RE = re.compile(r"https?://\S+|(?<!\S)t\.co/\S+")
_SPACE_RE = re.compile(r"\s+")

_PUNCT_CC = "".join(re.escape(c) for c in string.punctuation)
_EMOJI_CC = "".join(
    f"{chr(lo)}-{chr(hi)}" for lo, hi in EMOJI_RANGES
)
_DEVANAGARI_CC = "ऀ-ॿ"


def script_class(ch: str) -> str:
    """Classify a single Unicode scalar into one script class."""
    if ("a" <= ch <= "z") or ("A" <= ch <= "Z"):
        return ROMAN
    if "0" <= ch <= "9":
        return DIGIT
    if ch in _ASCII_PUNCT:
        return PUNCT
    cp = ord(ch)
    if 0x0900 <= cp <= 0x097F:
        return DEVANAGARI
    for lo, hi in EMOJI_RANGES:
        if lo <= cp <= hi:
            return EMOJI
    return OTHER_SCRIPT


@dataclass(frozen=True)
class NormalizePolicy:
    """What survives normalization.

    `roman` keeps Basic Latin letters/digits, ASCII punctuation,
    whitespace and (optionally) emoji; `mixed` additionally keeps the
    Devanagari block U+0900-U+097F.
    """

    script_mode: str = SCRIPT_ROMAN
    strip_mentions: bool = True
    strip_urls: bool = True
    keep_emoji: bool = True

    def __post_init__(self):
        if self.script_mode not in (SCRIPT_ROMAN, SCRIPT_MIXED):
            raise ValueError(f"unknown script mode {self.script_mode!r}")


DEFAULT_POLICY = NormalizePolicy()


@lru_cache(maxsize=None)
def _disallowed_re(script_mode: str, keep_emoji: bool) -> re.Pattern[str]:
    keep = f"A-Za-z0-9{_PUNCT_CC}\\s"
    if keep_emoji:
        keep += _EMOJI_CC
    if script_mode == SCRIPT_MIXED:
        keep += _DEVANAGARI_CC
    return re.compile(f"[^{keep}]")


def _normalize_once(text: str, policy: NormalizePolicy) -> str:
    if policy.strip_mentions:
        text = _MENTION_RE.sub(" ", text)
    if policy.strip_urls:
        text = _URL_RE.sub(" ", text)
    text = _disallowed_re(policy.script_mode, policy.keep_emoji).sub("", text)
    return _SPACE_RE.sub(" ", text).strip()


def normalize_sentence(raw: str, policy: NormalizePolicy = DEFAULT_POLICY) -> str | None:
    """Normalize one sentence; return None if nothing survives.

    Removal passes repeat until the text is stable: dropping a mention,
    URL or disallowed character can expose a new token-initial mention
    or URL, and the output must contain neither pattern. Each pass only
    removes characters, so the loop terminates. Idempotent.
    """
    text = _normalize_once(raw, policy)
    while True:
        again = _normalize_once(text, policy)
        if again == text:
            break
        text = again
    return text or None
