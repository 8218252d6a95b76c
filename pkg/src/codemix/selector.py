"""Select code-mixed sentences by per-language word-token thresholds.

A sentence is kept when it has at least min_hi Hindi and min_en English
word tokens (defaults 2 and 2). Only word tokens count toward the
language thresholds; everything else lands in the OTHER bucket. The
streaming filter runs normalize -> tokenize -> predict -> decide per
line and reports per-reason rejection counts that reconcile exactly
with the total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import UnlabeledTokenError
from .labels import EN, HI
from .lid import LidClassifier, predict_sentence
from .normalize import DEFAULT_POLICY, NormalizePolicy, normalize_sentence
from .tokenizer import WORD, Token, tokenize


@dataclass(frozen=True)
class FilterConfig:
    min_hi: int = 2
    min_en: int = 2

    def __post_init__(self):
        if self.min_hi < 1 or self.min_en < 1:
            raise ValueError("min_hi and min_en must be >= 1")


@dataclass
class FilterDecision:
    hi_count: int
    en_count: int
    other_count: int
    accepted: bool

    @property
    def token_count(self) -> int:
        return self.hi_count + self.en_count + self.other_count


def classify_sentence(
    tokens: Sequence[Token], config: FilterConfig = FilterConfig()
) -> FilterDecision:
    """Count word-token languages and apply the acceptance rule.

    hi_count/en_count cover word tokens only; other_count absorbs
    OTHER-labeled words and all non-word tokens, so the three counts
    sum to the sentence's token count.
    """
    hi = en = other = 0
    for i, tok in enumerate(tokens):
        if tok.label is None:
            raise UnlabeledTokenError(i)
        if tok.kind == WORD and tok.label == HI:
            hi += 1
        elif tok.kind == WORD and tok.label == EN:
            en += 1
        else:
            other += 1
    accepted = hi >= config.min_hi and en >= config.min_en
    return FilterDecision(hi, en, other, accepted)


@dataclass
class FilterStats:
    total: int = 0
    accepted: int = 0
    rejected_low_hi: int = 0
    rejected_low_en: int = 0
    rejected_empty: int = 0

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "accepted": self.accepted,
            "rejected_low_hi": self.rejected_low_hi,
            "rejected_low_en": self.rejected_low_en,
            "rejected_empty": self.rejected_empty,
        }


class CorpusFilter:
    """Streaming normalize -> tokenize -> predict -> threshold pipeline.

    Rejection reasons partition: a sentence failing both thresholds
    counts as rejected_low_hi (the HI check runs first). Accepted lines
    are emitted in their normalized form, in input order.
    """

    def __init__(
        self,
        model: LidClassifier,
        config: FilterConfig = FilterConfig(),
        policy: NormalizePolicy = DEFAULT_POLICY,
    ):
        self.model = model
        self.config = config
        self.policy = policy
        self.stats = FilterStats()

    def decide(self, raw_line: str) -> tuple[str | None, FilterDecision | None]:
        """(normalized line, decision); (None, None) if nothing survives
        normalization."""
        normalized = normalize_sentence(raw_line, self.policy)
        if normalized is None:
            return None, None
        labeled = predict_sentence(self.model, tokenize(normalized))
        return normalized, classify_sentence(labeled.tokens, self.config)

    def run(self, lines: Iterable[str]) -> Iterator[str]:
        """Yield accepted normalized lines, updating self.stats."""
        for line in lines:
            self.stats.total += 1
            normalized, decision = self.decide(line)
            if decision is None:
                self.stats.rejected_empty += 1
            elif decision.accepted:
                self.stats.accepted += 1
                yield normalized
            elif decision.hi_count < self.config.min_hi:
                self.stats.rejected_low_hi += 1
            else:
                self.stats.rejected_low_en += 1


def filter_corpus(
    model: LidClassifier,
    lines: Iterable[str],
    config: FilterConfig = FilterConfig(),
    policy: NormalizePolicy = DEFAULT_POLICY,
) -> tuple[list[str], FilterStats]:
    """Materialized filter run: (accepted lines, stats)."""
    filt = CorpusFilter(model, config, policy)
    accepted = list(filt.run(lines))
    return accepted, filt.stats
