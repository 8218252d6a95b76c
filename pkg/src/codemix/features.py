"""Hashed character n-gram features for the word-level classifier.

A token is lowercased and wrapped in boundary markers ("<word>"); every
character n-gram of the decorated form hashes into a fixed table, so
the model is bounded-memory and handles unseen words through their
subword pieces. Optional whole-word and neighbor-word features hash
into the same table under distinct tags. Collisions are additive and
unresolved. Hashing is CRC32-based and fully deterministic.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

BOW = "<"
EOW = ">"
# Sentinels for a missing left/right neighbor at the sentence edge.
BOS = "<s>"
EOS = "</s>"

_WORD_TAG = b"w\x00"
_LEFT_TAG = b"l\x00"
_RIGHT_TAG = b"r\x00"


@dataclass(frozen=True)
class FeatureConfig:
    """Feature-extraction hyperparameters.

    hash_dim must be a power of two (indices are masked) of at least
    2**10; n-gram orders run from ngram_min to ngram_max inclusive.
    """

    ngram_min: int = 1
    ngram_max: int = 4
    hash_dim: int = 2**20
    use_word_feature: bool = True
    context_window: int = 1

    def __post_init__(self):
        if not 1 <= self.ngram_min <= self.ngram_max <= 6:
            raise ValueError(
                f"need 1 <= ngram_min <= ngram_max <= 6, "
                f"got [{self.ngram_min}, {self.ngram_max}]"
            )
        if self.hash_dim < 2**10 or self.hash_dim & (self.hash_dim - 1):
            raise ValueError(f"hash_dim must be a power of two >= 1024, got {self.hash_dim}")
        if self.context_window < 0:
            raise ValueError("context_window must be >= 0")

    def to_dict(self) -> dict:
        return {
            "ngram_min": self.ngram_min,
            "ngram_max": self.ngram_max,
            "hash_dim": self.hash_dim,
            "use_word_feature": self.use_word_feature,
            "context_window": self.context_window,
        }


def char_ngrams(text: str, ngram_min: int, ngram_max: int) -> list[str]:
    """All character n-grams of "<text>", n in [ngram_min, ngram_max]."""
    decorated = BOW + text + EOW
    grams = []
    for n in range(ngram_min, ngram_max + 1):
        for i in range(len(decorated) - n + 1):
            grams.append(decorated[i : i + n])
    return grams


def base_feature_indices(word_lower: str, config: FeatureConfig) -> np.ndarray:
    """Indices of the n-gram (and whole-word) features of one token.

    Depends only on the lowercased token text, so callers may cache the
    result per word type.
    """
    mask = config.hash_dim - 1
    idxs = [
        zlib.crc32(g.encode("utf-8")) & mask
        for g in char_ngrams(word_lower, config.ngram_min, config.ngram_max)
    ]
    if config.use_word_feature:
        idxs.append(zlib.crc32(_WORD_TAG + word_lower.encode("utf-8")) & mask)
    return np.asarray(idxs, dtype=np.int64)


def context_feature_indices(
    left: str | None, right: str | None, config: FeatureConfig
) -> list[int]:
    """Indices of the tagged neighbor-word features (may be empty)."""
    if config.context_window < 1:
        return []
    mask = config.hash_dim - 1
    lw = left.lower() if left is not None else BOS
    rw = right.lower() if right is not None else EOS
    return [
        zlib.crc32(_LEFT_TAG + lw.encode("utf-8")) & mask,
        zlib.crc32(_RIGHT_TAG + rw.encode("utf-8")) & mask,
    ]


def hashed_features(
    text: str,
    left: str | None,
    right: str | None,
    config: FeatureConfig,
) -> np.ndarray:
    """Feature index multiset for one token, as an int64 array.

    Indices lie in [0, hash_dim); duplicates are kept (collisions and
    repeated grams both count with multiplicity).
    """
    base = base_feature_indices(text.lower(), config)
    context = context_feature_indices(left, right, config)
    if not context:
        return base
    return np.concatenate([base, np.asarray(context, dtype=np.int64)])
