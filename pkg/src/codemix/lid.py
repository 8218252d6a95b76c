"""Trainable word-level language identifier.

Hashed character n-gram softmax regression over the EN/HI/OTHER
alphabet, in the scikit-learn estimator idiom: hyperparameters are
constructor arguments, learned state lives in trailing-underscore
attributes, and fit() returns self. A token's class scores are the
mean of the weight rows at its feature indices plus a bias; training
is sequential SGD over per-token examples with a linearly decaying
learning rate, which keeps results bit-reproducible for a fixed seed.

Only word tokens are ever classified: punctuation, emoji and number
tokens are labeled OTHER by rule with confidence 1.0.

Model files are a fixed binary format (magic "CMLM", version 1, feature
config, label names, float32 bias and weight table, trailing CRC32); a
save/load round trip reproduces predictions bit for bit.
"""

from __future__ import annotations

import random
import struct
import zlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ChecksumMismatch,
    EmptyCorpusError,
    FormatVersionMismatch,
    LabelError,
    ModelFormatError,
)
from .features import FeatureConfig, base_feature_indices, context_feature_indices
from .labels import LABEL_INDEX, LABELS, OTHER
from .tokenizer import WORD, Token, TokenizedSentence, token_kind
from .validation import check_is_fitted, check_sequences_aligned

_MAGIC = b"CMLM"
_VERSION = 1
_FLAG_WORD_FEATURE = 0x01

# Per-word-type feature index cache bound (word types, not tokens).
_BASE_CACHE_MAX = 1 << 19


@dataclass(frozen=True)
class TrainParams:
    """SGD hyperparameters; the learning rate decays linearly to zero."""

    epochs: int = 5
    learning_rate: float = 0.1
    l2: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.l2 < 0:
            raise ValueError(f"l2 must be >= 0, got {self.l2}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "l2": self.l2,
            "seed": self.seed,
        }


def _softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max()
    exp = np.exp(shifted)
    return exp / exp.sum()


def _example_probs(
    weights: np.ndarray, bias: np.ndarray, uniq: np.ndarray, frac: np.ndarray
) -> np.ndarray:
    scores = frac @ weights[uniq].astype(np.float64) + bias.astype(np.float64)
    return _softmax(scores)


def _compress(idxs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unique rows and their multiset fractions (frac sums to 1)."""
    uniq, counts = np.unique(idxs, return_counts=True)
    return uniq, counts / idxs.size


def loss_and_gradient(
    weights: np.ndarray,
    bias: np.ndarray,
    examples: Sequence[tuple[np.ndarray, int]],
) -> tuple[float, dict[int, np.ndarray], np.ndarray]:
    """Mean cross-entropy over a batch and its sparse analytic gradient.

    Data term only (no L2), accumulated in double precision, so central
    finite differences of the returned loss check the gradient directly.
    Returns (loss, {row index: d loss / d weights[row]}, d loss / d bias).
    """
    if not examples:
        raise ValueError("batch must be non-empty")
    n_labels = bias.shape[0]
    total = 0.0
    grad_rows: dict[int, np.ndarray] = {}
    grad_bias = np.zeros(n_labels, dtype=np.float64)
    for idxs, label_idx in examples:
        uniq, frac = _compress(np.asarray(idxs, dtype=np.int64))
        probs = _example_probs(weights, bias, uniq, frac)
        total -= float(np.log(probs[label_idx]))
        err = probs.copy()
        err[label_idx] -= 1.0
        grad_bias += err
        for row, f in zip(uniq, frac):
            acc = grad_rows.setdefault(int(row), np.zeros(n_labels, dtype=np.float64))
            acc += f * err
    n = len(examples)
    for row in grad_rows:
        grad_rows[row] /= n
    return total / n, grad_rows, grad_bias / n


class LidClassifier:
    """Word-level EN/HI/OTHER classifier with a fit/predict interface.

    X is a sequence of sentences, each a sequence of token texts; y the
    matching label sequences. Non-word tokens in X are skipped during
    fitting and rule-labeled OTHER during prediction.
    """

    def __init__(
        self,
        ngram_min: int = 1,
        ngram_max: int = 4,
        hash_dim: int = 2**20,
        use_word_feature: bool = True,
        context_window: int = 1,
        epochs: int = 5,
        learning_rate: float = 0.1,
        l2: float = 1e-6,
        seed: int = 0,
    ):
        self.ngram_min = ngram_min
        self.ngram_max = ngram_max
        self.hash_dim = hash_dim
        self.use_word_feature = use_word_feature
        self.context_window = context_window
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.l2 = l2
        self.seed = seed
        self.weights_: np.ndarray | None = None
        self.bias_: np.ndarray | None = None
        self.classes_ = LABELS
        self.trained_on_: dict | None = None
        self._base_cache: dict[str, np.ndarray] = {}

    # -- scikit-learn plumbing -------------------------------------------

    _PARAM_NAMES = (
        "ngram_min",
        "ngram_max",
        "hash_dim",
        "use_word_feature",
        "context_window",
        "epochs",
        "learning_rate",
        "l2",
        "seed",
    )

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._PARAM_NAMES}

    def set_params(self, **params) -> "LidClassifier":
        for name, value in params.items():
            if name not in self._PARAM_NAMES:
                raise ValueError(f"unknown parameter {name!r}")
            setattr(self, name, value)
        self._base_cache = {}
        return self

    @classmethod
    def from_config(cls, features: FeatureConfig, params: TrainParams) -> "LidClassifier":
        return cls(**features.to_dict(), **params.to_dict())

    @property
    def feature_config(self) -> FeatureConfig:
        return FeatureConfig(
            ngram_min=self.ngram_min,
            ngram_max=self.ngram_max,
            hash_dim=self.hash_dim,
            use_word_feature=self.use_word_feature,
            context_window=self.context_window,
        )

    @property
    def train_params(self) -> TrainParams:
        return TrainParams(
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            l2=self.l2,
            seed=self.seed,
        )

    # -- feature plumbing -------------------------------------------------

    def _token_indices(self, text: str, left: str | None, right: str | None) -> np.ndarray:
        """Same multiset as hashed_features, with the per-word-type part cached."""
        word = text.lower()
        base = self._base_cache.get(word)
        if base is None:
            base = base_feature_indices(word, self.feature_config)
            if len(self._base_cache) < _BASE_CACHE_MAX:
                self._base_cache[word] = base
        context = context_feature_indices(left, right, self.feature_config)
        if not context:
            return base
        return np.concatenate([base, np.asarray(context, dtype=np.int64)])

    def _word_positions(
        self, texts: Sequence[str]
    ) -> list[tuple[int, np.ndarray]]:
        """(position, feature index multiset) for each word token."""
        encoded = []
        for i, text in enumerate(texts):
            if token_kind(text) != WORD:
                continue
            left = texts[i - 1] if i > 0 else None
            right = texts[i + 1] if i + 1 < len(texts) else None
            encoded.append((i, self._token_indices(text, left, right)))
        return encoded

    # -- training ----------------------------------------------------------

    def fit(self, X: Sequence[Sequence[str]], y: Sequence[Sequence[str]]) -> "LidClassifier":
        """Fit by sequential SGD over per-token examples.

        Deterministic for fixed (X, y, params): examples are shuffled
        each epoch by a seeded RNG, the learning rate decays linearly to
        zero over all steps, and the L2 penalty is applied lazily to the
        weight rows each example touches (the bias is not regularized).
        """
        params = self.train_params  # validates
        config = self.feature_config
        check_sequences_aligned(X, y)
        self._base_cache = {}  # params may have changed since the last fit

        examples: list[tuple[np.ndarray, np.ndarray, int]] = []
        n_tokens = 0
        for texts, labels in zip(X, y):
            for label in labels:
                if label not in LABEL_INDEX:
                    raise LabelError(label)
            n_tokens += len(labels)
            for i, idxs in self._word_positions(texts):
                uniq, frac = _compress(idxs)
                examples.append((uniq, frac, LABEL_INDEX[labels[i]]))
        if not examples:
            raise EmptyCorpusError("no word tokens to train on")

        n_labels = len(LABELS)
        weights = np.zeros((config.hash_dim, n_labels), dtype=np.float32)
        bias = np.zeros(n_labels, dtype=np.float32)
        initial_loss = self._mean_loss(weights, bias, examples)

        rng = random.Random(params.seed)
        order = list(range(len(examples)))
        total_steps = params.epochs * len(examples)
        step = 0
        epoch_losses = []
        for _ in range(params.epochs):
            rng.shuffle(order)
            epoch_loss = 0.0
            for j in order:
                uniq, frac, label_idx = examples[j]
                lr = params.learning_rate * (1.0 - step / total_steps)
                probs = _example_probs(weights, bias, uniq, frac)
                epoch_loss -= float(np.log(probs[label_idx]))
                err = probs
                err[label_idx] -= 1.0
                rows = weights[uniq].astype(np.float64)
                rows -= lr * (np.outer(frac, err) + params.l2 * rows)
                weights[uniq] = rows.astype(np.float32)
                bias = (bias.astype(np.float64) - lr * err).astype(np.float32)
                step += 1
            epoch_losses.append(epoch_loss / len(examples))

        self.weights_ = weights
        self.bias_ = bias
        self.trained_on_ = {
            "sentences": len(X),
            "tokens": n_tokens,
            "word_examples": len(examples),
            "epochs": params.epochs,
            "seed": params.seed,
            "initial_loss": initial_loss,
            "epoch_losses": epoch_losses,
            "final_loss": self._mean_loss(weights, bias, examples),
        }
        return self

    @staticmethod
    def _mean_loss(
        weights: np.ndarray,
        bias: np.ndarray,
        examples: Sequence[tuple[np.ndarray, np.ndarray, int]],
    ) -> float:
        total = 0.0
        for uniq, frac, label_idx in examples:
            probs = _example_probs(weights, bias, uniq, frac)
            total -= float(np.log(probs[label_idx]))
        return total / len(examples)

    def loss_and_gradient(
        self, examples: Sequence[tuple[np.ndarray, int]]
    ) -> tuple[float, dict[int, np.ndarray], np.ndarray]:
        check_is_fitted(self)
        return loss_and_gradient(self.weights_, self.bias_, examples)

    # -- inference ----------------------------------------------------------

    def _probs_for_indices(self, idxs: np.ndarray) -> np.ndarray:
        rows = self.weights_[idxs]
        scores = rows.mean(axis=0, dtype=np.float64) + self.bias_.astype(np.float64)
        return _softmax(scores)

    def predict_token(
        self, text: str, left: str | None = None, right: str | None = None
    ) -> tuple[str, np.ndarray]:
        """Label and full probability vector for one word token."""
        check_is_fitted(self)
        probs = self._probs_for_indices(self._token_indices(text, left, right))
        return self.classes_[int(np.argmax(probs))], probs

    def _predict_word(
        self, text: str, left: str | None, right: str | None
    ) -> tuple[str, float]:
        probs = self._probs_for_indices(self._token_indices(text, left, right))
        return self.classes_[int(np.argmax(probs))], float(probs.max())

    def predict(self, X: Sequence[Sequence[str]]) -> list[list[str]]:
        """Label sequences for sentences of token texts (rule + model)."""
        check_is_fitted(self)
        out = []
        for texts in X:
            labels = [OTHER] * len(texts)
            for i, idxs in self._word_positions(texts):
                probs = self._probs_for_indices(idxs)
                labels[i] = self.classes_[int(np.argmax(probs))]
            out.append(labels)
        return out

    def predict_proba(self, X: Sequence[Sequence[str]]) -> list[np.ndarray]:
        """Per-token probability rows; rule tokens get a OTHER one-hot."""
        check_is_fitted(self)
        out = []
        for texts in X:
            probs = np.zeros((len(texts), len(self.classes_)), dtype=np.float64)
            probs[:, LABEL_INDEX[OTHER]] = 1.0
            for i, idxs in self._word_positions(texts):
                probs[i] = self._probs_for_indices(idxs)
            out.append(probs)
        return out

    def score(self, X: Sequence[Sequence[str]], y: Sequence[Sequence[str]]) -> float:
        """Token-level accuracy."""
        check_sequences_aligned(X, y)
        predicted = self.predict(X)
        correct = total = 0
        for pred, gold in zip(predicted, y):
            total += len(gold)
            correct += sum(p == g for p, g in zip(pred, gold))
        return correct / total if total else 0.0

    # -- serialization -------------------------------------------------------

    def save(self, path) -> None:
        check_is_fitted(self)
        if not (np.isfinite(self.weights_).all() and np.isfinite(self.bias_).all()):
            raise ValueError("refusing to save a model with non-finite weights")
        flags = _FLAG_WORD_FEATURE if self.use_word_feature else 0
        header = _MAGIC + struct.pack(
            "<HBBIBB",
            _VERSION,
            self.ngram_min,
            self.ngram_max,
            self.hash_dim,
            flags,
            self.context_window,
        )
        header += struct.pack("<B", len(self.classes_))
        for name in self.classes_:
            header += name.encode("utf-8") + b"\x00"
        body = (
            header
            + self.bias_.astype("<f4").tobytes()
            + self.weights_.astype("<f4").tobytes()
        )
        payload = body + struct.pack("<I", zlib.crc32(body))
        with open(path, "wb") as fh:
            fh.write(payload)

    @classmethod
    def load(cls, path) -> "LidClassifier":
        with open(path, "rb") as fh:
            data = fh.read()
        if len(data) < len(_MAGIC) + 2 + 4:
            raise ChecksumMismatch(f"{path}: file too short")
        if data[:4] != _MAGIC:
            raise FormatVersionMismatch(f"{path}: bad magic bytes")
        (version,) = struct.unpack_from("<H", data, 4)
        if version != _VERSION:
            raise FormatVersionMismatch(f"{path}: unsupported version {version}")
        (stored_crc,) = struct.unpack_from("<I", data, len(data) - 4)
        if zlib.crc32(data[:-4]) != stored_crc:
            raise ChecksumMismatch(f"{path}: CRC32 mismatch")
        ngram_min, ngram_max, hash_dim, flags, context_window = struct.unpack_from(
            "<BBIBB", data, 6
        )
        offset = 6 + 8
        (n_labels,) = struct.unpack_from("<B", data, offset)
        offset += 1
        names = []
        for _ in range(n_labels):
            nul = data.index(b"\x00", offset)
            names.append(data[offset:nul].decode("utf-8"))
            offset = nul + 1
        bias_bytes = 4 * n_labels
        weight_bytes = 4 * hash_dim * n_labels
        if len(data) != offset + bias_bytes + weight_bytes + 4:
            raise ChecksumMismatch(f"{path}: size does not match header")
        bias = np.frombuffer(data, dtype="<f4", count=n_labels, offset=offset).copy()
        weights = (
            np.frombuffer(data, dtype="<f4", count=hash_dim * n_labels, offset=offset + bias_bytes)
            .reshape(hash_dim, n_labels)
            .copy()
        )
        if not (np.isfinite(weights).all() and np.isfinite(bias).all()):
            raise ModelFormatError(f"{path}: non-finite weights")
        model = cls(
            ngram_min=ngram_min,
            ngram_max=ngram_max,
            hash_dim=hash_dim,
            use_word_feature=bool(flags & _FLAG_WORD_FEATURE),
            context_window=context_window,
        )
        model.classes_ = tuple(names)
        model.weights_ = weights
        model.bias_ = bias
        return model


def predict_sentence(model: LidClassifier, sent: TokenizedSentence) -> TokenizedSentence:
    """Label every token: classifier for words, OTHER rule for the rest."""
    texts = [tok.text for tok in sent.tokens]
    labeled: list[Token] = []
    for i, tok in enumerate(sent.tokens):
        if tok.kind == WORD:
            left = texts[i - 1] if i > 0 else None
            right = texts[i + 1] if i + 1 < len(texts) else None
            label, confidence = model._predict_word(tok.text, left, right)
            labeled.append(tok.with_label(label, confidence))
        else:
            labeled.append(tok.with_label(OTHER, 1.0))
    return TokenizedSentence(sent.raw, labeled)


def train(
    sentences: Iterable[Sequence[tuple[str, str]]],
    features: FeatureConfig | None = None,
    params: TrainParams | None = None,
) -> LidClassifier:
    """Fit a classifier from (token, label) sentences."""
    model = LidClassifier.from_config(features or FeatureConfig(), params or TrainParams())
    X, y = [], []
    for sent in sentences:
        X.append([text for text, _ in sent])
        y.append([label for _, label in sent])
    return model.fit(X, y)
