"""Semi-supervised bootstrap loop around the word-level classifier.

Each round: pseudo-label unlabeled text with the current model, accept
sentences whose word tokens are all confidently labeled, queue the
low-confidence tokens for human review, merge the resolved corrections
back, retrain. The state directory persists everything between rounds:

    state.json      manifest (iteration, threshold, file names, id counter,
                    feature/train configuration)
    model.bin       current classifier
    seed.conll      human-labeled seed corpus (never mutated)
    accepted.conll  auto-accepted pseudo-labeled sentences
    held.conll      held-back sentences with predicted labels, ids in the
                    manifest aligned with file order
    queue.tsv       review queue (sentence_id, token_index, token_text,
                    predicted, confidence, corrected, status)
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import conll
from .conll import LabeledSentence
from .errors import CorruptStateError, PendingItemsRemainError
from .features import FeatureConfig
from .labels import HI
from .lid import LidClassifier, TrainParams, predict_sentence
from .normalize import DEFAULT_POLICY, NormalizePolicy, normalize_sentence
from .tokenizer import WORD, token_kind, tokenize
from .validation import check_label, check_threshold

STATUS_PENDING = "Pending"
STATUS_CORRECTED = "Corrected"
STATUS_CONFIRMED = "Confirmed"

_QUEUE_HEADER = [
    "sentence_id",
    "token_index",
    "token_text",
    "predicted",
    "confidence",
    "corrected",
    "status",
]


@dataclass
class ReviewItem:
    sentence_id: str
    token_index: int
    token_text: str
    predicted: str
    confidence: float
    corrected: str | None = None
    status: str = STATUS_PENDING

    def resolve(self, label: str | None = None) -> None:
        """Correct to a label, or confirm the prediction when label is None."""
        if label is None or label == self.predicted:
            self.corrected = None
            self.status = STATUS_CONFIRMED
        else:
            self.corrected = check_label(label)
            self.status = STATUS_CORRECTED


def pseudo_label(
    model: LidClassifier,
    lines: Iterable[str],
    threshold: float = 0.9,
    policy: NormalizePolicy = DEFAULT_POLICY,
    id_start: int = 0,
) -> tuple[list[LabeledSentence], list[tuple[str, LabeledSentence]], list[ReviewItem]]:
    """Label raw lines and split them into accepted / held-back.

    A sentence is accepted when every word token's confidence reaches
    the threshold; otherwise each sub-threshold word token becomes a
    review item and the sentence is held back. Lines that normalize to
    nothing are dropped. Returns (accepted, held, queue) where held
    entries carry ids "s<N>" counted from id_start.
    """
    check_threshold(threshold)
    accepted: list[LabeledSentence] = []
    held: list[tuple[str, LabeledSentence]] = []
    queue: list[ReviewItem] = []
    next_id = id_start
    for line in lines:
        normalized = normalize_sentence(line, policy)
        if normalized is None:
            continue
        labeled = predict_sentence(model, tokenize(normalized))
        if not labeled.tokens:
            continue
        sent = [(tok.text, tok.label) for tok in labeled.tokens]
        low = [
            (i, tok)
            for i, tok in enumerate(labeled.tokens)
            if tok.kind == WORD and tok.confidence < threshold
        ]
        sid = f"s{next_id}"
        next_id += 1
        if not low:
            accepted.append(sent)
        else:
            held.append((sid, sent))
            for i, tok in low:
                queue.append(
                    ReviewItem(sid, i, tok.text, tok.label, tok.confidence)
                )
    return accepted, held, queue


def merge_corrections(
    held: Sequence[tuple[str, LabeledSentence]], queue: Sequence[ReviewItem]
) -> list[LabeledSentence]:
    """Apply resolved review decisions to the held-back sentences.

    Corrected labels overwrite the prediction; confirmed items keep it.
    Raises if any item is still pending.
    """
    pending = sum(1 for item in queue if item.status == STATUS_PENDING)
    if pending:
        raise PendingItemsRemainError(pending)
    by_sentence: dict[str, list[ReviewItem]] = {}
    for item in queue:
        by_sentence.setdefault(item.sentence_id, []).append(item)
    merged: list[LabeledSentence] = []
    for sid, sent in held:
        tokens = list(sent)
        for item in by_sentence.get(sid, ()):
            if item.status == STATUS_CORRECTED:
                text, _ = tokens[item.token_index]
                tokens[item.token_index] = (text, item.corrected)
        merged.append(tokens)
    return merged


def propose_keywords(
    sentences: Iterable[LabeledSentence],
    known_vocab: Iterable[str],
    min_freq: int = 1,
) -> list[tuple[str, int]]:
    """New HI word types worth adding to the scrape vocabulary.

    Counts lowercased HI-labeled word tokens, drops types already in the
    vocabulary or below min_freq, ranks by frequency descending with
    lexicographic tie-break.
    """
    if min_freq < 1:
        raise ValueError("min_freq must be >= 1")
    known = {w.lower() for w in known_vocab}
    counts: Counter[str] = Counter()
    for sent in sentences:
        for text, label in sent:
            if label == HI and token_kind(text) == WORD:
                counts[text.lower()] += 1
    ranked = [
        (word, freq)
        for word, freq in counts.items()
        if freq >= min_freq and word not in known
    ]
    ranked.sort(key=lambda pair: (-pair[1], pair[0]))
    return ranked


# -- persistent state --------------------------------------------------------


class BootstrapState:
    """On-disk state of the loop; see the module docstring for layout."""

    MANIFEST = "state.json"
    MODEL = "model.bin"
    SEED = "seed.conll"
    ACCEPTED = "accepted.conll"
    HELD = "held.conll"
    QUEUE = "queue.tsv"

    def __init__(self, directory: Path):
        self.directory = Path(directory)
        self.iteration = 0
        self.threshold = 0.9
        self.next_sentence_id = 0
        self.seed_set: list[LabeledSentence] = []
        self.accepted: list[LabeledSentence] = []
        self.held: list[tuple[str, LabeledSentence]] = []
        self.queue: list[ReviewItem] = []
        self.feature_config = FeatureConfig()
        self.train_params = TrainParams()

    @property
    def model_path(self) -> Path:
        return self.directory / self.MODEL

    @classmethod
    def init(
        cls,
        directory,
        seed_corpus: Sequence[LabeledSentence],
        threshold: float = 0.9,
        feature_config: FeatureConfig | None = None,
        train_params: TrainParams | None = None,
    ) -> "BootstrapState":
        check_threshold(threshold)
        state = cls(Path(directory))
        state.directory.mkdir(parents=True, exist_ok=True)
        state.threshold = threshold
        state.seed_set = [list(sent) for sent in seed_corpus]
        if feature_config is not None:
            state.feature_config = feature_config
        if train_params is not None:
            state.train_params = train_params
        state.save()
        return state

    @classmethod
    def load(cls, directory) -> "BootstrapState":
        directory = Path(directory)
        manifest_path = directory / cls.MANIFEST
        if not manifest_path.exists():
            raise CorruptStateError(f"{manifest_path} does not exist")
        try:
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CorruptStateError(f"{manifest_path}: {exc}") from exc
        state = cls(directory)
        try:
            state.iteration = manifest["iteration"]
            state.threshold = manifest["threshold"]
            state.next_sentence_id = manifest["next_sentence_id"]
            held_ids = manifest["held_ids"]
            state.feature_config = FeatureConfig(**manifest["feature_config"])
            state.train_params = TrainParams(**manifest["train_params"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptStateError(f"{manifest_path}: {exc}") from exc
        state.seed_set = conll.read_labeled(directory / cls.SEED)
        state.accepted = (
            conll.read_labeled(directory / cls.ACCEPTED)
            if (directory / cls.ACCEPTED).exists()
            else []
        )
        held_sents = (
            conll.read_labeled(directory / cls.HELD)
            if (directory / cls.HELD).exists()
            else []
        )
        if len(held_ids) != len(held_sents):
            raise CorruptStateError(
                f"{directory}: {len(held_ids)} held ids but {len(held_sents)} held sentences"
            )
        state.held = list(zip(held_ids, held_sents))
        state.queue = read_queue(directory / cls.QUEUE)
        return state

    def save(self) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        conll.write_labeled(self.directory / self.SEED, self.seed_set)
        conll.write_labeled(self.directory / self.ACCEPTED, self.accepted)
        conll.write_labeled(self.directory / self.HELD, [s for _, s in self.held])
        write_queue(self.directory / self.QUEUE, self.queue)
        manifest = {
            "version": 1,
            "iteration": self.iteration,
            "threshold": self.threshold,
            "next_sentence_id": self.next_sentence_id,
            "model": self.MODEL,
            "seed_corpus": self.SEED,
            "accepted": self.ACCEPTED,
            "held": self.HELD,
            "queue": self.QUEUE,
            "held_ids": [sid for sid, _ in self.held],
            "feature_config": self.feature_config.to_dict(),
            "train_params": self.train_params.to_dict(),
        }
        _atomic_write_text(
            self.directory / self.MANIFEST, json.dumps(manifest, indent=2) + "\n"
        )


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def read_queue(path) -> list[ReviewItem]:
    path = Path(path)
    if not path.exists():
        return []
    items: list[ReviewItem] = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header and header.split("\t") != _QUEUE_HEADER:
            raise CorruptStateError(f"{path}: unexpected queue header {header!r}")
        for line_no, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != len(_QUEUE_HEADER):
                raise CorruptStateError(f"{path}:{line_no}: expected 7 columns")
            sid, idx, text, predicted, conf, corrected, status = parts
            if status not in (STATUS_PENDING, STATUS_CORRECTED, STATUS_CONFIRMED):
                raise CorruptStateError(f"{path}:{line_no}: bad status {status!r}")
            items.append(
                ReviewItem(
                    sentence_id=sid,
                    token_index=int(idx),
                    token_text=text,
                    predicted=predicted,
                    confidence=float(conf),
                    corrected=corrected or None,
                    status=status,
                )
            )
    return items


def write_queue(path, items: Sequence[ReviewItem]) -> None:
    lines = ["\t".join(_QUEUE_HEADER)]
    for item in items:
        lines.append(
            "\t".join(
                [
                    item.sentence_id,
                    str(item.token_index),
                    item.token_text,
                    item.predicted,
                    f"{item.confidence:.6f}",
                    item.corrected or "",
                    item.status,
                ]
            )
        )
    _atomic_write_text(Path(path), "\n".join(lines) + "\n")


def bootstrap_round(
    state: BootstrapState,
    feature_config: FeatureConfig | None = None,
    train_params: TrainParams | None = None,
) -> LidClassifier:
    """One training round: merge resolved corrections, retrain, persist.

    Trains on seed + accepted + merged corrections, moves the merged
    sentences into the accepted pool, clears the queue, increments the
    iteration and writes the new model. The queue must be resolved (or
    empty). The seed set is never modified.
    """
    if feature_config is not None:
        state.feature_config = feature_config
    if train_params is not None:
        state.train_params = train_params
    merged = merge_corrections(state.held, state.queue)
    training = state.seed_set + state.accepted + merged
    model = LidClassifier.from_config(state.feature_config, state.train_params)
    X, y = conll.to_xy(training)
    model.fit(X, y)
    state.accepted.extend(merged)
    state.held = []
    state.queue = []
    state.iteration += 1
    model.save(state.model_path)
    state.save()
    return model


def run_round(
    state: BootstrapState,
    unlabeled: Iterable[str] | None = None,
    policy: NormalizePolicy = DEFAULT_POLICY,
    feature_config: FeatureConfig | None = None,
    train_params: TrainParams | None = None,
) -> LidClassifier:
    """Full round driver: retrain, then pseudo-label a new batch.

    With unlabeled text the freshly trained model labels it and the
    state picks up the newly accepted sentences and review queue.
    """
    model = bootstrap_round(state, feature_config, train_params)
    if unlabeled is not None:
        accepted, held, queue = pseudo_label(
            model,
            unlabeled,
            threshold=state.threshold,
            policy=policy,
            id_start=state.next_sentence_id,
        )
        state.accepted.extend(accepted)
        state.held = held
        state.queue = queue
        state.next_sentence_id += len(accepted) + len(held)
        state.save()
    return model
