"""Input-validation helpers shared by the estimator and pipeline stages."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import LabelError, NotFittedError
from .labels import LABELS


def check_is_fitted(estimator, attributes: Sequence[str] = ("weights_", "bias_")) -> None:
    for attr in attributes:
        if getattr(estimator, attr, None) is None:
            raise NotFittedError(
                f"{type(estimator).__name__} is not fitted; call fit() or load() first"
            )


def check_label(label: object, token: str | None = None) -> str:
    if label not in LABELS:
        raise LabelError(label, token)
    return label  # type: ignore[return-value]


def check_sequences_aligned(X: Sequence, y: Sequence) -> None:
    if len(X) != len(y):
        raise ValueError(f"X has {len(X)} sentences but y has {len(y)}")
    for i, (tokens, labels) in enumerate(zip(X, y)):
        if len(tokens) != len(labels):
            raise ValueError(
                f"sentence {i}: {len(tokens)} tokens but {len(labels)} labels"
            )


def check_fraction(value: float, name: str = "valid_fraction") -> float:
    if not 0.0 <= value < 1.0:
        raise ValueError(f"{name} must lie in [0, 1), got {value}")
    return value


def check_threshold(value: float) -> float:
    if not 0.0 < value <= 1.0:
        raise ValueError(f"threshold must lie in (0, 1], got {value}")
    return value


def check_labels_present(labels: Iterable[object]) -> None:
    for label in labels:
        if label not in LABELS:
            raise LabelError(label, token=None)
