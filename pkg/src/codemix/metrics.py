"""Code-mixing index (CMI), corpus statistics and token-level evaluation.

Per-sentence CMI is 100 * (1 - max_lang / (n - u)) where n is the token
count, u the count of language-independent (OTHER) tokens and max_lang
the largest per-language count; a sentence with no language tokens
scores 0. The corpus report aggregates the unweighted mean over all
sentences (monolingual ones included), a 10-bin histogram over [0, 100]
and the monolingual fraction.

Reports render as key-value text with fixed key names; reals use
4-decimal fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AlignmentMismatchError
from .labels import LABELS, LANGUAGE_LABELS, OTHER
from .validation import check_labels_present

OTHER_INDEPENDENT = "independent"  # OTHER tokens count toward u
OTHER_EXCLUDE = "exclude"  # OTHER tokens are dropped from n entirely

_HIST_BINS = 10


def cmi_sentence(labels: Sequence[str], other_mode: str = OTHER_INDEPENDENT) -> float:
    """CMI of one sentence's label sequence, in [0, 100].

    The two OTHER conventions give identical values (the denominator
    n - u is the language-token count either way); both are kept so the
    bookkeeping matches whichever convention a reader assumes.
    """
    check_labels_present(labels)
    counts = {lang: 0 for lang in LANGUAGE_LABELS}
    n_lang = 0
    for label in labels:
        if label != OTHER:
            counts[label] += 1
            n_lang += 1
    if other_mode == OTHER_INDEPENDENT:
        n = len(labels)
        u = n - n_lang
    elif other_mode == OTHER_EXCLUDE:
        n = n_lang
        u = 0
    else:
        raise ValueError(f"unknown OTHER mode {other_mode!r}")
    if n == u:
        return 0.0
    return 100.0 * (1.0 - max(counts.values()) / (n - u))


@dataclass
class CmiReport:
    sentence_count: int = 0
    mean_cmi: float = 0.0
    histogram: list[int] = field(default_factory=lambda: [0] * _HIST_BINS)
    monolingual_fraction: float = 0.0


def cmi_corpus(
    label_seqs: Iterable[Sequence[str]], other_mode: str = OTHER_INDEPENDENT
) -> CmiReport:
    """Aggregate per-sentence CMI over a corpus of label sequences."""
    report = CmiReport()
    total = 0.0
    monolingual = 0
    for labels in label_seqs:
        value = cmi_sentence(labels, other_mode)
        report.sentence_count += 1
        total += value
        if value == 0.0:
            monolingual += 1
        bin_idx = min(int(value // (100 // _HIST_BINS)), _HIST_BINS - 1)
        report.histogram[bin_idx] += 1
    if report.sentence_count:
        report.mean_cmi = total / report.sentence_count
        report.monolingual_fraction = monolingual / report.sentence_count
    return report


@dataclass
class CorpusStats:
    sentences: int = 0
    tokens: int = 0
    label_counts: dict[str, int] = field(
        default_factory=lambda: {label: 0 for label in LABELS}
    )

    @property
    def mean_tokens_per_sentence(self) -> float:
        return self.tokens / self.sentences if self.sentences else 0.0

    def add(self, other: "CorpusStats") -> "CorpusStats":
        merged = CorpusStats(
            sentences=self.sentences + other.sentences,
            tokens=self.tokens + other.tokens,
            label_counts={
                label: self.label_counts[label] + other.label_counts[label]
                for label in LABELS
            },
        )
        return merged


def corpus_stats(sentences: Iterable[Sequence[tuple[str, str]]]) -> CorpusStats:
    """Sentence/token totals and per-label counts of a labeled corpus."""
    stats = CorpusStats()
    for sent in sentences:
        stats.sentences += 1
        for _, label in sent:
            check_labels_present((label,))
            stats.tokens += 1
            stats.label_counts[label] += 1
    return stats


@dataclass
class LabelScores:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class EvalReport:
    token_count: int
    accuracy: float
    per_label: dict[str, LabelScores]
    macro_f1: float
    weighted_f1: float
    confusion: list[list[int]]  # confusion[gold][predicted], label order EN/HI/OTHER


def evaluate_lid(
    gold: Sequence[Sequence[tuple[str, str]]],
    predicted: Sequence[Sequence[tuple[str, str]]],
) -> EvalReport:
    """Token-level accuracy, per-label P/R/F1, macro and weighted F1.

    Gold and predicted corpora must share the tokenization exactly;
    a sentence-count, length or token-text mismatch is an error. A
    label with no gold or predicted occurrences scores 0 where its
    denominator vanishes, and macro F1 always averages all three labels.
    """
    if len(gold) != len(predicted):
        raise AlignmentMismatchError(
            "corpus", f"{len(gold)} gold vs {len(predicted)} predicted sentences"
        )
    n_labels = len(LABELS)
    index = {label: i for i, label in enumerate(LABELS)}
    confusion = [[0] * n_labels for _ in range(n_labels)]
    for sent_id, (gsent, psent) in enumerate(zip(gold, predicted)):
        if len(gsent) != len(psent):
            raise AlignmentMismatchError(sent_id, f"{len(gsent)} vs {len(psent)} tokens")
        for (gtok, glab), (ptok, plab) in zip(gsent, psent):
            if gtok != ptok:
                raise AlignmentMismatchError(sent_id, f"token {gtok!r} vs {ptok!r}")
            check_labels_present((glab, plab))
            confusion[index[glab]][index[plab]] += 1

    total = sum(sum(row) for row in confusion)
    correct = sum(confusion[i][i] for i in range(n_labels))
    per_label: dict[str, LabelScores] = {}
    weighted_sum = 0.0
    for i, label in enumerate(LABELS):
        tp = confusion[i][i]
        support = sum(confusion[i])
        predicted_count = sum(confusion[g][i] for g in range(n_labels))
        precision = tp / predicted_count if predicted_count else 0.0
        recall = tp / support if support else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall
            else 0.0
        )
        per_label[label] = LabelScores(precision, recall, f1, support)
        weighted_sum += f1 * support
    macro_f1 = sum(scores.f1 for scores in per_label.values()) / n_labels
    return EvalReport(
        token_count=total,
        accuracy=correct / total if total else 0.0,
        per_label=per_label,
        macro_f1=macro_f1,
        weighted_f1=weighted_sum / total if total else 0.0,
        confusion=confusion,
    )


# -- report rendering ------------------------------------------------------


def format_cmi_report(report: CmiReport) -> str:
    lines = [
        f"sentence_count: {report.sentence_count}",
        f"mean_cmi: {report.mean_cmi:.4f}",
        f"monolingual_fraction: {report.monolingual_fraction:.4f}",
    ]
    if report.sentence_count == 0:
        lines.append("empty: true")
    for i, count in enumerate(report.histogram):
        lo, hi = i * 10, (i + 1) * 10
        lines.append(f"hist_{lo}_{hi}: {count}")
    return "\n".join(lines)


def format_corpus_stats(stats: CorpusStats) -> str:
    lines = [
        f"sentences: {stats.sentences}",
        f"tokens: {stats.tokens}",
    ]
    for label in LABELS:
        lines.append(f"tokens_{label.lower()}: {stats.label_counts[label]}")
    lines.append(f"mean_tokens_per_sentence: {stats.mean_tokens_per_sentence:.4f}")
    return "\n".join(lines)


def format_eval_report(report: EvalReport) -> str:
    lines = [
        f"token_count: {report.token_count}",
        f"accuracy: {report.accuracy:.4f}",
    ]
    for label in LABELS:
        scores = report.per_label[label]
        key = label.lower()
        lines.append(f"precision_{key}: {scores.precision:.4f}")
        lines.append(f"recall_{key}: {scores.recall:.4f}")
        lines.append(f"f1_{key}: {scores.f1:.4f}")
        lines.append(f"support_{key}: {scores.support}")
    lines.append(f"macro_f1: {report.macro_f1:.4f}")
    lines.append(f"weighted_f1: {report.weighted_f1:.4f}")
    # Percent-scale headline numbers, as benchmark tables report them.
    lines.append(f"accuracy_pct: {100 * report.accuracy:.2f}")
    lines.append(f"weighted_f1_pct: {100 * report.weighted_f1:.2f}")
    for g, glabel in enumerate(LABELS):
        for p, plabel in enumerate(LABELS):
            lines.append(
                f"confusion_{glabel.lower()}_{plabel.lower()}: {report.confusion[g][p]}"
            )
    return "\n".join(lines)
