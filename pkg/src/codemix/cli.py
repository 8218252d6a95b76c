"""Command-line entry point: every pipeline stage as a subcommand.

Data flows through files (or stdout with --out omitted); diagnostics go
to stderr. Exit codes: 0 success, 1 usage error, 2 data error. The
global --seed flag (env CODEMIX_SEED) drives every randomized stage, so
fixed seeds reproduce outputs byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from . import bootstrap as bs
from . import conll, corpus_io, metrics
from .errors import CodemixError
from .features import FeatureConfig
from .lid import LidClassifier, TrainParams, predict_sentence
from .normalize import SCRIPT_MIXED, SCRIPT_ROMAN, NormalizePolicy, normalize_sentence
from .selector import CorpusFilter, FilterConfig
from .tokenizer import tokenize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """argparse with the documented usage exit code (1, not 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _policy_from(args) -> NormalizePolicy:
    return NormalizePolicy(
        script_mode=args.script,
        strip_mentions=args.strip_mentions,
        strip_urls=args.strip_urls,
        keep_emoji=args.keep_emoji,
    )


def _feature_config_from(args) -> FeatureConfig:
    return FeatureConfig(
        ngram_min=args.ngram_min,
        ngram_max=args.ngram_max,
        hash_dim=args.hash_dim,
        use_word_feature=args.word_feature,
        context_window=args.context_window,
    )


def _train_params_from(args) -> TrainParams:
    return TrainParams(
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        l2=args.l2,
        seed=args.seed,
    )


def _add_policy_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--script",
        choices=(SCRIPT_ROMAN, SCRIPT_MIXED),
        default=SCRIPT_ROMAN,
        help="script policy: roman keeps Latin+ASCII only, mixed adds Devanagari",
    )
    parser.add_argument(
        "--keep-emoji", dest="keep_emoji", action="store_true", default=True
    )
    parser.add_argument("--no-emoji", dest="keep_emoji", action="store_false")
    parser.add_argument(
        "--strip-mentions", dest="strip_mentions", action="store_true", default=True
    )
    parser.add_argument(
        "--keep-mentions", dest="strip_mentions", action="store_false"
    )
    parser.add_argument(
        "--strip-urls", dest="strip_urls", action="store_true", default=True
    )
    parser.add_argument("--keep-urls", dest="strip_urls", action="store_false")


def _add_feature_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ngram-min", type=int, default=1)
    parser.add_argument("--ngram-max", type=int, default=4)
    parser.add_argument("--hash-dim", type=int, default=2**20)
    parser.add_argument(
        "--no-word-feature", dest="word_feature", action="store_false", default=True
    )
    parser.add_argument("--context-window", type=int, default=1)


def _add_train_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--epochs", type=int, default=5)
    parser.add_argument("--learning-rate", type=float, default=0.1)
    parser.add_argument("--l2", type=float, default=1e-6)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="codemix",
        description="Curate code-mixed bilingual corpora: normalize, tokenize, "
        "identify word languages, bootstrap the classifier, filter, measure.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get("CODEMIX_SEED", "0")),
        help="RNG seed for every randomized stage (env CODEMIX_SEED)",
    )
    parser.add_argument(
        "--quiet", action="store_true", help="suppress progress diagnostics"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="strip mentions/URLs, apply script policy")
    p.add_argument("input")
    p.add_argument("--out")
    _add_policy_flags(p)

    p = sub.add_parser("tokenize", help="tokenize normalized lines to token<TAB>kind")
    p.add_argument("input")
    p.add_argument("--out")

    p = sub.add_parser("train-lid", help="train the word-level LID classifier")
    p.add_argument("corpus", help="labeled corpus (token<TAB>label, blank-line sentences)")
    p.add_argument("--model-out", required=True)
    _add_feature_flags(p)
    _add_train_flags(p)

    p = sub.add_parser("predict-lid", help="label words with a trained classifier")
    p.add_argument("input")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.add_argument(
        "--format",
        choices=("text", "conll"),
        default="text",
        help="text: raw lines (normalized+tokenized first); conll: keep given tokens",
    )
    _add_policy_flags(p)

    p = sub.add_parser("eval", help="score predictions against a gold corpus")
    p.add_argument("gold")
    p.add_argument("predicted")
    p.add_argument("--out")

    p = sub.add_parser("cmi", help="code-mixing index report for a labeled corpus")
    p.add_argument("corpus")
    p.add_argument("--out")
    p.add_argument(
        "--other",
        choices=(metrics.OTHER_INDEPENDENT, metrics.OTHER_EXCLUDE),
        default=metrics.OTHER_INDEPENDENT,
        help="how OTHER tokens enter the CMI bookkeeping (values coincide)",
    )

    p = sub.add_parser("stats", help="corpus statistics for a labeled corpus")
    p.add_argument("corpus")
    p.add_argument("--out")

    p = sub.add_parser("filter", help="keep sentences with enough HI and EN words")
    p.add_argument("input")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.add_argument("--stats", help="write a JSON stats report here")
    p.add_argument("--min-hi", type=int, default=2)
    p.add_argument("--min-en", type=int, default=2)
    _add_policy_flags(p)

    p = sub.add_parser("split", help="deterministic train/validation split")
    p.add_argument("input")
    p.add_argument("--train-out", required=True)
    p.add_argument("--valid-out", required=True)
    p.add_argument("--fraction", type=float, default=0.097)

    p = sub.add_parser("dedup", help="drop exact duplicate lines (keep first)")
    p.add_argument("input")
    p.add_argument("--out")

    p = sub.add_parser("shuffle", help="deterministic shuffle")
    p.add_argument("input")
    p.add_argument("--out")

    p = sub.add_parser("propose-keywords", help="new HI words for the scrape vocabulary")
    p.add_argument("corpus")
    p.add_argument("--vocab", help="known keywords, one per line")
    p.add_argument("--min-freq", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("bootstrap", help="one semi-supervised round: merge, retrain, relabel")
    p.add_argument("--state", required=True, help="state directory")
    p.add_argument("--init", action="store_true", help="create the state first")
    p.add_argument("--seed-corpus", help="labeled seed corpus (required with --init)")
    p.add_argument("--unlabeled", help="raw lines to pseudo-label after retraining")
    p.add_argument("--threshold", type=float, default=0.9)
    p.add_argument("--validation", help="labeled corpus for held-out metrics")
    _add_feature_flags(p)
    _add_train_flags(p)
    _add_policy_flags(p)

    p = sub.add_parser("review-serve", help="serve the review queue over HTTP")
    p.add_argument("--state", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui-dir", help="directory of built UI assets to serve at /ui")

    return parser


def _info(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


# -- subcommand implementations ------------------------------------------------


def _cmd_normalize(args) -> int:
    policy = _policy_from(args)
    reader = corpus_io.read_sentences(args.input)
    kept = dropped = 0
    with _open_out(args.out) as out:
        for line in reader:
            normalized = normalize_sentence(line, policy)
            if normalized is None:
                dropped += 1
                continue
            kept += 1
            out.write(normalized + "\n")
    for err in reader.errors:
        _info(args, f"normalize: line {err.line_no}: {err.message}")
    _info(args, f"normalize: kept {kept}, dropped {dropped} empty")
    return EXIT_OK


def _cmd_tokenize(args) -> int:
    reader = corpus_io.read_sentences(args.input)
    with _open_out(args.out) as out:
        for line in reader:
            sent = tokenize(line)
            for tok in sent.tokens:
                out.write(f"{tok.text}\t{tok.kind}\n")
            out.write("\n")
    return EXIT_OK


def _cmd_train_lid(args) -> int:
    sentences = conll.read_labeled(args.corpus)
    model = LidClassifier.from_config(_feature_config_from(args), _train_params_from(args))
    X, y = conll.to_xy(sentences)
    model.fit(X, y)
    model.save(args.model_out)
    info = model.trained_on_
    _info(
        args,
        f"train-lid: {info['sentences']} sentences, {info['word_examples']} word tokens, "
        f"loss {info['initial_loss']:.4f} -> {info['final_loss']:.4f}",
    )
    return EXIT_OK


def _cmd_predict_lid(args) -> int:
    model = LidClassifier.load(args.model)
    with _open_out(args.out) as out:
        if args.format == "conll":
            sentences = conll.read_labeled(args.input, require_labels=False)
            X = [[text for text, _ in sent] for sent in sentences]
            for texts, labels in zip(X, model.predict(X)):
                conll.write_sentences(out, [list(zip(texts, labels))])
        else:
            policy = _policy_from(args)
            reader = corpus_io.read_sentences(args.input)
            for line in reader:
                normalized = normalize_sentence(line, policy)
                if normalized is None:
                    continue
                labeled = predict_sentence(model, tokenize(normalized))
                conll.write_sentences(
                    out, [[(tok.text, tok.label) for tok in labeled.tokens]]
                )
    return EXIT_OK


def _cmd_eval(args) -> int:
    gold = conll.read_labeled(args.gold)
    predicted = conll.read_labeled(args.predicted)
    report = metrics.evaluate_lid(gold, predicted)
    with _open_out(args.out) as out:
        out.write(metrics.format_eval_report(report) + "\n")
    return EXIT_OK


def _cmd_cmi(args) -> int:
    sentences = conll.read_labeled(args.corpus)
    report = metrics.cmi_corpus(
        ([label for _, label in sent] for sent in sentences), other_mode=args.other
    )
    with _open_out(args.out) as out:
        out.write(metrics.format_cmi_report(report) + "\n")
    return EXIT_OK


def _cmd_stats(args) -> int:
    sentences = conll.read_labeled(args.corpus)
    stats = metrics.corpus_stats(sentences)
    with _open_out(args.out) as out:
        out.write(metrics.format_corpus_stats(stats) + "\n")
    return EXIT_OK


def _cmd_filter(args) -> int:
    model = LidClassifier.load(args.model)
    config = FilterConfig(min_hi=args.min_hi, min_en=args.min_en)
    filt = CorpusFilter(model, config, _policy_from(args))
    reader = corpus_io.read_sentences(args.input)
    with _open_out(args.out) as out:
        for line in filt.run(reader):
            out.write(line + "\n")
    if args.stats:
        Path(args.stats).write_text(
            json.dumps(filt.stats.as_dict(), indent=2) + "\n", encoding="utf-8"
        )
    s = filt.stats
    _info(
        args,
        f"filter: {s.accepted}/{s.total} accepted "
        f"(low_hi {s.rejected_low_hi}, low_en {s.rejected_low_en}, empty {s.rejected_empty})",
    )
    return EXIT_OK


def _cmd_split(args) -> int:
    lines = list(corpus_io.read_sentences(args.input))
    spec = corpus_io.SplitSpec(valid_fraction=args.fraction, seed=args.seed)
    train, valid = corpus_io.split_corpus(lines, spec)
    Path(args.train_out).write_text(
        "".join(line + "\n" for line in train), encoding="utf-8"
    )
    Path(args.valid_out).write_text(
        "".join(line + "\n" for line in valid), encoding="utf-8"
    )
    _info(args, f"split: {len(train)} train, {len(valid)} valid")
    return EXIT_OK


def _cmd_dedup(args) -> int:
    deduper = corpus_io.dedup(corpus_io.read_sentences(args.input))
    kept = 0
    with _open_out(args.out) as out:
        for line in deduper:
            kept += 1
            out.write(line + "\n")
    _info(args, f"dedup: kept {kept}, removed {deduper.removed} duplicates")
    return EXIT_OK


def _cmd_shuffle(args) -> int:
    lines = corpus_io.shuffle_lines(corpus_io.read_sentences(args.input), args.seed)
    with _open_out(args.out) as out:
        for line in lines:
            out.write(line + "\n")
    return EXIT_OK


def _cmd_propose_keywords(args) -> int:
    sentences = conll.read_labeled(args.corpus)
    vocab: list[str] = []
    if args.vocab:
        vocab = [
            line for line in Path(args.vocab).read_text(encoding="utf-8").splitlines() if line
        ]
    ranked = bs.propose_keywords(sentences, vocab, min_freq=args.min_freq)
    with _open_out(args.out) as out:
        for word, freq in ranked:
            out.write(f"{word}\t{freq}\n")
    return EXIT_OK


def _cmd_bootstrap(args) -> int:
    feature_config = _feature_config_from(args)
    train_params = _train_params_from(args)
    if args.init:
        if not args.seed_corpus:
            raise CodemixError("--init requires --seed-corpus")
        seed_corpus = conll.read_labeled(args.seed_corpus)
        state = bs.BootstrapState.init(
            args.state,
            seed_corpus,
            threshold=args.threshold,
            feature_config=feature_config,
            train_params=train_params,
        )
    else:
        state = bs.BootstrapState.load(args.state)
    unlabeled = corpus_io.read_sentences(args.unlabeled) if args.unlabeled else None
    model = bs.run_round(
        state,
        unlabeled=unlabeled,
        policy=_policy_from(args),
        feature_config=feature_config if args.init else None,
        train_params=train_params if args.init else None,
    )
    _info(
        args,
        f"bootstrap: iteration {state.iteration}, "
        f"accepted {len(state.accepted)}, queue {len(state.queue)} pending",
    )
    if args.validation:
        gold = conll.read_labeled(args.validation)
        X, _ = conll.to_xy(gold)
        predicted = [list(zip(texts, labels)) for texts, labels in zip(X, model.predict(X))]
        report = metrics.evaluate_lid(gold, predicted)
        _info(args, f"bootstrap: held-out accuracy {report.accuracy:.4f}, "
                    f"weighted F1 {report.weighted_f1:.4f}")
    return EXIT_OK


def _cmd_review_serve(args) -> int:
    from .review_service import make_server

    server = make_server(
        args.state, host=args.host, port=args.port, ui_dir=args.ui_dir, quiet=args.quiet
    )
    host, port = server.server_address[:2]
    print(f"review-serve: listening on http://{host}:{port}/", file=sys.stderr, flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


_COMMANDS = {
    "normalize": _cmd_normalize,
    "tokenize": _cmd_tokenize,
    "train-lid": _cmd_train_lid,
    "predict-lid": _cmd_predict_lid,
    "eval": _cmd_eval,
    "cmi": _cmd_cmi,
    "stats": _cmd_stats,
    "filter": _cmd_filter,
    "split": _cmd_split,
    "dedup": _cmd_dedup,
    "shuffle": _cmd_shuffle,
    "propose-keywords": _cmd_propose_keywords,
    "bootstrap": _cmd_bootstrap,
    "review-serve": _cmd_review_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (CodemixError, OSError, ValueError) as exc:
        print(f"codemix {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
