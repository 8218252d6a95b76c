#!/usr/bin/env python3
"""Build a bootstrap state directory with exactly 100 pending review items.

Usage: make_fixture_state.py STATE_DIR
"""

import random
import sys

from codemix.bootstrap import BootstrapState, ReviewItem, bootstrap_round
from codemix.features import FeatureConfig
from codemix.lid import TrainParams

EN_ALPHABET = "abcdefghijklm"
HI_ALPHABET = "nopqrstuvwxyz"


def word(rng, alphabet):
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(3, 7)))


def make_seed_corpus(rng, n=80):
    corpus = []
    for _ in range(n):
        sent = []
        for _ in range(rng.randint(4, 9)):
            if rng.random() < 0.5:
                sent.append((word(rng, EN_ALPHABET), "EN"))
            else:
                sent.append((word(rng, HI_ALPHABET), "HI"))
        if rng.random() < 0.4:
            sent.append(("!", "OTHER"))
        corpus.append(sent)
    return corpus


def main(state_dir):
    rng = random.Random(13)
    state = BootstrapState.init(
        state_dir,
        make_seed_corpus(rng),
        threshold=0.9,
        feature_config=FeatureConfig(hash_dim=2**13),
        train_params=TrainParams(epochs=2, seed=3),
    )
    bootstrap_round(state)  # writes model.bin, iteration 1

    # 50 held-back sentences, two low-confidence word tokens each.
    held, queue = [], []
    for i in range(50):
        sid = f"s{i}"
        sent = [
            (word(rng, EN_ALPHABET), "EN"),
            (word(rng, HI_ALPHABET), "HI"),
            (word(rng, EN_ALPHABET), "EN"),
            ("!", "OTHER"),
        ]
        held.append((sid, sent))
        queue.append(ReviewItem(sid, 0, sent[0][0], "EN", round(rng.uniform(0.4, 0.89), 6)))
        queue.append(ReviewItem(sid, 1, sent[1][0], "HI", round(rng.uniform(0.4, 0.89), 6)))
    state.held = held
    state.queue = queue
    state.next_sentence_id = 50
    state.save()
    print(f"fixture state at {state.directory}: {len(queue)} pending items")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        print(__doc__, file=sys.stderr)
        sys.exit(1)
    main(sys.argv[1])
