import pytest

from codemix.conll import to_xy
from codemix.lid import LidClassifier

import synthgen


@pytest.fixture(scope="session")
def small_synth_corpus():
    return synthgen.make_corpus(300, seed=11)


@pytest.fixture(scope="session")
def small_model(small_synth_corpus):
    """Classifier trained on a small synthetic corpus, for pipeline tests."""
    model = LidClassifier(hash_dim=2**14, epochs=3, seed=7)
    X, y = to_xy(small_synth_corpus)
    model.fit(X, y)
    return model
