"""Synthetic bilingual corpus generator for tests.

Two artificial languages with disjoint character inventories (hence
disjoint character bigram inventories): language A words use a-m and
map to EN, language B words use n-z and map to HI. Punctuation, smileys
and digit tokens are shared and labeled OTHER. Because the character
sets are disjoint, a subword classifier can separate the languages
even on unseen words.

Generated raw lines survive normalize+tokenize unchanged, so gold
labels align with pipeline tokens by position.
"""

from __future__ import annotations

import random

EN_ALPHABET = "abcdefghijklm"
HI_ALPHABET = "nopqrstuvwxyz"
OTHER_TOKENS = ["!", "?", ",", ".", ":)", ":("]

Sentence = list[tuple[str, str]]


def true_label(text: str) -> str:
    ch = text[0].lower()
    if ch in EN_ALPHABET:
        return "EN"
    if ch in HI_ALPHABET:
        return "HI"
    return "OTHER"


def make_lexicon(alphabet: str, size: int, rng: random.Random) -> list[str]:
    words = set()
    while len(words) < size:
        length = rng.randint(3, 8)
        words.add("".join(rng.choice(alphabet) for _ in range(length)))
    return sorted(words)


def make_sentence(
    en_lexicon: list[str],
    hi_lexicon: list[str],
    rng: random.Random,
    min_words: int = 4,
    max_words: int = 12,
) -> Sentence:
    n_words = rng.randint(min_words, max_words)
    hi_share = rng.random()
    sent: Sentence = []
    for _ in range(n_words):
        if rng.random() < hi_share:
            sent.append((rng.choice(hi_lexicon), "HI"))
        else:
            sent.append((rng.choice(en_lexicon), "EN"))
    if rng.random() < 0.2:
        sent.insert(rng.randrange(len(sent) + 1), (str(rng.randint(0, 999)), "OTHER"))
    if rng.random() < 0.5:
        sent.append((rng.choice(OTHER_TOKENS), "OTHER"))
    return sent


def make_corpus(
    n_sentences: int,
    seed: int,
    lexicon_size: int = 400,
    min_words: int = 4,
    max_words: int = 12,
) -> list[Sentence]:
    rng = random.Random(seed)
    en_lexicon = make_lexicon(EN_ALPHABET, lexicon_size, rng)
    hi_lexicon = make_lexicon(HI_ALPHABET, lexicon_size, rng)
    return [
        make_sentence(en_lexicon, hi_lexicon, rng, min_words, max_words)
        for _ in range(n_sentences)
    ]


def to_raw_line(sentence: Sentence) -> str:
    return " ".join(text for text, _ in sentence)


def to_raw_lines(corpus: list[Sentence]) -> list[str]:
    return [to_raw_line(sent) for sent in corpus]
