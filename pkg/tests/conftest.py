import random

import pytest

from modkit.corpus import Corpus, CorpusConfig, save_corpus
from modkit.types import Comment

# Synthetic corpus vocabulary. Unwanted comments carry a planted nonsense
# keyword (the ground truth) plus vocabulary that correlates with the
# class, the way real toxic comments do; a couple of cross-class words per
# comment keep the classes from being trivially disjoint.
CLEAN_FILLER = [
    "video", "great", "point", "watch", "news", "today", "people", "think",
    "really", "agree", "policy", "debate", "question", "channel", "clip",
]
TOXIC_FILLER = [
    "garbage", "trash", "pathetic", "worthless", "clown", "shameful",
    "disgrace", "awful", "ridiculous", "laughable", "embarrassing", "nonsense",
]
PLANTED_KEYWORDS = ["flurb", "grumk"]
CROSS_WORDS = 2


class FakeClock:
    """Deterministic, manually advanced wall clock."""

    def __init__(self, start: float = 1000.0):
        self.now = float(start)

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> float:
        self.now += seconds
        return self.now


def synthetic_comment(rng: random.Random, i: int, toxic: bool) -> Comment:
    own, other = (TOXIC_FILLER, CLEAN_FILLER) if toxic else (CLEAN_FILLER, TOXIC_FILLER)
    words = rng.choices(own, k=rng.randint(6, 12))
    for _ in range(CROSS_WORDS):
        words.insert(rng.randrange(len(words)), rng.choice(other))
    if toxic:
        words.insert(rng.randrange(len(words)), rng.choice(PLANTED_KEYWORDS))
    return Comment(
        id=f"c{i:04d}",
        text=" ".join(words),
        video_id=f"v{i % 3}",
        is_reply=False,
        toxicity_score=0.9 if toxic else 0.1,
    )


def make_synthetic_corpus(n: int = 200, seed: int = 13) -> Corpus:
    """Half the comments carry a planted keyword; those are the Removes."""
    rng = random.Random(seed)
    return Corpus(
        synthetic_comment(rng, i, toxic=(i % 2 == 0)) for i in range(n)
    )


def keyword_truth(corpus: Corpus) -> dict[str, str]:
    out = {}
    for comment in corpus:
        hit = any(kw in comment.text for kw in PLANTED_KEYWORDS)
        out[comment.id] = "Remove" if hit else "Keep"
    return out


@pytest.fixture
def fake_clock():
    return FakeClock()


@pytest.fixture
def synthetic_corpus_dir(tmp_path):
    corpus = make_synthetic_corpus()
    corpus_dir = tmp_path / "corpora" / "synthetic"
    cfg = CorpusConfig(target_size=200, test_size=50, seed=13)
    save_corpus(corpus, corpus_dir, cfg)
    return tmp_path / "corpora"
