from .active import ActiveBatch, bootstrap_batch, uncertainty_sample
from .embedding import (
    CachingEmbedder,
    Embedding,
    EmbeddingProvider,
    HashedBowProvider,
    HttpEmbeddingProvider,
    make_embedding_provider,
)
from .naive_bayes import InsufficientClasses, LabeledExample, NBModel, predict_proba, train

__all__ = [
    "ActiveBatch",
    "CachingEmbedder",
    "Embedding",
    "EmbeddingProvider",
    "HashedBowProvider",
    "HttpEmbeddingProvider",
    "InsufficientClasses",
    "LabeledExample",
    "NBModel",
    "bootstrap_batch",
    "make_embedding_provider",
    "predict_proba",
    "train",
    "uncertainty_sample",
]
