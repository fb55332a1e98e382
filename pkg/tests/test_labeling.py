import random

import numpy as np
import pytest

from modkit.errors import ValidationError
from modkit.labeling import (
    Embedding,
    HashedBowProvider,
    InsufficientClasses,
    LabeledExample,
    NBModel,
    bootstrap_batch,
    predict_proba,
    train,
    uncertainty_sample,
)
from modkit.types import Label

from .oracles import gnb_oracle_fit, gnb_oracle_predict


def emb(*values):
    return Embedding(vector=np.asarray(values, dtype=np.float64))


class TestHashedBow:
    def test_normalization_collapses_repeats(self):
        provider = HashedBowProvider()
        a = provider.embed_one("a a")
        b = provider.embed_one("a")
        np.testing.assert_array_equal(a.vector, b.vector)

    def test_empty_text_is_flagged_zero_vector(self):
        provider = HashedBowProvider()
        e = provider.embed_one("")
        assert e.empty
        assert not e.vector.any()
        assert not provider.embed_one("...!?").vector.any()

    def test_deterministic(self):
        provider = HashedBowProvider()
        x = provider.embed_one("Some comment with words")
        y = provider.embed_one("Some comment with words")
        assert (x.vector == y.vector).all()

    def test_tokenization_case_and_boundaries(self):
        provider = HashedBowProvider()
        a = provider.embed_one("Hello, WORLD!")
        b = provider.embed_one("hello world")
        np.testing.assert_array_equal(a.vector, b.vector)

    def test_unit_norm(self):
        provider = HashedBowProvider()
        e = provider.embed_one("several distinct words here")
        assert np.linalg.norm(e.vector) == pytest.approx(1.0, abs=1e-12)

    def test_dimension(self):
        assert HashedBowProvider().embed_one("x").dim == 256
        assert HashedBowProvider(dim=64).embed_one("x").dim == 64


TOY_EMBEDDINGS = {
    "r1": emb(1.0),
    "r2": emb(1.2),
    "k1": emb(-1.0),
    "k2": emb(-1.2),
}
TOY_EXAMPLES = [
    LabeledExample("r1", Label.REMOVE),
    LabeledExample("r2", Label.REMOVE),
    LabeledExample("k1", Label.KEEP),
    LabeledExample("k2", Label.KEEP),
]


class TestTrain:
    def test_priors_are_class_fractions(self):
        embeddings = {**TOY_EMBEDDINGS, "r3": emb(0.9)}
        examples = TOY_EXAMPLES[:2] + [LabeledExample("r3", Label.REMOVE), TOY_EXAMPLES[2]]
        model = train(examples, embeddings)
        assert model.priors[Label.REMOVE] == pytest.approx(0.75)
        assert model.priors[Label.KEEP] == pytest.approx(0.25)

    def test_single_class_raises(self):
        with pytest.raises(InsufficientClasses):
            train(TOY_EXAMPLES[:2], TOY_EMBEDDINGS)

    def test_toy_means(self):
        model = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        assert model.means[Label.REMOVE][0] == pytest.approx(1.1)
        assert model.means[Label.KEEP][0] == pytest.approx(-1.1)

    def test_order_independent(self):
        shuffled = TOY_EXAMPLES[::-1]
        a = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        b = train(shuffled, TOY_EMBEDDINGS)
        assert a.to_json() == b.to_json()

    def test_duplication_invariance(self):
        model = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        doubled_embeddings = dict(TOY_EMBEDDINGS)
        doubled_examples = list(TOY_EXAMPLES)
        for ex in TOY_EXAMPLES:
            clone = ex.comment_id + "_dup"
            doubled_embeddings[clone] = doubled_embeddings[ex.comment_id]
            doubled_examples.append(LabeledExample(clone, ex.label))
        doubled = train(doubled_examples, doubled_embeddings)
        for label in (Label.KEEP, Label.REMOVE):
            assert doubled.priors[label] == pytest.approx(model.priors[label], abs=1e-15)
            np.testing.assert_allclose(doubled.means[label], model.means[label], atol=1e-12)
        query = emb(0.3)
        assert predict_proba(doubled, query) == pytest.approx(
            predict_proba(model, query), abs=1e-9
        )

    def test_serialization_round_trip(self):
        model = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        restored = NBModel.from_json(model.to_json())
        assert restored.to_json() == model.to_json()


class TestPredictProba:
    def test_toy_query_confident(self):
        model = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        assert predict_proba(model, emb(1.1)) > 0.99

    def test_symmetric_midpoint_is_half(self):
        model = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        assert predict_proba(model, emb(0.0)) == pytest.approx(0.5, abs=1e-9)

    def test_sums_to_one_and_finite_far_out(self):
        model = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        for q in (-1e6, -3.3, 0.1, 5.0, 1e6):
            p = predict_proba(model, emb(q))
            assert 0.0 <= p <= 1.0
            assert np.isfinite(p)

    def test_dimension_mismatch(self):
        model = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        with pytest.raises(ValidationError):
            predict_proba(model, emb(1.0, 2.0))

    def test_matches_closed_form_oracle_on_toy(self):
        model = train(TOY_EXAMPLES, TOY_EMBEDDINGS)
        params = gnb_oracle_fit(
            {"Remove": [[1.0], [1.2]], "Keep": [[-1.0], [-1.2]]}
        )
        for q in (-2.0, -1.1, 0.0, 0.4, 1.1, 2.5):
            expected = gnb_oracle_predict(params, [q], "Remove")
            assert predict_proba(model, emb(q)) == pytest.approx(expected, abs=1e-9)


class TestOracleEquivalenceRandom:
    def test_random_2d_datasets(self):
        rng = random.Random(123)
        for _ in range(30):
            n = rng.randint(2, 20)
            points, examples, embeddings = {}, [], {}
            points = {"Remove": [], "Keep": []}
            for i in range(n):
                label = Label.REMOVE if (i < n // 2 or i == 0) else Label.KEEP
                vec = [rng.uniform(-3, 3), rng.uniform(-3, 3)]
                cid = f"c{i:03d}"
                points[label.value].append(vec)
                examples.append(LabeledExample(cid, label))
                embeddings[cid] = emb(*vec)
            if not points["Keep"]:
                points["Keep"].append([0.0, 0.0])
                examples.append(LabeledExample("extra", Label.KEEP))
                embeddings["extra"] = emb(0.0, 0.0)
            model = train(examples, embeddings)
            params = gnb_oracle_fit(points)
            for _ in range(5):
                q = [rng.uniform(-4, 4), rng.uniform(-4, 4)]
                expected = gnb_oracle_predict(params, q, "Remove")
                assert predict_proba(model, emb(*q)) == pytest.approx(expected, abs=1e-6)


class TestUncertaintySample:
    def model_with_probs(self):
        # 1-D model; P(remove) rises with x, crossing 0.5 at x = 0
        embeddings = {"r": emb(1.0), "r2": emb(2.0), "k": emb(-1.0), "k2": emb(-2.0)}
        examples = [
            LabeledExample("r", Label.REMOVE),
            LabeledExample("r2", Label.REMOVE),
            LabeledExample("k", Label.KEEP),
            LabeledExample("k2", Label.KEEP),
        ]
        return train(examples, embeddings)

    def test_picks_most_uncertain(self):
        model = self.model_with_probs()
        pool = {"a": emb(2.0), "b": emb(0.0), "c": emb(-2.0)}
        batch = uncertainty_sample(model, list(pool), pool, k=1)
        assert batch.comment_ids == ("b",)

    def test_k_at_least_pool_returns_everything_sorted(self):
        model = self.model_with_probs()
        pool = {"a": emb(2.0), "b": emb(0.1), "c": emb(-1.0)}
        batch = uncertainty_sample(model, list(pool), pool, k=10)
        assert set(batch.comment_ids) == {"a", "b", "c"}
        assert batch.comment_ids[0] == "b"

    def test_tie_breaks_on_comment_id(self):
        model = self.model_with_probs()
        pool = {"z": emb(0.5), "a": emb(0.5)}  # identical uncertainty
        batch = uncertainty_sample(model, ["z", "a"], pool, k=2)
        assert batch.comment_ids == ("a", "z")

    def test_k_must_be_positive(self):
        model = self.model_with_probs()
        with pytest.raises(ValidationError):
            uncertainty_sample(model, ["a"], {"a": emb(0.0)}, k=0)


class TestBootstrapBatch:
    def test_reproducible(self):
        pool = [f"c{i}" for i in range(50)]
        assert bootstrap_batch(pool, 10, seed=3) == bootstrap_batch(pool, 10, seed=3)

    def test_seed_changes_batch(self):
        pool = [f"c{i}" for i in range(50)]
        assert bootstrap_batch(pool, 10, seed=3) != bootstrap_batch(pool, 10, seed=4)

    def test_whole_pool_when_k_equals_size(self):
        pool = [f"c{i}" for i in range(5)]
        batch = bootstrap_batch(pool, 5, seed=1)
        assert sorted(batch.comment_ids) == sorted(pool)

    def test_order_of_pool_irrelevant(self):
        pool = [f"c{i}" for i in range(20)]
        a = bootstrap_batch(pool, 5, seed=9)
        b = bootstrap_batch(pool[::-1], 5, seed=9)
        assert a == b
