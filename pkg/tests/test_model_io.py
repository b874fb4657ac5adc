import json

import numpy as np
import pytest

from hetlda import (FORMAT_VERSION, LabeledDataset, ParseError,
                    VersionMismatch, dataset_hash, load_model, make_trainer,
                    predict_ovo_batch, save_model, train_ovo)


def trained_model(seed=0, k=3):
    rng = np.random.default_rng(seed)
    centers = rng.normal(0, 6, (k, 3))
    features = np.vstack([rng.normal(0, 1, (40, 3)) + c for c in centers])
    labels = np.repeat(np.arange(k), 40)
    data = LabeledDataset(features, labels,
                          tuple(f"kind-{i}" for i in range(k)))
    return train_ovo(data, make_trainer("gld")), data


class TestRoundTrip:
    def test_exact_fields(self, tmp_path):
        model, data = trained_model()
        path = str(tmp_path / "model.json")
        save_model(path, model, "gld", {"source": "unit-test", "n": 3})
        loaded, method, metadata = load_model(path)
        assert method == "gld"
        assert metadata == {"source": "unit-test", "n": 3}
        assert loaded.n_classes == model.n_classes
        assert loaded.class_names == model.class_names
        for (a, b, disc, p_e), (la, lb, ldisc, lp_e) in zip(model.pairs,
                                                            loaded.pairs):
            assert (a, b) == (la, lb)
            assert np.array_equal(disc.w, ldisc.w)   # bit-exact weights
            assert disc.w0 == ldisc.w0
            assert p_e == lp_e

    def test_predictions_preserved(self, tmp_path):
        model, data = trained_model(seed=1)
        path = str(tmp_path / "model.json")
        save_model(path, model, "gld")
        loaded, _, _ = load_model(path)
        probe = np.random.default_rng(2).normal(0, 5, (100, 3))
        assert np.array_equal(predict_ovo_batch(loaded, probe),
                              predict_ovo_batch(model, probe))

    def test_missing_metadata_defaults_empty(self, tmp_path):
        model, _ = trained_model(seed=3, k=2)
        path = str(tmp_path / "model.json")
        save_model(path, model, "lda")
        _, _, metadata = load_model(path)
        assert metadata == {}


class TestFormatGuards:
    def test_version_gate(self, tmp_path):
        model, _ = trained_model(seed=4, k=2)
        path = str(tmp_path / "model.json")
        save_model(path, model, "lda")
        document = json.loads(open(path).read())
        document["format_version"] = FORMAT_VERSION + 1
        open(path, "w").write(json.dumps(document))
        with pytest.raises(VersionMismatch):
            load_model(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            load_model(str(path))

    def test_missing_keys(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text(json.dumps({"format_version": FORMAT_VERSION,
                                    "method": "lda"}))
        with pytest.raises(ParseError):
            load_model(str(path))

    def test_bad_pair_entry(self, tmp_path):
        model, _ = trained_model(seed=5, k=2)
        path = str(tmp_path / "model.json")
        save_model(path, model, "lda")
        document = json.loads(open(path).read())
        del document["pairs"][0]["w0"]
        open(path, "w").write(json.dumps(document))
        with pytest.raises(ParseError):
            load_model(path)


class TestDatasetHash:
    def test_shape_and_stability(self):
        _, data = trained_model(seed=6, k=2)
        digest = dataset_hash(data)
        assert len(digest) == 64
        assert set(digest) <= set("0123456789abcdef")
        assert dataset_hash(data) == digest

    def test_sensitive_to_any_change(self):
        _, data = trained_model(seed=7, k=2)
        digest = dataset_hash(data)
        bumped = LabeledDataset(data.features + 1e-9, data.labels)
        relabeled = LabeledDataset(data.features, 1 - data.labels)
        assert dataset_hash(bumped) != digest
        assert dataset_hash(relabeled) != digest
