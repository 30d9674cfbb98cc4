import numpy as np
import pytest

import topicq as tq
from topicq.core import COLUMN_SUM_TOL, _as_stochastic


ALL_MODELS = [tq.Model.PLSA, tq.Model.VLDA, tq.Model.LDA_GS, tq.Model.GLDA]


class TestSeeding:
    def test_mix64_deterministic_and_sensitive(self):
        a = tq.mix64(1, 2, 3)
        assert a == tq.mix64(1, 2, 3)
        assert 0 <= a < 2**64
        assert a != tq.mix64(1, 2, 4)
        assert a != tq.mix64(3, 2, 1)
        assert tq.mix64(0) != tq.mix64(1)

    def test_mix64_negative_inputs_ok(self):
        assert 0 <= tq.mix64(-1, 7) < 2**64

    def test_seeded_rng_reproducible(self):
        r1 = tq.seeded_rng(42, 1)
        r2 = tq.seeded_rng(42, 1)
        assert np.array_equal(r1.random(100), r2.random(100))

    def test_seeded_rng_streams_differ(self):
        a = tq.seeded_rng(42, 1).random(100)
        b = tq.seeded_rng(42, 2).random(100)
        c = tq.seeded_rng(43, 1).random(100)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_uniform_mean(self):
        u = tq.seeded_rng(7).random(1_000_000)
        assert abs(u.mean() - 0.5) < 0.005


class TestStochasticMatrices:
    def test_columns_must_sum_to_one(self):
        bad = np.array([[0.6, 0.5], [0.5, 0.5]])
        with pytest.raises(ValueError, match="sum"):
            tq.PhiMatrix(bad)

    def test_tolerance_is_strict_beyond_1e9(self):
        ok = np.full((4, 2), 0.25)
        ok[0, 0] += 5e-10
        ok[1, 0] -= 5e-10
        tq.PhiMatrix(ok)
        bad = np.full((4, 2), 0.25)
        bad[0, 0] += 5e-9
        with pytest.raises(ValueError):
            tq.PhiMatrix(bad)

    def test_negative_entries_rejected(self):
        bad = np.array([[1.2], [-0.2]])
        with pytest.raises(ValueError):
            tq.PhiMatrix(bad)

    def test_nan_rejected(self):
        bad = np.array([[np.nan], [1.0]])
        with pytest.raises(ValueError):
            tq.ThetaMatrix(bad)

    def test_values_read_only(self):
        phi = tq.PhiMatrix(np.full((4, 2), 0.25))
        with pytest.raises(ValueError):
            phi.values[0, 0] = 1.0

    def test_shape_accessors(self):
        phi = tq.PhiMatrix(np.full((4, 2), 0.25))
        theta = tq.ThetaMatrix(np.full((2, 3), 0.5))
        assert phi.n_words == 4 and phi.n_topics == 2
        assert theta.n_topics == 2 and theta.n_docs == 3

    def test_as_stochastic_accepts_lists(self):
        arr = _as_stochastic([[0.5, 1.0], [0.5, 0.0]], "m")
        assert arr.flags.c_contiguous
        assert not arr.flags.writeable


class TestModelConfig:
    def test_defaults_resolved_at_construction(self):
        cfg = tq.ModelConfig(model=tq.Model.LDA_GS, topics=10)
        assert cfg.alpha == pytest.approx(5.0)
        assert cfg.beta == 0.01
        assert cfg.iterations == 100
        assert cfg.glda_region == 2
        assert cfg.argmax_selection is False

    def test_default_alpha_scales_with_topics(self):
        assert tq.ModelConfig(model=tq.Model.PLSA, topics=25).alpha == 2.0
        assert tq.ModelConfig(model=tq.Model.PLSA, topics=4).alpha == 12.5

    def test_explicit_values_kept(self):
        cfg = tq.ModelConfig(model=tq.Model.VLDA, topics=3, alpha=0.2, beta=0.5)
        assert cfg.alpha == 0.2
        assert cfg.beta == 0.5

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"topics": 0},
            {"topics": -2},
            {"topics": 2.5},
            {"topics": 3, "alpha": 0.0},
            {"topics": 3, "alpha": -1.0},
            {"topics": 3, "beta": 0.0},
            {"topics": 3, "iterations": 0},
            {"topics": 3, "glda_region": -1},
        ],
    )
    def test_invalid_configs_rejected(self, kwargs):
        with pytest.raises((ValueError, TypeError)):
            tq.ModelConfig(model=tq.Model.LDA_GS, **kwargs)

    def test_frozen(self):
        cfg = tq.ModelConfig(model=tq.Model.PLSA, topics=2)
        with pytest.raises(AttributeError):
            cfg.topics = 5


class TestFitDispatch:
    def test_more_topics_than_words_rejected(self, tiny_corpus):
        cfg = tq.ModelConfig(
            model=tq.Model.PLSA, topics=tiny_corpus.n_words + 1, iterations=1
        )
        with pytest.raises(ValueError, match="topics"):
            tq.fit(tiny_corpus, cfg)

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_result_shapes_and_config_echo(self, tiny_corpus, model):
        cfg = tq.ModelConfig(model=model, topics=3, iterations=5, seed=11)
        res = tq.fit(tiny_corpus, cfg)
        assert res.phi.n_words == tiny_corpus.n_words
        assert res.phi.n_topics == 3
        assert res.theta.n_topics == 3
        assert res.theta.n_docs == tiny_corpus.n_docs
        assert res.config is cfg

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_single_topic_is_exact(self, tiny_corpus, model):
        cfg = tq.ModelConfig(model=model, topics=1, iterations=3, seed=0)
        res = tq.fit(tiny_corpus, cfg)
        assert np.all(res.theta.values == 1.0)
        assert res.phi.values.sum() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_bitwise_determinism(self, tiny_corpus, model):
        cfg = tq.ModelConfig(model=model, topics=4, iterations=8, seed=77)
        r1 = tq.fit(tiny_corpus, cfg)
        r2 = tq.fit(tiny_corpus, cfg)
        assert np.array_equal(r1.phi.values, r2.phi.values)
        assert np.array_equal(r1.theta.values, r2.theta.values)
        if r1.loglik_trace is not None:
            assert np.array_equal(r1.loglik_trace, r2.loglik_trace)

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_seeds_change_output(self, tiny_corpus, model):
        cfg1 = tq.ModelConfig(model=model, topics=4, iterations=8, seed=1)
        cfg2 = tq.ModelConfig(model=model, topics=4, iterations=8, seed=2)
        r1 = tq.fit(tiny_corpus, cfg1)
        r2 = tq.fit(tiny_corpus, cfg2)
        assert not np.array_equal(r1.phi.values, r2.phi.values)

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_columns_normalized_within_tolerance(self, tiny_corpus, model):
        cfg = tq.ModelConfig(model=model, topics=5, iterations=10, seed=3)
        res = tq.fit(tiny_corpus, cfg)
        np.testing.assert_allclose(
            res.phi.values.sum(axis=0), 1.0, atol=COLUMN_SUM_TOL, rtol=0.0
        )
        np.testing.assert_allclose(
            res.theta.values.sum(axis=0), 1.0, atol=COLUMN_SUM_TOL, rtol=0.0
        )


class TestFitResult:
    def test_dimension_mismatch_rejected(self):
        phi = tq.PhiMatrix(np.full((4, 2), 0.25))
        theta3 = tq.ThetaMatrix(np.full((3, 5), 1.0 / 3.0))
        cfg = tq.ModelConfig(model=tq.Model.PLSA, topics=2)
        with pytest.raises(ValueError):
            tq.FitResult(
                phi=phi, theta=theta3, config=cfg, loglik_trace=np.zeros(1)
            )

    def test_trace_read_only_and_sized(self, tiny_corpus):
        cfg = tq.ModelConfig(model=tq.Model.PLSA, topics=2, iterations=4)
        res = tq.fit(tiny_corpus, cfg)
        assert res.loglik_trace.shape == (4,)
        with pytest.raises(ValueError):
            res.loglik_trace[0] = 0.0

    def test_sampler_results_have_no_trace(self, tiny_corpus):
        cfg = tq.ModelConfig(model=tq.Model.LDA_GS, topics=2, iterations=4)
        res = tq.fit(tiny_corpus, cfg)
        assert res.loglik_trace is None


class TestCsvWriters:
    def test_phi_round_trip(self, tmp_path, tiny_corpus):
        cfg = tq.ModelConfig(model=tq.Model.VLDA, topics=3, iterations=5, seed=5)
        res = tq.fit(tiny_corpus, cfg)
        path = tmp_path / "phi.csv"
        tq.write_phi_csv(path, res.phi)
        text = path.read_text(encoding="utf-8")
        assert "\r" not in text
        lines = text.strip().split("\n")
        assert lines[0] == "topic_0,topic_1,topic_2"
        data = np.array(
            [[float(x) for x in line.split(",")] for line in lines[1:]]
        )
        assert data.shape == (tiny_corpus.n_words, 3)
        np.testing.assert_allclose(data, res.phi.values, rtol=1e-11)

    def test_theta_rows_are_documents(self, tmp_path, tiny_corpus):
        cfg = tq.ModelConfig(model=tq.Model.VLDA, topics=3, iterations=5, seed=5)
        res = tq.fit(tiny_corpus, cfg)
        path = tmp_path / "theta.csv"
        tq.write_theta_csv(path, res.theta)
        lines = path.read_text(encoding="utf-8").strip().split("\n")
        assert len(lines) == 1 + tiny_corpus.n_docs
        row0 = [float(x) for x in lines[1].split(",")]
        np.testing.assert_allclose(row0, res.theta.values[:, 0], rtol=1e-11)
