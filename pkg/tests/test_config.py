import json

import pytest

from varmine.config import CONFIG_ENV_VAR, Config, config_from_dict, load_config
from varmine.errors import ConfigurationError


class TestDefaults:
    def test_values(self):
        cfg = Config()
        assert cfg.dedup_threshold == 1.0
        assert cfg.lookup_threshold == 0.8
        assert cfg.het_threshold == 0.8
        assert cfg.bm25_k1 == 1.2
        assert cfg.bm25_b == 0.75
        assert cfg.candidate_pool == 100
        assert cfg.blend_lambda is None


class TestValidation:
    @pytest.mark.parametrize("field,value", [
        ("dedup_threshold", 0.0),
        ("dedup_threshold", 1.5),
        ("lookup_threshold", -0.1),
        ("het_threshold", 0.0),
        ("bm25_k1", -1.0),
        ("bm25_b", 1.5),
        ("candidate_pool", 0),
        ("blend_lambda", 2.0),
    ])
    def test_rejects_out_of_range(self, field, value):
        with pytest.raises(ConfigurationError):
            Config(**{field: value})

    def test_blend_lambda_bounds_inclusive(self):
        assert Config(blend_lambda=0.0).blend_lambda == 0.0
        assert Config(blend_lambda=1.0).blend_lambda == 1.0

    def test_b_bounds_inclusive(self):
        assert Config(bm25_b=0.0).bm25_b == 0.0
        assert Config(bm25_b=1.0).bm25_b == 1.0


class TestFromDict:
    def test_partial_override(self):
        cfg = config_from_dict({"lookup_threshold": 0.9})
        assert cfg.lookup_threshold == 0.9
        assert cfg.dedup_threshold == 1.0

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigurationError):
            config_from_dict({"typo_threshold": 0.5})


class TestLoadConfig:
    def test_defaults_without_file(self, monkeypatch):
        monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
        assert load_config() == Config()

    def test_explicit_path(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps({"candidate_pool": 25}))
        assert load_config(str(p)).candidate_pool == 25

    def test_env_var_fallback(self, tmp_path, monkeypatch):
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps({"bm25_k1": 2.0}))
        monkeypatch.setenv(CONFIG_ENV_VAR, str(p))
        assert load_config().bm25_k1 == 2.0

    def test_explicit_path_beats_env(self, tmp_path, monkeypatch):
        env_cfg = tmp_path / "env.json"
        env_cfg.write_text(json.dumps({"bm25_k1": 9.0}))
        monkeypatch.setenv(CONFIG_ENV_VAR, str(env_cfg))
        direct = tmp_path / "direct.json"
        direct.write_text(json.dumps({"bm25_k1": 2.0}))
        assert load_config(str(direct)).bm25_k1 == 2.0

    def test_missing_explicit_path_errors(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config(str(tmp_path / "absent.json"))

    def test_invalid_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{nope")
        with pytest.raises(ConfigurationError):
            load_config(str(p))
