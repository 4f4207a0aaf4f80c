from fractions import Fraction

import pytest

from nestlab.config.config import Config
from nestlab.core.errors import ConfigurationError
from nestlab.core.experiment.experiment_context_builder import (
    DEFAULT_EPSILONS,
    ExperimentContextBuilder,
    parse_epsilon,
)


def configured(tmp_path, text: str) -> Config:
    path = tmp_path / "experiment.yaml"
    path.write_text(text, encoding="utf-8")
    config = Config()
    config.load_from_yaml(str(path))
    return config


class TestParseEpsilon:
    @pytest.mark.parametrize("raw, expected", [("1/4", Fraction(1, 4)), (1, Fraction(1)), ("0.5", Fraction(1, 2))])
    def test_accepts(self, raw, expected):
        assert parse_epsilon(raw) == expected

    @pytest.mark.parametrize("raw", [0.25, True, "0", "-1/2", "a/b", "1/0"])
    def test_rejects(self, raw):
        with pytest.raises(ConfigurationError):
            parse_epsilon(raw)


class TestBuild:
    def test_defaults(self, tmp_path):
        configured(tmp_path, "experiment:\n  command: nest\n")
        ctx = ExperimentContextBuilder().build()
        assert ctx.command == "nest" and ctx.seed is None
        assert ctx.epsilons == tuple(Fraction(e) for e in DEFAULT_EPSILONS)
        assert ctx.output == "csv" and ctx.out is None
        assert ctx.sample_count(5) == 5

    def test_no_command(self):
        with pytest.raises(ConfigurationError):
            ExperimentContextBuilder().build()

    def test_config_without_experiment_section(self, tmp_path):
        configured(tmp_path, "debug: false\n")
        with pytest.raises(ConfigurationError):
            ExperimentContextBuilder().build()

    def test_unknown_command(self, tmp_path):
        configured(tmp_path, "experiment:\n  command: sleep\n")
        with pytest.raises(ConfigurationError):
            ExperimentContextBuilder().build()

    def test_sampled_command_needs_a_seed(self, tmp_path):
        configured(tmp_path, "experiment:\n  command: rank\n")
        with pytest.raises(ConfigurationError):
            ExperimentContextBuilder().build()

    def test_zero_samples_need_no_seed(self, tmp_path):
        configured(tmp_path, "experiment:\n  command: rank\n  samples: 0\n")
        assert ExperimentContextBuilder().build().sample_count(100) == 0

    def test_float_epsilon_is_rejected(self, tmp_path):
        with pytest.raises(ConfigurationError):
            configured(tmp_path, "experiment:\n  command: fold\n  epsilons: [0.25]\n")

    def test_non_positive_epsilon_is_rejected(self, tmp_path):
        configured(tmp_path, "experiment:\n  command: fold\n  epsilons: ['1/4', '0']\n")
        with pytest.raises(ConfigurationError):
            ExperimentContextBuilder().build()

    def test_inputs_resolve_against_the_working_directory(self, tmp_path, monkeypatch):
        (tmp_path / "m.json").write_text('{"p": 2, "n": 1, "entries": [[1]]}', encoding="utf-8")
        monkeypatch.chdir(tmp_path)
        configured(tmp_path, "experiment:\n  command: nest\n  inputs: [m.json]\n  params: {n: 2}\n")
        ctx = ExperimentContextBuilder().build()
        assert ctx.inputs == (str(tmp_path / "m.json"),)
        assert ctx.param("n") == 2 and ctx.param("p", 2) == 2
