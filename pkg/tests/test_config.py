import pytest

from nestlab.config.config import Config
from nestlab.core.errors import ConfigurationError
from nestlab.models.command_line_args import CommandLineArgs
from nestlab.utils.seeding import MAX_SEED, parse_seed, trial_generators


def write_yaml(tmp_path, text: str) -> str:
    path = tmp_path / "experiment.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestParseSeed:
    @pytest.mark.parametrize("raw, expected", [(7, 7), ("7", 7), ("0x10", 16), (MAX_SEED, MAX_SEED)])
    def test_accepts(self, raw, expected):
        assert parse_seed(raw) == expected

    @pytest.mark.parametrize("raw", [True, -1, MAX_SEED + 1, "seven"])
    def test_rejects(self, raw):
        with pytest.raises(ValueError):
            parse_seed(raw)


class TestTrialGenerators:
    def test_streams_are_reproducible(self):
        first = [g.integers(1 << 30) for g in trial_generators(5, 3)]
        again = [g.integers(1 << 30) for g in trial_generators(5, 3)]
        assert first == again

    def test_streams_differ(self):
        a = trial_generators(5, 1, stream=0)[0].integers(1 << 30, size=4)
        b = trial_generators(5, 1, stream=1)[0].integers(1 << 30, size=4)
        assert list(a) != list(b)


class TestDefaults:
    def test_singleton(self):
        assert Config() is Config()

    def test_defaults(self):
        config = Config()
        assert config.output == "csv"
        assert config.seed is None and config.command is None
        assert config.log_level == "INFO"

    def test_seed_from_environment(self, monkeypatch):
        monkeypatch.setenv("NESTLAB_SEED", "0x2a")
        assert Config().seed == 42

    def test_output_from_environment(self, monkeypatch):
        monkeypatch.setenv("NESTLAB_OUTPUT", "json")
        assert Config().output == "json"

    def test_bad_output_in_environment(self, monkeypatch):
        monkeypatch.setenv("NESTLAB_OUTPUT", "xml")
        with pytest.raises(ValueError):
            Config()


class TestLoadFromYaml:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            Config().load_from_yaml(str(tmp_path / "missing.yaml"))

    @pytest.mark.parametrize("text", ["", "- just\n- a list\n"])
    def test_empty_or_not_a_mapping(self, tmp_path, text):
        with pytest.raises(ConfigurationError):
            Config().load_from_yaml(write_yaml(tmp_path, text))

    @pytest.mark.parametrize(
        "body",
        [
            "output: xml",
            "samples: -1",
            "seed: true",
            "epsilons: 1/4",
            "epsilons: [0.5]",
            "inputs: data.json",
            "params: [1, 2]",
        ],
    )
    def test_bad_experiment_values(self, tmp_path, body):
        with pytest.raises(ConfigurationError):
            Config().load_from_yaml(write_yaml(tmp_path, f"experiment:\n  {body}\n"))

    def test_bad_log_level(self, tmp_path):
        with pytest.raises(ConfigurationError):
            Config().load_from_yaml(write_yaml(tmp_path, "logging:\n  level: LOUD\n"))

    def test_experiment_section(self, tmp_path):
        path = write_yaml(
            tmp_path,
            "experiment:\n"
            "  command: concentrate\n"
            "  seed: '0xff'\n"
            "  output: json\n"
            "  samples: 0\n"
            "  epsilons: ['1/4', 1]\n"
            "  inputs: [a.json]\n"
            "  params:\n"
            "    suite: sandwich\n",
        )
        config = Config()
        config.load_from_yaml(path)
        assert config.config_path == path and config.has_experiment_section
        assert config.command == "concentrate"
        assert config.seed == 255
        assert config.output == "json"
        assert config.samples == 0
        assert config.epsilons == ["1/4", "1"]
        assert config.inputs == ["a.json"]
        assert config.params == {"suite": "sandwich"}

    def test_debug_raises_log_level(self, tmp_path):
        config = Config()
        config.load_from_yaml(write_yaml(tmp_path, "debug: true\n"))
        assert config.debug and config.log_level == "DEBUG"
        assert not config.has_experiment_section


class TestCliOverrides:
    def test_explicit_values_win(self, tmp_path):
        config = Config()
        config.load_from_yaml(write_yaml(tmp_path, "experiment:\n  command: rank\n  seed: 1\n"))
        args = CommandLineArgs(
            command="lattice",
            seed=9,
            output="json",
            out="report.json",
            _explicit_args={"seed", "output", "out"},
        )
        config.apply_cli_overrides(args)
        assert (config.command, config.seed, config.output, config.out) == ("lattice", 9, "json", "report.json")

    def test_run_keeps_the_configured_command(self, tmp_path):
        config = Config()
        config.load_from_yaml(write_yaml(tmp_path, "experiment:\n  command: fold\n  seed: 3\n"))
        config.apply_cli_overrides(CommandLineArgs(command="run", seed=None))
        assert config.command == "fold" and config.seed == 3
