import pytest

from nestlab.models.exit_code import ExitCode
from nestlab.runtime.command_line import EXPERIMENT_COMMANDS, CommandLine
from nestlab.utils.arg_utils import was_explicit


class TestParseArguments:
    def test_experiment_subcommand(self):
        args = CommandLine.parse_arguments(["rank", "--seed", "7"])
        assert args.command == "rank" and args.seed == 7
        assert was_explicit(args, "seed")
        assert not was_explicit(args, "output")

    def test_equals_form_counts_as_explicit(self):
        args = CommandLine.parse_arguments(["concentrate", "--output=json", "--seed=0x10"])
        assert args.output == "json" and args.seed == 16
        assert was_explicit(args, "output") and was_explicit(args, "seed")

    def test_run_with_config(self):
        args = CommandLine.parse_arguments(["run", "--config", "configs/config.yaml", "--debug"])
        assert args.config == "configs/config.yaml" and args.debug

    @pytest.mark.parametrize("command", sorted(EXPERIMENT_COMMANDS))
    def test_every_command_parses(self, command):
        assert CommandLine.parse_arguments([command]).command == command

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["run"],
            ["rank", "--output", "xml"],
            ["rank", "--seed", "-3"],
            ["unknown"],
        ],
    )
    def test_invalid_invocations_exit_with_invalid_input(self, argv):
        with pytest.raises(SystemExit) as info:
            CommandLine.parse_arguments(argv)
        assert info.value.code == ExitCode.INVALID_INPUT
