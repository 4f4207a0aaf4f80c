import asyncio
import json
from pathlib import Path

import pytest

from nestlab.launch_host import launch_async
from nestlab.models.check_row import CheckRow
from nestlab.models.exit_code import ExitCode
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services import experiment_service
from nestlab.services.runners.base_runner import ExperimentRunner

COMPANION = Path(__file__).resolve().parents[1] / "configs" / "data" / "companion_f2.json"


def launch(*argv: str) -> int:
    return asyncio.run(launch_async(list(argv)))


def write_config(tmp_path, text: str) -> str:
    path = tmp_path / "experiment.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


def companion_config(tmp_path) -> str:
    return write_config(
        tmp_path,
        "experiment:\n"
        "  command: triangularize\n"
        "  samples: 0\n"
        f"  inputs: ['{COMPANION}']\n"
        "  params:\n"
        "    exhaustive_n: 0\n",
    )


class FailingRunner(ExperimentRunner):
    command = "fold"

    async def run(self) -> ExperimentReport:
        return self.checks_report([(0, CheckRow.leq("always_fails", 2, 1))])


class TestExitCodes:
    def test_empty_config_is_invalid_input(self, tmp_path):
        assert launch("run", "--config", write_config(tmp_path, "")) == ExitCode.INVALID_INPUT

    def test_missing_config_is_invalid_input(self, tmp_path):
        assert launch("run", "--config", str(tmp_path / "nope.yaml")) == ExitCode.INVALID_INPUT

    def test_sampled_command_without_seed(self):
        assert launch("rank") == ExitCode.INVALID_INPUT

    def test_missing_input_file(self, tmp_path):
        path = write_config(tmp_path, "experiment:\n  command: rank\n  samples: 0\n  inputs: [missing.json]\n")
        assert launch("run", "--config", path) == ExitCode.INVALID_INPUT

    def test_companion_run(self, tmp_path, capsys):
        assert launch("run", "--config", companion_config(tmp_path)) == ExitCode.OK
        out = capsys.readouterr().out
        assert out.startswith("trial,check,")
        assert "non_split" in out

    def test_json_report_to_file(self, tmp_path):
        out = tmp_path / "report.json"
        code = launch("run", "--config", companion_config(tmp_path), "--output", "json", "--out", str(out))
        assert code == ExitCode.OK
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["command"] == "triangularize"
        assert payload["summary"]["violations"] == 0

    def test_violation(self, monkeypatch, capsys):
        monkeypatch.setitem(experiment_service.RUNNERS, "fold", FailingRunner)
        assert launch("fold") == ExitCode.VIOLATION
        assert "always_fails" in capsys.readouterr().out

    def test_bad_cli_flag(self):
        with pytest.raises(SystemExit) as info:
            launch("fold", "--output", "yaml")
        assert info.value.code == ExitCode.INVALID_INPUT
