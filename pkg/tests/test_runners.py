import asyncio
from fractions import Fraction
from pathlib import Path

import pytest

from nestlab.core.errors import ConfigurationError
from nestlab.models.experiment_config import ExperimentConfig
from nestlab.services.experiment_service import RUNNERS
from nestlab.services.runners.concentrate_runner import AZUMA_COLUMNS

DATA = Path(__file__).resolve().parents[1] / "configs" / "data"
EPSILONS = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2))


def run(command: str, samples=None, seed=None, inputs=(), **params):
    ctx = ExperimentConfig(
        command=command,
        inputs=tuple(str(DATA / name) for name in inputs),
        epsilons=EPSILONS,
        samples=samples,
        seed=seed,
        params=params,
    )
    return asyncio.run(RUNNERS[command](ctx).run())


def assert_clean(report):
    assert report.rows
    assert report.violations == 0, report.failed_checks()


class TestRegistry:
    def test_every_command_has_a_runner(self):
        assert set(RUNNERS) == {
            "rank",
            "lattice",
            "nest",
            "envelope",
            "triangularize",
            "levitzki",
            "chain-length",
            "concentrate",
            "fold",
        }


class TestSmallRuns:
    def test_rank(self):
        report = run("rank", samples=5, seed=7, inputs=["companion_f2.json", "shear_f2.json"], p=3, n=3)
        assert_clean(report)
        assert {row["check"] for row in report.rows} >= {"rho_at_most_one", "cayley_hamilton"}

    def test_lattice(self):
        assert_clean(run("lattice", samples=5, seed=11, suites=["laws", "hull"], p=2, n=3, hull_p=2, hull_n=3))

    def test_nest(self):
        report = run("nest", p=2, n=2)
        assert_clean(report)
        count = next(row for row in report.rows if row["check"] == "idempotent_count")
        assert count["lhs"] == 8

    def test_envelope(self):
        assert_clean(run("envelope", inputs=["unitriangular_f2.json"], p=2, n=3))

    def test_triangularize(self):
        report = run("triangularize", samples=5, seed=17, inputs=["companion_f2.json"], p=3, n=2)
        assert_clean(report)
        first = [row for row in report.rows if row["trial"] == 0]
        assert first[0]["check"] == "non_split"
        assert first[0]["context"]["factor"] == "X^2 + X + 1"

    def test_levitzki(self):
        assert_clean(run("levitzki", inputs=["block_span_f2.json"], p=2, sizes=[2]))

    def test_levitzki_cross_checks_composition_series(self):
        report = run("levitzki", p=2, sizes=[2, 3])
        assert_clean(report)
        assert sum(row["check"] == "radical_composition" for row in report.rows) == 2

    def test_levitzki_large_prime(self):
        report = run("levitzki", p=67, sizes=[2])
        assert_clean(report)
        checks = {row["check"] for row in report.rows}
        assert "radical_strict_upper" in checks and "radical_composition" not in checks

    def test_chain_length(self):
        assert_clean(run("chain-length", samples=3, seed=19, inputs=["z4_chain.json"], max_order=32))

    def test_azuma(self):
        report = run("concentrate", samples=2, seed=23, suite="azuma", dims=[4], anchors=2)
        assert report.columns == AZUMA_COLUMNS
        assert_clean(report)
        weight = [row for row in report.rows if row["function"] == "weight"]
        assert [row["tail"] for row in weight] == [Fraction(5, 8), Fraction(5, 8), Fraction(1, 8)]

    def test_sandwich(self):
        assert_clean(run("concentrate", samples=5, seed=29, suite="sandwich"))

    def test_convolution(self):
        assert_clean(run("concentrate", samples=3, seed=31, suite="convolution", symmetric_k=3))

    def test_fold(self):
        assert_clean(run("fold", p=2, sizes=[2, 3]))


class TestDeterminism:
    def test_same_seed_same_rows(self):
        first = run("concentrate", samples=4, seed=29, suite="sandwich")
        second = run("concentrate", samples=4, seed=29, suite="sandwich")
        assert first.rows == second.rows

    def test_seed_changes_the_sample(self):
        first = run("concentrate", samples=4, seed=1, suite="sandwich")
        second = run("concentrate", samples=4, seed=2, suite="sandwich")
        assert first.rows != second.rows


class TestParams:
    @pytest.mark.parametrize(
        "command, params",
        [
            ("nest", {"n": 0}),
            ("nest", {"p": True}),
            ("fold", {"sizes": []}),
            ("concentrate", {"suite": "poisson"}),
            ("concentrate", {"suite": "azuma", "dims": [0]}),
        ],
    )
    def test_bad_params(self, command, params):
        with pytest.raises(ConfigurationError):
            run(command, samples=0, **params)


@pytest.mark.slow
class TestAcceptance:
    """The shipped experiment configurations at full size."""

    def test_triangularize_full(self):
        assert_clean(run("triangularize", samples=200, seed=17, inputs=["companion_f2.json"], p=3, n=3))

    def test_nest_m3_f2(self):
        assert_clean(run("nest", p=2, n=3))

    def test_fold_full(self):
        assert_clean(run("fold", p=2, sizes=[2, 3, 4]))

    def test_azuma_full(self):
        assert_clean(run("concentrate", samples=200, seed=23, suite="azuma", dims=[4, 8, 12]))
