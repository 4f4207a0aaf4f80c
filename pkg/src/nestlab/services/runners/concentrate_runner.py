from fractions import Fraction
from typing import Any

import numpy as np

from nestlab.core.concentration.bounds import (
    FLOAT_SLACK,
    azuma_bound_sq,
    chebyshev_sandwich,
    concentration_profile,
    diameter_lemma_check,
    markov_check,
)
from nestlab.core.concentration.chains import SubgroupChain, chain_length
from nestlab.core.concentration.convolution import (
    associativity_check,
    contraction_check,
    convolve_function,
    duality_check,
    haar_absorbs_check,
    haar_flattens_check,
    haar_mean,
    mean_convolution,
    point_mass_check,
    random_mean,
    subgroup_haar,
)
from nestlab.core.concentration.exact_vectors import GroupFunction, RationalVector
from nestlab.core.concentration.lipschitz import is_lipschitz, lipschitz_regularize, random_lipschitz_function
from nestlab.core.concentration.metric_group import (
    FiniteMetricGroup,
    cyclic_group,
    seeded_word_metric,
    symmetric_group,
)
from nestlab.core.concentration.products import coordinate_chain, hypercube, partial_sum_function
from nestlab.core.errors import ConfigurationError
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)

AZUMA_COLUMNS = (
    "trial",
    "group",
    "chain",
    "n_steps",
    "function",
    "epsilon",
    "ell_sq",
    "tail",
    "azuma",
    "chebyshev",
    "pass",
)

SUITES = ("azuma", "sandwich", "convolution")


def azuma_rows(
    g: FiniteMetricGroup,
    chain: SubgroupChain,
    ell_sq: Fraction,
    f: GroupFunction,
    function: str,
    epsilons,
) -> list[dict[str, Any]]:
    """One row per epsilon: exact tail under Haar against the Azuma and Chebyshev bounds."""
    mu = haar_mean(g)
    rows = []
    for eps in epsilons:
        profile = concentration_profile(g, mu, f, eps)
        azuma = azuma_bound_sq(eps, ell_sq)
        chebyshev = profile.variance / (eps * eps)
        rows.append(
            {
                "group": g.name,
                "chain": chain.describe(),
                "n_steps": chain.steps,
                "function": function,
                "epsilon": eps,
                "ell_sq": ell_sq,
                "tail": profile.tail,
                "azuma": azuma,
                "chebyshev": chebyshev,
                "pass": profile.tail <= azuma + FLOAT_SLACK and profile.tail <= chebyshev,
            }
        )
    return rows


def weight_function(n: int) -> GroupFunction:
    """x -> (number of ones in x) / n on Z_2^n."""
    return partial_sum_function(GroupFunction.of([0, 1]), n, n)


def sandwich_group(rng: np.random.Generator) -> FiniteMetricGroup:
    """A small group with a seeded choice of right-invariant metric."""
    kind = int(rng.integers(5))
    if kind == 0:
        return cyclic_group(int(rng.integers(2, 9)), "word")
    if kind == 1:
        return cyclic_group(int(rng.integers(2, 9)), "discrete")
    if kind == 2:
        return symmetric_group(3, "transpositions")
    if kind == 3:
        return seeded_word_metric(symmetric_group(3), rng)
    return hypercube(int(rng.integers(2, 5)))


def subgroup_invariant_function(g: FiniteMetricGroup, members: np.ndarray, anchor: int) -> GroupFunction:
    """x -> min over h in H of d(x h, anchor); 1-Lipschitz and right H-invariant."""
    dist = g.distances_from(anchor)
    best = None
    for h in members:
        shifted = dist.take(g.mul(g.elements, int(h)))
        best = shifted if best is None else best.minimum(shifted)
    return GroupFunction(best)


class ConcentrateRunner(ExperimentRunner):
    """
    Concentration of invariant means on finite metric groups.

    suite "azuma": Haar tails of Lipschitz functions on hypercubes and
    input groups against 2 exp(-eps^2 / 2 ell^2), one row per epsilon.
    suite "sandwich": Chebyshev, reverse Chebyshev, Markov and Lipschitz
    regularization on seeded (group, mean, function, epsilon) tuples.
    suite "convolution": the convolution algebra of means on S_k.
    """

    command = "concentrate"

    async def run(self) -> ExperimentReport:
        suite = self.choice_param("suite", "azuma", SUITES)
        logger.info(f"🎯 concentrate: suite {suite}")
        if suite == "azuma":
            return await self._azuma()
        if suite == "sandwich":
            return self.checks_report(await self._sandwich())
        return self.checks_report(await self._convolution())

    # ---------- azuma ----------

    async def _azuma(self) -> ExperimentReport:
        dims = self.list_param("dims", [4, 8, 12])
        anchors = self.int_param("anchors", 4, minimum=1)
        resolution = self.int_param("resolution", 16, minimum=1)
        count = self.ctx.sample_count(200)
        epsilons = self.ctx.epsilons

        targets: list[tuple[FiniteMetricGroup, SubgroupChain, list[tuple[str, GroupFunction]]]] = []
        for n in dims:
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ConfigurationError("params.dims must list positive integers")
            g = hypercube(n)
            fixed = [("weight", weight_function(n))]
            if n > 1:
                fixed.append((f"partial_{n // 2}", partial_sum_function(GroupFunction.of([0, 1]), n, n // 2)))
            targets.append((g, coordinate_chain(g), fixed))
        for path in self.ctx.inputs:
            g, chain = self.loader.load_metric_group(path)
            targets.append((g, chain or SubgroupChain.trivial(g), []))

        rows: list[dict[str, Any]] = []
        trial = 0
        for stream, (g, chain, fixed) in enumerate(targets):
            ell_sq = chain_length(g, chain).radicand
            logger.info(f"🎯 {g.name}: chain {chain.describe()}, ell^2 = {ell_sq}, {count} functions")

            def sample(i: int, rng: np.random.Generator, g=g, chain=chain, ell_sq=ell_sq):
                f = random_lipschitz_function(g, rng, anchors, resolution)
                return azuma_rows(g, chain, ell_sq, f, f"lip#{i}", epsilons)

            batches = [azuma_rows(g, chain, ell_sq, f, name, epsilons) for name, f in fixed]
            batches += await self.map_trials(sample, count, stream=stream)
            for batch in batches:
                rows += [{"trial": trial, **row} for row in batch]
                trial += 1
        return ExperimentReport(self.command, AZUMA_COLUMNS, tuple(rows))

    # ---------- sandwich ----------

    async def _sandwich(self) -> list[Trial]:
        epsilons = self.ctx.epsilons

        def sample(i: int, rng: np.random.Generator) -> list[Trial]:
            g = sandwich_group(rng)
            mu = random_mean(g, rng)
            f = random_lipschitz_function(g, rng)
            eps = epsilons[int(rng.integers(len(epsilons)))]
            ctx = {"group": g.name, "epsilon": str(eps)}
            rows = chebyshev_sandwich(g, mu, f, eps) + [markov_check(mu, f)]

            # perturb by at most eps / 2: 1-Lipschitz up to eps
            noise = RationalVector.from_ints(
                rng.integers(0, eps.numerator + 1, size=g.order), 2 * eps.denominator
            )
            rough = GroupFunction((f.values + noise).clip(0, 1))
            smooth = lipschitz_regularize(g, rough, 1, eps, (0, 1))
            rows += [
                CheckRow.leq("regularize_distance", (rough - smooth).sup_norm(), eps),
                CheckRow.holds("regularize_lipschitz", is_lipschitz(smooth, g)),
            ]
            return tag(i, [row.with_context(**ctx) for row in rows])

        count = self.ctx.sample_count(100)
        trials: list[Trial] = []
        for rows in await self.map_trials(sample, count):
            trials += rows
        return trials

    # ---------- convolution ----------

    async def _convolution(self) -> list[Trial]:
        k = self.int_param("symmetric_k", 3, minimum=2)
        base = symmetric_group(k)

        def point_masses(_i: int, rng: np.random.Generator) -> list[Trial]:
            g = seeded_word_metric(base, rng)
            return tag(0, [point_mass_check(g, x, y) for x in g.elements for y in g.elements])

        def sample(i: int, rng: np.random.Generator) -> list[Trial]:
            g = seeded_word_metric(base, rng)
            mu, nu, kappa = (random_mean(g, rng) for _ in range(3))
            f = random_lipschitz_function(g, rng)
            rows = [
                haar_absorbs_check(g, nu),
                haar_flattens_check(g, f),
                duality_check(mu, nu, f, g),
                associativity_check(mu, nu, kappa, g),
                contraction_check(mu, f, g),
                CheckRow.holds("convolution_lipschitz", is_lipschitz(convolve_function(mu, f, g), g)),
            ]

            # H = <x> for a seeded x; Haar on H absorbs every mean on H
            x = int(rng.integers(1, g.order)) if g.order > 1 else 0
            h_sub = g.closure([x])
            h_haar = subgroup_haar(g, h_sub)
            nu_h = random_mean(g, rng, support=h_sub)
            rows.append(
                CheckRow.holds("subgroup_haar_absorbs", mean_convolution(nu_h, h_haar, g) == h_haar)
            )

            # {e} <= H and H-invariant functions <= the whole group
            trivial = [g.identity]
            rows += diameter_lemma_check(g, f, nu_h, trivial, h_sub)
            anchor = int(rng.integers(g.order))
            invariant = subgroup_invariant_function(g, h_sub, anchor)
            rows += diameter_lemma_check(g, invariant, random_mean(g, rng), h_sub, g.elements)
            norm = " ".join(g.norm.to_strings())
            return tag(i + 1, [row.with_context(norm=norm) for row in rows])

        count = self.ctx.sample_count(50)
        trials = (await self.map_trials(point_masses, 1, stream=1))[0]
        for rows in await self.map_trials(sample, count):
            trials += rows
        return trials
