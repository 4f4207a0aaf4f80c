from fractions import Fraction

import numpy as np

from nestlab.core.concentration.chains import (
    ChainLength,
    SubgroupChain,
    chain_length,
    coset_quotient_diameter,
    homogeneity_check,
)
from nestlab.core.concentration.metric_group import FiniteMetricGroup, cyclic_group, symmetric_group
from nestlab.core.concentration.products import build_product_chain, product_step_checks
from nestlab.logsys.logger_manager import LoggerManager
from nestlab.models.check_row import CheckRow
from nestlab.models.experiment_report import ExperimentReport
from nestlab.services.runners.base_runner import ExperimentRunner, Trial, tag

logger = LoggerManager.get_logger(__name__)

# (name, constructor, metrics it can carry)
COMPONENTS = (
    ("Z2", lambda metric: cyclic_group(2, metric), ("word", "discrete")),
    ("Z3", lambda metric: cyclic_group(3, metric), ("word", "discrete")),
    ("Z4", lambda metric: cyclic_group(4, metric), ("word", "discrete")),
    ("S3", lambda metric: symmetric_group(3, metric), ("discrete", "transpositions")),
)
SCALES = (Fraction(1, 2), Fraction(2), Fraction(3, 2))


def length_checks(g: FiniteMetricGroup, chain: SubgroupChain, length: ChainLength) -> list[CheckRow]:
    """Float root brackets the exact radicand; each step is at most diam(G)."""
    diam = g.diameter()
    rows = [
        CheckRow.holds(
            "length_root_bracket",
            Fraction(length.lower) ** 2 <= length.radicand <= Fraction(length.upper) ** 2,
            value=length.value,
        ),
        CheckRow.leq("length_vs_diameter", length.radicand, chain.steps * diam * diam, chain=chain.describe()),
    ]
    if g.bi_invariant and g.table is not None:
        # bi-invariant: every base gives the same quotient diameter
        same = all(
            coset_quotient_diameter(g, lo, hi, b) == d
            for (lo, hi), d in zip(zip(chain.members, chain.members[1:]), length.step_diameters)
            for b in g.elements
        )
        rows.append(CheckRow.holds("bi_invariant_bases", same, group=g.name))
    return rows


class ChainLengthRunner(ExperimentRunner):
    """
    Exact amenable length of subgroup chains: seeded weighted products
    of small groups with their coordinate chains, then input groups.
    """

    command = "chain-length"

    async def run(self) -> ExperimentReport:
        max_factors = self.int_param("max_factors", 4, minimum=1)
        max_order = self.int_param("max_order", 256, minimum=2)
        max_weight = self.int_param("max_weight", 4, minimum=1)

        trials: list[Trial] = []
        offset = 0
        for path in self.ctx.inputs:
            g, chain = self.loader.load_metric_group(path)
            chain = chain or SubgroupChain.trivial(g)
            length = chain_length(g, chain)
            rows = length_checks(g, chain, length) + [homogeneity_check(g, chain, t) for t in SCALES]
            trials += tag(offset, [row.with_context(group=path) for row in rows])
            offset += 1

        def sample(i: int, rng: np.random.Generator) -> list[Trial]:
            k = int(rng.integers(1, max_factors + 1))
            components, weights, order = [], [], 1
            for _ in range(k):
                _name, build, metrics = COMPONENTS[int(rng.integers(len(COMPONENTS)))]
                metric = metrics[int(rng.integers(len(metrics)))]
                factor = build(metric)
                if components and order * factor.order > max_order:
                    break
                components.append(factor)
                weights.append(Fraction(int(rng.integers(1, max_weight + 1)), int(rng.integers(1, max_weight + 1))))
                order *= factor.order
            g, chain = build_product_chain(components, weights)
            length = chain_length(g, chain)
            t = SCALES[int(rng.integers(len(SCALES)))]
            rows = product_step_checks(g, chain, length) + length_checks(g, chain, length)
            rows.append(homogeneity_check(g, chain, t))
            return tag(offset + i, [row.with_context(product=g.name) for row in rows])

        count = self.ctx.sample_count(50)
        logger.info(f"⛓️ chain-length: {offset} input groups, {count} seeded product chains")
        for rows in await self.map_trials(sample, count):
            trials += rows
        return self.checks_report(trials)
