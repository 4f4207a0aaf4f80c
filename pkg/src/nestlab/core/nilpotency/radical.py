"""
Levitzki radical of a finite-dimensional matrix algebra.

In finite dimension the Levitzki radical is the largest nilpotent ideal.
It is computed by a chain of trace conditions: I_0 is the radical of the
trace form tr(ax), and for p^i <= n the step keeps the a in I_{i-1} with
tr((ax)~^(p^i)) divisible by p^(i+1) for every x, where ~ lifts entries
to [0, p). The last step is the radical. When p > n only I_0 is needed.

Three small-scale cross-checks stay alongside: the elements acting as
zero on a composition series of F_p^n (found by scanning every vector),
the element-wise criterion (the ideal generated by a is nilpotent) and
the enumeration of all two-sided ideals.
"""

from __future__ import annotations

import itertools

import numpy as np

from nestlab.core.algebra.linear import null_space, stack
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.matrix_span import MatrixSpan
from nestlab.core.errors import ScaleError, StructureError
from nestlab.core.lattice.lattice_ops import annihilator
from nestlab.core.lattice.subspace import Subspace
from nestlab.core.nilpotency.powers import nilpotency_order
from nestlab.core.nilpotency.subring_span import SubringSpan
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)

MAX_ALGEBRA_DIM = 36
MAX_MODULE_VECTORS = 4096
MAX_ORACLE_ELEMENTS = 4096


def submodule(alg: SubringSpan, vectors: np.ndarray, base: Subspace) -> Subspace:
    """base + A*v for every v in `vectors` (A unital, so v itself is included)."""
    n = alg.n
    images = [b.apply(vectors) for b in alg.basis]
    return Subspace.span(alg.field, n, stack([base.basis, vectors, *images], n))


def composition_series(alg: SubringSpan) -> list[Subspace]:
    """
    0 = V_0 < V_1 < ... < V_m = F^n with simple factors V_i / V_{i-1}.

    Each step takes the smallest cyclic submodule over V_i among all
    vectors outside V_i; minimality of dimension makes the factor simple.
    """
    field, n = alg.field, alg.n
    if field.p**n > MAX_MODULE_VECTORS:
        raise ScaleError(f"natural module F_{field.p}^{n} too large to scan")
    vectors = np.array(list(itertools.product(range(field.p), repeat=n)), dtype=np.int64)
    current = Subspace.zero(field, n)
    series = [current]
    while current.dim < n:
        best = None
        for v in vectors:
            if current.contains_vector(v):
                continue
            candidate = submodule(alg, v.reshape(1, n), current)
            if best is None or candidate.dim < best.dim:
                best = candidate
                if best.dim == current.dim + 1:
                    break
        current = best
        series.append(current)
    return series


def _require_unital(alg: SubringSpan) -> None:
    if alg.dim > MAX_ALGEBRA_DIM:
        raise ScaleError(f"algebra dimension {alg.dim} exceeds {MAX_ALGEBRA_DIM}")
    if not alg.span.contains(MatrixFp.identity(alg.field, alg.n)):
        raise StructureError("the Levitzki radical is computed for unital algebras only")


def lifted_trace_power(a: MatrixFp, exponent: int, modulus: int) -> int:
    """tr(a~^exponent) mod `modulus`, a~ the lift of a with entries in [0, p)."""
    result = np.eye(a.n, dtype=np.int64)
    base = a.entries.astype(np.int64) % modulus
    while exponent:
        if exponent & 1:
            result = (result @ base) % modulus
        base = (base @ base) % modulus
        exponent >>= 1
    return int(np.trace(result)) % modulus


def trace_chain(alg: SubringSpan) -> list[MatrixSpan]:
    """
    I_0 > I_1 > ... > I_l for l = floor(log_p n); I_l is Lev(A).

    On I_{i-1} the map a -> (tr(a~^(p^i)) mod p^(i+1)) / p^i is F_p-linear,
    so each step is a null space over the current basis.
    """
    _require_unital(alg)
    p, n = alg.field.p, alg.n
    chain: list[MatrixSpan] = []
    current = alg.span
    step = 1
    while step <= n:
        power, modulus = step, step * p
        basis = current.basis
        if basis:
            rows = []
            for x in alg.basis:
                row = []
                for u in basis:
                    t = lifted_trace_power(u @ x, power, modulus)
                    assert t % power == 0
                    row.append(t // power)
                rows.append(row)
            coords = null_space(np.array(rows, dtype=np.int64), p, len(basis))
            current = MatrixSpan.of([current.combine(c) for c in coords], alg.field, n)
        chain.append(current)
        step *= p
    return chain


def levitzki_radical(alg: SubringSpan) -> SubringSpan:
    """Lev(A) as a two-sided ideal of A; A must contain the identity."""
    chain = trace_chain(alg)
    radical = SubringSpan(chain[-1], ambient=alg.span)
    assert nilpotency_order(radical) is not None
    logger.debug(
        f"Levitzki radical of a dim-{alg.dim} algebra over F_{alg.field.p} has dim {radical.dim} "
        f"after {len(chain)} trace steps"
    )
    return radical


def radical_by_composition(alg: SubringSpan) -> MatrixSpan:
    """Elements of A acting as zero on every composition factor of F_p^n."""
    _require_unital(alg)
    p = alg.field.p
    series = composition_series(alg)
    basis = alg.basis

    # coordinates c with (sum c_j b_j) V_i inside V_{i-1} for every i
    columns = []
    for b in basis:
        conditions = []
        for lower, upper in zip(series, series[1:]):
            q = annihilator(lower).basis
            if q.shape[0] == 0:
                continue
            conditions.append(((q @ b.entries @ upper.basis.T) % p).reshape(-1))
        columns.append(np.concatenate(conditions) if conditions else np.zeros(0, dtype=np.int64))
    system = np.stack(columns, axis=1) if basis else np.zeros((0, 0), dtype=np.int64)

    if system.shape[0] == 0:
        coords = np.eye(len(basis), dtype=np.int64)
    else:
        coords = null_space(system, p, len(basis))
    return MatrixSpan.of([alg.span.combine(c) for c in coords], alg.field, alg.n)


def generated_ideal(a: MatrixFp, alg: SubringSpan) -> MatrixSpan:
    """Two-sided ideal of A generated by a."""
    basis = alg.basis
    mats = [a] + [x @ a for x in basis] + [a @ y for y in basis]
    mats += [x @ a @ y for x in basis for y in basis]
    return MatrixSpan.of(mats, alg.field, alg.n)


def levitzki_elementwise(alg: SubringSpan) -> MatrixSpan:
    """Span of all a whose generated ideal is nilpotent."""
    if alg.span.size() > MAX_ORACLE_ELEMENTS:
        raise ScaleError("algebra too large for the element-wise criterion")
    members = [
        a
        for a in alg.span.elements()
        if nilpotency_order(SubringSpan(generated_ideal(a, alg))) is not None
    ]
    return MatrixSpan.of(members, alg.field, alg.n)


def enumerate_ideals(alg: SubringSpan) -> list[MatrixSpan]:
    """Every two-sided ideal, as sums of principal ideals."""
    if alg.span.size() > MAX_ORACLE_ELEMENTS:
        raise ScaleError("algebra too large for ideal enumeration")
    principal = list(dict.fromkeys(generated_ideal(a, alg) for a in alg.span.elements()))
    ideals = set(principal)
    frontier = list(principal)
    while frontier:
        fresh = []
        for i in frontier:
            for j in principal:
                s = i + j
                if s not in ideals:
                    ideals.add(s)
                    fresh.append(s)
        frontier = fresh
    return sorted(ideals, key=lambda s: (s.dim, s.pivots, s.rows.tobytes()))


def largest_nilpotent_ideal(alg: SubringSpan) -> MatrixSpan:
    """Oracle: the largest nilpotent ideal among all enumerated ideals."""
    nilpotent = [
        i for i in enumerate_ideals(alg) if nilpotency_order(SubringSpan(i)) is not None
    ]
    return max(nilpotent, key=lambda s: s.dim)


__all__ = [
    "composition_series",
    "enumerate_ideals",
    "generated_ideal",
    "largest_nilpotent_ideal",
    "levitzki_elementwise",
    "levitzki_radical",
    "lifted_trace_power",
    "radical_by_composition",
    "trace_chain",
]
