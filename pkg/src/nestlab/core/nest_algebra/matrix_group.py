from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from typing import Any, Iterable, Optional, Sequence

from nestlab.core.algebra.char_poly import inverse
from nestlab.core.algebra.field_spec import FieldSpec
from nestlab.core.algebra.matrix_fp import MatrixFp
from nestlab.core.algebra.rank import rank_of
from nestlab.core.errors import (
    DimensionMismatchError,
    ScaleError,
    SingularMatrixError,
    StructureError,
)
from nestlab.logsys.logger_manager import LoggerManager

logger = LoggerManager.get_logger(__name__)

MAX_GROUP_ORDER = 1 << 14


@dataclass(frozen=True, eq=False)
class FiniteMatrixGroup:
    """
    A finite group of invertible matrices, held as an explicit element list.

    Elements are unique; the identity is present and the set is closed
    under products and inverses (checked on construction unless the
    caller already knows it, e.g. images of homomorphisms).
    """

    field: FieldSpec
    n: int
    elements: tuple[MatrixFp, ...]
    generators: Optional[tuple[MatrixFp, ...]] = None
    _index: dict[MatrixFp, int] = dataclass_field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        index: dict[MatrixFp, int] = {}
        for i, g in enumerate(self.elements):
            self.field.require_same(g.field)
            if g.n != self.n:
                raise DimensionMismatchError(f"group element of size {g.n} in GL_{self.n}")
            index.setdefault(g, i)
        if len(index) != len(self.elements):
            raise StructureError("group elements must be distinct")
        object.__setattr__(self, "_index", index)

    # ---------- Construction ----------

    @classmethod
    def of(cls, elements: Iterable[MatrixFp], verify: bool = True) -> "FiniteMatrixGroup":
        elems = list(dict.fromkeys(elements))
        if not elems:
            raise StructureError("a group needs at least the identity")
        group = cls(elems[0].field, elems[0].n, tuple(elems))
        if verify:
            group.verify()
        return group

    @classmethod
    def from_generators(
        cls,
        generators: Sequence[MatrixFp],
        field: Optional[FieldSpec] = None,
        n: Optional[int] = None,
    ) -> "FiniteMatrixGroup":
        """Breadth-first closure of the generators under right multiplication."""
        gens = list(generators)
        if gens:
            field, n = gens[0].field, gens[0].n
        if field is None or n is None:
            raise StructureError("an empty generator list needs a field and size")
        for g in gens:
            if rank_of(g) < n:
                raise SingularMatrixError("group generators must be invertible")
        one = MatrixFp.identity(field, n)
        seen = {one: None}
        queue = deque([one])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = x @ g
                if y not in seen:
                    if len(seen) >= MAX_GROUP_ORDER:
                        raise ScaleError(f"generated group exceeds {MAX_GROUP_ORDER} elements")
                    seen[y] = None
                    queue.append(y)
        group = cls(field, n, tuple(seen), tuple(gens))
        logger.debug(f"closure of {len(gens)} generators has order {group.order}")
        return group

    @classmethod
    def trivial(cls, field: FieldSpec, n: int) -> "FiniteMatrixGroup":
        return cls(field, n, (MatrixFp.identity(field, n),))

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "FiniteMatrixGroup":
        """
        Parse {"p", "n", "elements": [...]} or {"p", "n", "generators": [...]}.
        Matrix entries may be given as bare row lists.
        """
        try:
            field_spec = FieldSpec(int(payload["p"]))
            n = int(payload["n"])
        except (KeyError, TypeError) as exc:
            raise StructureError(f"malformed group payload: {exc}") from exc

        def parse(item):
            rows = item["entries"] if isinstance(item, dict) else item
            m = MatrixFp.from_rows(field_spec, rows)
            if m.n != n:
                raise DimensionMismatchError(f"group element of size {m.n} in GL_{n}")
            return m

        if "elements" in payload:
            return cls.of([parse(x) for x in payload["elements"]])
        if "generators" in payload:
            return cls.from_generators([parse(x) for x in payload["generators"]], field_spec, n)
        raise StructureError("group payload needs 'elements' or 'generators'")

    def to_payload(self) -> dict[str, Any]:
        return {
            "p": self.field.p,
            "n": self.n,
            "elements": [g.entries.tolist() for g in self.elements],
        }

    # ---------- Structure ----------

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> MatrixFp:
        return MatrixFp.identity(self.field, self.n)

    def index(self, g: MatrixFp) -> int:
        return self._index[g]

    def __contains__(self, g: MatrixFp) -> bool:
        return g in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def element_set(self) -> frozenset[MatrixFp]:
        return frozenset(self.elements)

    def verify(self) -> None:
        if self.identity not in self:
            raise StructureError("identity missing from group")
        for g in self.elements:
            if rank_of(g) < self.n:
                raise StructureError("group contains a singular matrix")
            if inverse(g) not in self:
                raise StructureError("group not closed under inverses")
        for g in self.elements:
            for h in self.elements:
                if g @ h not in self:
                    raise StructureError("group not closed under products")

    def is_subgroup_of(self, other: "FiniteMatrixGroup") -> bool:
        return all(g in other for g in self.elements)

    def conjugate(self, a: MatrixFp) -> "FiniteMatrixGroup":
        """a G a^{-1}."""
        a_inv = inverse(a)
        return FiniteMatrixGroup.of((a @ g @ a_inv for g in self.elements), verify=False)

    def image(self, fn) -> "FiniteMatrixGroup":
        """Image under a homomorphism `fn`."""
        return FiniteMatrixGroup.of((fn(g) for g in self.elements), verify=False)

    def is_abelian(self) -> bool:
        return all(g @ h == h @ g for g in self.elements for h in self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteMatrixGroup):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.element_set() == other.element_set()

    def __hash__(self) -> int:
        return hash((self.field.p, self.n, self.element_set()))

    def __repr__(self) -> str:
        return f"FiniteMatrixGroup(p={self.field.p}, n={self.n}, order={self.order})"
