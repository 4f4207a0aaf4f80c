from __future__ import annotations

from dataclasses import dataclass

from nestlab.core.errors import ArgumentError, DimensionMismatchError

MAX_PRIME = 251


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True, slots=True)
class FieldSpec:
    """
    The prime field F_p, 2 <= p <= 251.
    """

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ArgumentError(f"field modulus must be an integer, got {self.p!r}")
        if not 2 <= self.p <= MAX_PRIME:
            raise ArgumentError(f"field modulus {self.p} outside [2, {MAX_PRIME}]")
        if not _is_prime(self.p):
            raise ArgumentError(f"field modulus {self.p} is not prime")

    def reduce(self, x: int) -> int:
        return int(x) % self.p

    def inv(self, x: int) -> int:
        x = self.reduce(x)
        if x == 0:
            raise ArgumentError("zero has no inverse")
        return pow(x, self.p - 2, self.p)

    def neg(self, x: int) -> int:
        return (-int(x)) % self.p

    def residues(self) -> range:
        return range(self.p)

    def require_same(self, other: "FieldSpec") -> None:
        if self.p != other.p:
            raise DimensionMismatchError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __str__(self) -> str:
        return f"F_{self.p}"
