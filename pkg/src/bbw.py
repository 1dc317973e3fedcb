"""
Borel-Bott-Weil Cohomology
Line bundles on the full flag variety and equivariant bundles
Σ^β U* ⊗ Σ^γ U^⊥ on Gr(k, n); Weyl dimension formula.

Weights are integer tuples. Results follow the V* convention: a nonzero
result H^degree = Σ^{rep_weight} V*.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from src.exceptions import PreconditionError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Weight = Tuple[int, ...]


@dataclass(frozen=True)
class BottResult:
    """Either Zero (degree is None) or a single irreducible in one degree"""

    degree: Optional[int] = None
    rep_weight: Optional[Weight] = None

    @classmethod
    def zero(cls) -> "BottResult":
        return cls()

    @property
    def is_zero(self) -> bool:
        return self.degree is None

    @property
    def dimension(self) -> int:
        return 0 if self.is_zero else weyl_dim(self.rep_weight)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"H^{self.degree} = Σ^{self.rep_weight} V*"


def is_dominant(w: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(w, w[1:]))


def rho(m: int) -> Weight:
    return tuple(range(m, 0, -1))


def cohomology_flag(alpha: Sequence[int]) -> BottResult:
    """
    Cohomology of the line bundle L_α on the flag variety of GL(n)

    Zero when α+ρ has a repeated entry; otherwise it sits in the degree equal
    to the number of inversions of α+ρ, with weight sort(α+ρ) - ρ.
    """
    alpha = tuple(int(a) for a in alpha)
    r = rho(len(alpha))
    shifted = [a + b for a, b in zip(alpha, r)]
    if len(set(shifted)) < len(shifted):
        return BottResult.zero()
    degree = sum(
        1
        for i in range(len(shifted))
        for j in range(i + 1, len(shifted))
        if shifted[i] < shifted[j]
    )
    ordered = sorted(shifted, reverse=True)
    return BottResult(degree, tuple(a - b for a, b in zip(ordered, r)))


def cohomology_grass(beta: Sequence[int], gamma: Sequence[int]) -> BottResult:
    """H^•(Gr(k, n), Σ^β U* ⊗ Σ^γ U^⊥) for k = len(β), n - k = len(γ)"""
    if not is_dominant(beta) or not is_dominant(gamma):
        raise PreconditionError(
            f"Both factors must be nonincreasing, got {tuple(beta)} and {tuple(gamma)}"
        )
    return cohomology_flag(tuple(beta) + tuple(gamma))


def schur_u_star_cohomology(alpha: Sequence[int], t: int, n: int) -> BottResult:
    """H^•(Gr(k, n), Σ^α U*(-t))"""
    k = len(alpha)
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"Weight of length {k} does not fit Gr({k},{n})")
    return cohomology_grass(tuple(a - t for a in alpha), (0,) * (n - k))


def weyl_dim(w: Sequence[int]) -> int:
    """Dimension of the irreducible GL(m)-representation of dominant weight w"""
    w = tuple(w)
    if not is_dominant(w):
        raise PreconditionError(f"weyl_dim needs a dominant weight, got {w}")
    value = Fraction(1)
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            value *= Fraction(w[i] - w[j] + j - i, j - i)
    return int(value)


def euler_characteristic_flag(alpha: Sequence[int]) -> int:
    """
    Signed Weyl polynomial ∏_{i<j} ((α+ρ)_i - (α+ρ)_j) / (j - i)

    Equals (-1)^degree · dim for a nonzero BBW result and 0 otherwise; it is
    computed without sorting and serves as an independent check of
    cohomology_flag.
    """
    alpha = tuple(alpha)
    shifted = [a + b for a, b in zip(alpha, rho(len(alpha)))]
    value = Fraction(1)
    for i in range(len(shifted)):
        for j in range(i + 1, len(shifted)):
            value *= Fraction(shifted[i] - shifted[j], j - i)
    return int(value)
