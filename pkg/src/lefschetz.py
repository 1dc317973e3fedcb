"""
Lefschetz Decompositions
Builds the decompositions A, B, B' (and the dual A') of D^b(Gr(k, n)) from
their Lefschetz basis and support function, and verifies semi-orthogonality
by the Ext-vanishing criterion.
"""

import asyncio
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from src.diagrams import (
    RectDiagram,
    complement,
    lower_triangular,
    minimal_lower_reps,
    minimal_upper_reps,
    orbit_len,
    orbits,
    stat_l,
    stat_r,
    upper_triangular,
)
from src.exceptions import InconsistencyError, PreconditionError
from src.ext import ext_groups
from src.utils.logging import get_logger

logger = get_logger(__name__)


class Kind(Enum):
    """Decomposition kinds"""
    A = "A"
    B = "B"
    BPRIME = "Bprime"
    APRIME = "Aprime"

    @property
    def mirrored(self) -> bool:
        """Blocks are ordered ⟨X_{n-1}(1-n), ..., X_0⟩ instead of ⟨X_0, ..., X_{n-1}(n-1)⟩"""
        return self in (Kind.BPRIME, Kind.APRIME)


class Comparison(Enum):
    EQUAL = "equal"
    A_STRICTLY_SMALLER = "A_strictly_smaller"


@dataclass(frozen=True)
class LefschetzSpec:
    """A Lefschetz basis with its support function; blocks are derived views"""

    kind: Kind
    n: int
    k: int
    basis: Tuple[Tuple[RectDiagram, int], ...]

    @property
    def diagrams(self) -> Tuple[RectDiagram, ...]:
        return tuple(d for d, _ in self.basis)

    @property
    def supports(self) -> Tuple[int, ...]:
        return tuple(s for _, s in self.basis)

    @property
    def object_count(self) -> int:
        return sum(self.supports)

    def support_of(self, d: RectDiagram) -> int:
        for member, support in self.basis:
            if member == d:
                return support
        raise PreconditionError(f"{d} is not in the basis of {self.kind.value}")


@dataclass(frozen=True)
class Violation:
    """A nonvanishing Ext^•(Σ^λU*(t), Σ^μU*) that should vanish"""

    source: RectDiagram
    twist: int
    target: RectDiagram
    degrees: Tuple[int, ...]

    def sort_key(self):
        return (self.source.rows, self.twist, self.target.rows)


@dataclass
class OrthogonalityReport:
    spec: LefschetzSpec
    violations: List[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def object_count(self) -> int:
        return self.spec.object_count

    @property
    def k0_rank(self) -> int:
        return math.comb(self.spec.n, self.spec.k)

    @property
    def verified(self) -> bool:
        return not self.violations


def build(kind, n: int, k: int) -> LefschetzSpec:
    """
    Construct the Lefschetz basis and supports of a decomposition

    Args:
        kind: Kind or its value ("A", "B", "Bprime", "Aprime")
        n: ambient dimension
        k: rank of U

    Returns:
        LefschetzSpec with the basis in lex order
    """
    try:
        kind = Kind(kind)
    except ValueError as e:
        raise PreconditionError(f"Unknown decomposition kind {kind!r}") from e
    if n < 2 or not 1 <= k <= n - 1:
        raise PreconditionError(f"Need 1 <= k <= n-1, got n={n}, k={k}")
    if kind is Kind.A:
        basis = [(d, orbit_len(d)) for d in minimal_upper_reps(n, k)]
    elif kind is Kind.B:
        basis = [(d, stat_r(d)) for d in upper_triangular(n, k)]
    elif kind is Kind.BPRIME:
        basis = [(d, stat_l(d)) for d in lower_triangular(n, k)]
    else:
        basis = [(d, orbit_len(d)) for d in minimal_lower_reps(n, k)]
    return LefschetzSpec(kind, n, k, tuple(basis))


def _triples(spec: LefschetzSpec) -> List[Tuple[RectDiagram, int, RectDiagram]]:
    triples = []
    for source, source_support in spec.basis:
        for target, target_support in spec.basis:
            # ⟨X_0, X_1(1), ...⟩ bounds the twist by the source's support,
            # the mirrored ordering by the target's
            bound = target_support if spec.kind.mirrored else source_support
            for t in range(1, bound):
                triples.append((source, t, target))
    return triples


def _check(triple: Tuple[RectDiagram, int, RectDiagram], cache: bool = True) -> Optional[Violation]:
    source, t, target = triple
    ext = ext_groups(source, t, target, cache=cache)
    if ext.is_zero():
        return None
    logger.debug(f"Nonvanishing Ext^{ext.degrees}({source}({t}), {target})")
    return Violation(source, t, target, tuple(ext.degrees))


def verify_semiorthogonality(spec: LefschetzSpec, cache: bool = True) -> OrthogonalityReport:
    """Check every Ext-vanishing condition of the decomposition; violations are collected, not raised"""
    triples = _triples(spec)
    logger.info(f"Verifying {spec.kind.value} on Gr({spec.k},{spec.n}): {len(triples)} conditions")
    violations = [v for v in (_check(t, cache) for t in triples) if v is not None]
    violations.sort(key=Violation.sort_key)
    return OrthogonalityReport(spec, violations, len(triples))


async def verify_semiorthogonality_async(
    spec: LefschetzSpec, jobs: int = 1, cache: bool = True
) -> OrthogonalityReport:
    """
    Parallel form of verify_semiorthogonality

    Conditions are checked in worker threads, at most `jobs` at a time; the
    report is identical to the sequential one.
    """
    triples = _triples(spec)
    semaphore = asyncio.Semaphore(max(1, jobs))

    async def check(triple):
        async with semaphore:
            return await asyncio.to_thread(_check, triple, cache)

    results = await asyncio.gather(*(check(t) for t in triples))
    violations = sorted((v for v in results if v is not None), key=Violation.sort_key)
    return OrthogonalityReport(spec, violations, len(triples))


def count_check(spec: LefschetzSpec) -> bool:
    """Total object count equals rk K_0(Gr(k, n)) = C(n, k)"""
    return spec.object_count == math.comb(spec.n, spec.k)


def blocks(spec: LefschetzSpec) -> List[List[RectDiagram]]:
    """Block i is generated by the basis elements with i < support"""
    return [
        [d for d, s in spec.basis if i < s]
        for i in range(max(spec.supports))
    ]


def is_rectangular(spec: LefschetzSpec) -> bool:
    return len(set(spec.supports)) == 1


def lefschetz_collection_table(spec: LefschetzSpec) -> List[List[str]]:
    """
    The collection as a grid: one row per basis element (largest on top),
    one column per twist 0..n-1; entry "Σ^λU*(i)" when λ generates block i
    """
    sign = -1 if spec.kind.mirrored else 1
    rows = []
    for d, support in reversed(spec.basis):
        rows.append([
            f"Σ^{d}U*({sign * i})" if i < support else ""
            for i in range(spec.n)
        ])
    return rows


def compare_AB(n: int, k: int) -> Comparison:
    """Compare the first blocks of A and B"""
    a, b = build(Kind.A, n, k), build(Kind.B, n, k)
    if a.basis == b.basis:
        return Comparison.EQUAL
    if not set(a.diagrams) < set(b.diagrams):
        raise InconsistencyError(f"A_0 is not strictly contained in B_0 for Gr({k},{n})")
    return Comparison.A_STRICTLY_SMALLER


def minimal_count_check(n: int, k: int) -> bool:
    """
    For prime k: the number of orbits is ⌈C(n,k)/n⌉ and, when k divides n,
    the single short orbit is represented by ((n-k)(k-1)/k, ..., (n-k)/k, 0)
    """
    if k < 2 or any(k % p == 0 for p in range(2, math.isqrt(k) + 1)):
        raise PreconditionError(f"k must be prime, got {k}")
    reps = minimal_upper_reps(n, k)
    if len(reps) != -(-math.comb(n, k) // n):
        return False
    short = [o for o in orbits(n, k) if o.length < n]
    if n % k:
        return not short
    expected = tuple((n - k) * (k - i) // k for i in range(1, k + 1))
    return len(short) == 1 and short[0].members[0].rows == expected


def duality_check(n: int, k: int) -> bool:
    """B' is the complement of B, with l(λ^c) = r(λ)"""
    b, b_prime = build(Kind.B, n, k), build(Kind.BPRIME, n, k)
    dual: Dict[RectDiagram, int] = {complement(d): s for d, s in b.basis}
    return dict(b_prime.basis) == dual
