"""
Staircase Complexes
For λ in Y_{n,k} with λ_1 = n-k, the exact sequence

    0 → Λ^n V* ⊗ Σ^{λ'}U*(-1) → Λ^{ν_{n-k}}V* ⊗ Σ^{μ_{n-k}}U* → ...
      → Λ^{ν_1}V* ⊗ Σ^{μ_1}U* → Σ^λU* → 0

as an ordered list of terms (no differentials). Λ^n V* is one-dimensional;
it only matters for equivariant characters. The middle terms are built
twice, from column lengths and from the jump along the path, and the two
constructions must agree.
"""

import math
from dataclasses import dataclass
from typing import List, Tuple

from src.bbw import cohomology_grass, weyl_dim
from src.diagrams import (
    RectDiagram,
    from_transpose,
    negate,
    require_inscribed,
    shift,
    tilde_normalize,
    transpose,
    twist,
)
from src.exceptions import InconsistencyError, PreconditionError
from src.ext import ext_groups
from src.schur import LaurentPoly, elem_poly, grassmannian_variables, schur_char
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class StaircaseTerm:
    """Λ^ν V* ⊗ Σ^{diagram}U*(twist), placed in a homological degree"""

    degree: int
    nu: int
    diagram: RectDiagram
    twist: int = 0

    @property
    def weight(self) -> Tuple[int, ...]:
        """The Schur weight with the O(twist) factor folded in"""
        return tuple(r + self.twist for r in self.diagram.rows)

    @property
    def rank(self) -> int:
        return math.comb(self.diagram.n, self.nu) * weyl_dim(self.diagram.rows)

    def __str__(self) -> str:
        parts = []
        if self.nu == 1:
            parts.append("V*")
        elif self.nu > 1:
            parts.append(f"Λ^{self.nu} V*")
        bundle = f"Σ^{self.diagram} U*"
        if self.twist:
            bundle += f"({self.twist})"
        parts.append(bundle)
        return " ⊗ ".join(parts)


@dataclass(frozen=True)
class SpectralEntry:
    """Position (p, q) of a nonzero E_1 term and its cohomology degree check"""

    index: int
    p: int
    q: int


@dataclass(frozen=True)
class StaircaseComplex:
    n: int
    k: int
    target: RectDiagram
    left_end: StaircaseTerm
    middle: Tuple[StaircaseTerm, ...]
    spectral: Tuple[SpectralEntry, ...] = ()

    @property
    def right_end(self) -> StaircaseTerm:
        return StaircaseTerm(0, 0, self.target)

    def terms(self) -> List[StaircaseTerm]:
        """Left end first, target last"""
        return [self.left_end, *reversed(self.middle), self.right_end]

    @property
    def nus(self) -> Tuple[int, ...]:
        return tuple(t.nu for t in self.middle)

    @property
    def mus(self) -> Tuple[RectDiagram, ...]:
        return tuple(t.diagram for t in self.middle)


def _require_admissible(lam: RectDiagram) -> None:
    require_inscribed(lam)
    if lam.rows[0] != lam.width:
        raise PreconditionError(f"Staircase needs λ_1 = n-k = {lam.width}, got {lam}")


def middle_by_columns(lam: RectDiagram) -> List[Tuple[int, RectDiagram]]:
    """(ν_i, μ_i) for i = 1..n-k from the transpose of λ"""
    _require_admissible(lam)
    w = lam.width
    cols = transpose(lam)
    result = []
    for i in range(1, w + 1):
        # 1-indexed: λ*_1..λ*_{w-i}, λ*_{w-i+2}-1..λ*_w-1, 0
        head = list(cols[: w - i])
        tail = [c - 1 for c in cols[w - i + 1:]]
        mu = from_transpose(head + tail + [0], lam.n, lam.k)
        result.append((cols[w - i] + i - 1, mu))
    return result


def middle_by_jumps(lam: RectDiagram) -> List[Tuple[int, RectDiagram]]:
    """
    (ν_i, μ_i) from the path picture: μ_i follows the boundary of λ up to
    abscissa n-k-i and then jumps up onto the boundary of λ'(-1); ν_i is the
    number of boxes removed
    """
    _require_admissible(lam)
    lowered = twist(shift(lam), -1)
    result = []
    for i in range(1, lam.width + 1):
        a = lam.width - i
        rows = tuple(
            min(row, a) + max(0, low - a)
            for row, low in zip(lam.rows, lowered.rows)
        )
        mu = RectDiagram(lam.n, lam.k, rows)
        result.append((lam.size - mu.size, mu))
    return result


def spectral_data(lam: RectDiagram) -> Tuple[SpectralEntry, ...]:
    """
    The nonzero E_1 positions (p_i, q_i), i = 0..n-k, of the resolution of
    Σ^{λ'}U(1); every q_i is recomputed with Borel-Bott-Weil

    Raises:
        InconsistencyError: if a BBW degree or weight disagrees, or the total
            degrees p_i + q_i are not -(n-k)+i
    """
    _require_admissible(lam)
    n, w = lam.n, lam.width
    cols = transpose(lam)
    lam_prime = shift(lam)
    beta = tuple(1 + r for r in negate(lam_prime).rows)

    entries = [SpectralEntry(0, -lam.size, lam.size - w)]
    for i in range(1, w + 1):
        c = cols[w - i]
        entries.append(SpectralEntry(i, -lam.size + c + i - 1, lam.size - w - (c - 1)))

    alphas = [lam] + [mu for _, mu in middle_by_columns(lam)]
    nus = [0] + [nu for nu, _ in middle_by_columns(lam)]
    for entry, alpha, nu in zip(entries, alphas, nus):
        result = cohomology_grass(beta, transpose(alpha))
        expected = (1,) * (n - nu) + (0,) * nu
        if result.is_zero or result.degree != entry.q or result.rep_weight != expected:
            logger.error(f"BBW check failed for {lam} at index {entry.index}: {result}")
            raise InconsistencyError(
                f"E_1 term {entry.index} of {lam}: expected H^{entry.q} = Σ^{expected}V*, got {result}"
            )
        if entry.p + entry.q != -w + entry.index:
            raise InconsistencyError(f"Total degree of E_1 term {entry.index} of {lam} is off")
    return tuple(entries)


def staircase(lam: RectDiagram) -> StaircaseComplex:
    """
    Build the staircase complex of λ

    Raises:
        PreconditionError: if λ is not inscribed or λ_1 != n-k
        InconsistencyError: if the two constructions of the middle terms disagree
    """
    by_columns = middle_by_columns(lam)
    by_jumps = middle_by_jumps(lam)
    if by_columns != by_jumps:
        logger.error(f"Staircase constructions disagree for {lam}: {by_columns} vs {by_jumps}")
        raise InconsistencyError(f"Column and jump constructions disagree for {lam}")

    nus = [nu for nu, _ in by_columns]
    if any(a >= b for a, b in zip(nus, nus[1:])) or not all(0 <= nu < lam.n for nu in nus):
        raise InconsistencyError(f"ν sequence {nus} of {lam} is not strictly increasing in [0, n)")

    middle = tuple(StaircaseTerm(-i, nu, mu) for i, (nu, mu) in enumerate(by_columns, start=1))
    left_end = StaircaseTerm(-(lam.width + 1), lam.n, shift(lam), -1)
    return StaircaseComplex(lam.n, lam.k, lam, left_end, middle, spectral_data(lam))


def term_character(term: StaircaseTerm) -> LaurentPoly:
    """
    Character at a torus-fixed point: s_μ(x)·(x_1⋯x_k)^twist·e_ν(x, z)

    U* restricts to the x block and V* to both blocks.
    """
    n, k = term.diagram.n, term.diagram.k
    variables = grassmannian_variables(n, k)
    x_block = variables[:k]
    schur = schur_char(term.weight, x_block).embed(variables)
    return schur * elem_poly(term.nu, variables)


def complex_character_sum(c: StaircaseComplex) -> LaurentPoly:
    """Alternating sum of term characters; zero for an exact complex"""
    variables = grassmannian_variables(c.n, c.k)
    total = LaurentPoly(variables)
    for term in c.terms():
        sign = -1 if term.degree % 2 else 1
        total = total + term_character(term) * sign
    return total


def rank_sum(c: StaircaseComplex) -> int:
    """Alternating sum of ranks"""
    return sum((-1) ** (term.degree % 2) * term.rank for term in c.terms())


def left_end_identity(lam: RectDiagram) -> Tuple[RectDiagram, int]:
    """Σ^{λ'}U*(-1) written as Σ^{μ̃}U*(-t) with μ̃_1 = n-k"""
    _require_admissible(lam)
    lam_prime = shift(lam)
    return tilde_normalize(lam_prime), lam.width - lam_prime.rows[0] + 1


def connecting_ext_check(lam: RectDiagram, cache: bool = True) -> bool:
    """
    Ext^•(Σ^λU*(1), Σ^{λ'}U*) is one-dimensional: in degree n-k when
    λ_1 = n-k, in degree 0 otherwise (then Σ^{λ'}U*(-1) = Σ^λU*)
    """
    require_inscribed(lam)
    degree = lam.width if lam.rows[0] == lam.width else 0
    return ext_groups(lam, 1, shift(lam), cache=cache).is_one_dimensional_in(degree)


def render(c: StaircaseComplex) -> List[str]:
    """One line per term, left end first, homological degree in brackets"""
    return [f"[{term.degree}] {term}" for term in c.terms()]
