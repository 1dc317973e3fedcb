"""
Ext Groups Between Twisted Schur Bundles
Ext^•(Σ^λU*(t), Σ^μU*) = H^•(Gr(k, n), Σ^λU ⊗ Σ^μU*(-t)), computed by
decomposing the tensor product with the Littlewood-Richardson rule and
applying Borel-Bott-Weil to every summand.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from src.bbw import Weight, euler_characteristic_flag, schur_u_star_cohomology, weyl_dim
from src.diagrams import RectDiagram, all_diagrams, negate, require_same_context
from src.schur import LaurentPoly, schur_char, schur_expand, tensor_u_star, variable_block
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass
class GradedRep:
    """Graded GL(V)-representation: degree -> {dominant weight: multiplicity}"""

    by_degree: Dict[int, Dict[Weight, int]] = field(default_factory=dict)

    def add(self, degree: int, weight: Weight, multiplicity: int = 1) -> None:
        if multiplicity <= 0:
            return
        summands = self.by_degree.setdefault(degree, {})
        summands[weight] = summands.get(weight, 0) + multiplicity

    @property
    def degrees(self) -> List[int]:
        return sorted(self.by_degree)

    def total_dim(self, degree: int) -> int:
        return sum(mult * weyl_dim(w) for w, mult in self.by_degree.get(degree, {}).items())

    def dims(self) -> Dict[int, int]:
        return {q: self.total_dim(q) for q in self.degrees}

    def is_zero(self) -> bool:
        return not self.by_degree

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * self.total_dim(q) for q in self.degrees)

    def is_one_dimensional_in(self, degree: int) -> bool:
        """True iff the representation is k in the given degree and zero elsewhere"""
        return self.degrees == [degree] and self.total_dim(degree) == 1


@lru_cache(maxsize=65536)
def _ext_cached(lam: RectDiagram, t: int, mu: RectDiagram) -> Tuple[Tuple[int, Weight, int], ...]:
    return _ext_entries(lam, t, mu)


def _ext_entries(lam: RectDiagram, t: int, mu: RectDiagram) -> Tuple[Tuple[int, Weight, int], ...]:
    entries = []
    # Σ^λU = Σ^{-λ}U*; the twist is applied to the summands, not to the factors
    for weight, mult in tensor_u_star(negate(lam), mu).items():
        result = schur_u_star_cohomology(weight, t, lam.n)
        if not result.is_zero:
            entries.append((result.degree, result.rep_weight, mult))
    return tuple(entries)


def ext_groups(lam: RectDiagram, t: int, mu: RectDiagram, cache: bool = True) -> GradedRep:
    """
    Ext^•(Σ^λU*(t), Σ^μU*) on Gr(k, n)

    Args:
        lam: source diagram (possibly generalized)
        t: twist of the source
        mu: target diagram in the same (n, k) context
        cache: look the summands up in the shared memo table

    Returns:
        GradedRep with full GL(V)-weights per degree
    """
    require_same_context(lam, mu)
    entries = _ext_cached(lam, t, mu) if cache else _ext_entries(lam, t, mu)
    rep = GradedRep()
    for degree, weight, mult in entries:
        rep.add(degree, weight, mult)
    return rep


def is_exceptional(lam: RectDiagram) -> bool:
    return ext_groups(lam, 0, lam).is_one_dimensional_in(0)


def is_left_orthogonal(lam: RectDiagram, t: int, mu: RectDiagram) -> bool:
    """Ext^•(Σ^λU*(t), Σ^μU*) = 0"""
    return ext_groups(lam, t, mu).is_zero()


def serre_check(lam: RectDiagram) -> bool:
    """dim Ext^•(Σ^λU*(n), Σ^λU*) is 1, concentrated in degree k(n-k)"""
    return ext_groups(lam, lam.n, lam).is_one_dimensional_in(lam.k * (lam.n - lam.k))


def exceptionality_sweep(n: int, k: int) -> List[RectDiagram]:
    """Diagrams of Y_{n,k} whose Schur bundle fails to be exceptional"""
    failures = [lam for lam in all_diagrams(n, k) if not is_exceptional(lam)]
    logger.info(f"Exceptionality sweep Gr({k},{n}): {len(failures)} failures")
    return failures


def euler_characteristic(lam: RectDiagram, t: int, mu: RectDiagram) -> int:
    return ext_groups(lam, t, mu).euler_characteristic()


def euler_characteristic_oracle(lam: RectDiagram, t: int, mu: RectDiagram) -> int:
    """
    χ(Σ^λU ⊗ Σ^μU*(-t)) computed from characters

    Multiplies the Schur characters of both factors, re-expands the product
    in the Schur basis and sums the signed Weyl polynomials of the summands.
    Shares no code with the Littlewood-Richardson enumerator or the BBW sort.
    """
    require_same_context(lam, mu)
    variables = variable_block("x", lam.k)
    product: LaurentPoly = schur_char(negate(lam).rows, variables) * schur_char(mu.rows, variables)
    product = product * LaurentPoly.monomial(variables, (-t,) * lam.k)
    return sum(
        coeff * euler_characteristic_flag(weight + (0,) * (lam.n - lam.k))
        for weight, coeff in schur_expand(product).items()
    )
