"""
Symmetric Function Engine
Exact Laurent polynomials over sympy, Schur and elementary symmetric
polynomials, Littlewood-Richardson decomposition of tensor products of Schur
functors and re-expansion of symmetric polynomials in the Schur basis.
"""

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from src.bbw import weyl_dim
from src.diagrams import RectDiagram
from src.exceptions import ContextMismatchError, PreconditionError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Exponent = Tuple[int, ...]
Partition = Tuple[int, ...]


def _gens(variables: Tuple[str, ...]) -> Tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(v) for v in variables)


class LaurentPoly:
    """
    Multivariate Laurent polynomial with exact integer coefficients

    Stored as x^low · P where P is a ``sympy.Poly`` over ZZ in which every
    variable has minimal degree 0, so equal polynomials have equal parts.
    Variables are named, e.g. ("x1", "x2", "z1").
    """

    __slots__ = ("variables", "low", "poly")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exponent, int]] = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        if not self.variables:
            raise PreconditionError("A Laurent polynomial needs at least one variable")
        m = len(self.variables)
        cleaned: Dict[Exponent, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != m:
                raise PreconditionError(f"Exponent {exps} does not match {m} variables")
            if coeff:
                cleaned[exps] = int(coeff)
        low = tuple(min(col) for col in zip(*cleaned)) if cleaned else (0,) * m
        shifted = {tuple(e - b for e, b in zip(exps, low)): c for exps, c in cleaned.items()}
        self.low: Exponent = low
        self.poly: sympy.Poly = self._to_poly(shifted)

    def _to_poly(self, terms: Mapping[Exponent, int]) -> sympy.Poly:
        if not terms:
            return sympy.Poly(0, *_gens(self.variables), domain="ZZ")
        return sympy.Poly.from_dict(dict(terms), *_gens(self.variables), domain="ZZ")

    @classmethod
    def _from_poly(cls, variables: Tuple[str, ...], poly: sympy.Poly, low: Exponent) -> "LaurentPoly":
        result = cls.__new__(cls)
        result.variables = variables
        if poly.is_zero:
            result.low = (0,) * len(variables)
            result.poly = poly
            return result
        mins = tuple(min(col) for col in zip(*poly.monoms()))
        if any(mins):
            poly = result._to_poly(
                {tuple(e - b for e, b in zip(exps, mins)): c for exps, c in poly.terms()}
            )
        result.low = tuple(a + b for a, b in zip(low, mins))
        result.poly = poly
        return result

    @classmethod
    def constant(cls, variables: Sequence[str], value: int = 1) -> "LaurentPoly":
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(variables, {tuple(exps): coeff})

    @classmethod
    def from_expr(cls, variables: Sequence[str], expr) -> "LaurentPoly":
        """Wrap a sympy polynomial expression in the given variables"""
        variables = tuple(variables)
        poly = sympy.Poly(expr, *_gens(variables), domain="ZZ")
        return cls._from_poly(variables, poly, (0,) * len(variables))

    @property
    def terms(self) -> Dict[Exponent, int]:
        """{exponent vector: coefficient}, zero coefficients omitted"""
        if self.poly.is_zero:
            return {}
        return {
            tuple(e + b for e, b in zip(exps, self.low)): int(c)
            for exps, c in self.poly.terms()
        }

    def _coerce(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ContextMismatchError(
                    f"Variable blocks differ: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.variables, other)
        return NotImplemented

    def _raised(self, low: Exponent) -> sympy.Poly:
        # the same polynomial written over a lower monomial factor
        delta = tuple(a - b for a, b in zip(self.low, low))
        if not any(delta):
            return self.poly
        return self.poly * self._to_poly({delta: 1})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        low = tuple(min(a, b) for a, b in zip(self.low, other.low))
        return LaurentPoly._from_poly(self.variables, self._raised(low) + other._raised(low), low)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_poly(self.variables, -self.poly, self.low)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        low = tuple(a + b for a, b in zip(self.low, other.low))
        return LaurentPoly._from_poly(self.variables, self.poly * other.poly, low)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise PreconditionError("Only nonnegative integer powers are supported")
        return LaurentPoly._from_poly(
            self.variables, self.poly ** power, tuple(a * power for a in self.low)
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.low == other.low and self.poly == other.poly

    __hash__ = None

    def is_zero(self) -> bool:
        return bool(self.poly.is_zero)

    def invert_variables(self) -> "LaurentPoly":
        """Substitute every variable by its inverse"""
        return LaurentPoly(self.variables, {tuple(-e for e in exps): c for exps, c in self.terms.items()})

    def embed(self, variables: Sequence[str]) -> "LaurentPoly":
        """Re-express over a larger variable list containing all current variables"""
        variables = tuple(variables)
        try:
            positions = [variables.index(v) for v in self.variables]
        except ValueError as e:
            raise ContextMismatchError(f"Cannot embed {self.variables} into {variables}") from e
        terms = {}
        for exps, coeff in self.terms.items():
            full = [0] * len(variables)
            for pos, e in zip(positions, exps):
                full[pos] = e
            terms[tuple(full)] = coeff
        return LaurentPoly(variables, terms)

    def as_expr(self) -> sympy.Expr:
        factor = sympy.Mul(*(g ** b for g, b in zip(_gens(self.variables), self.low)))
        return factor * self.poly.as_expr()

    def evaluate(self, point: Sequence[Union[int, Fraction]]) -> Fraction:
        """Exact evaluation at a point with nonzero coordinates"""
        if any(Fraction(x) == 0 for x in point):
            raise PreconditionError("Laurent polynomials are evaluated away from zero")
        values = {
            g: sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)
            for g, x in zip(_gens(self.variables), point)
        }
        value = sympy.Rational(self.as_expr().subs(values))
        return Fraction(int(value.p), int(value.q))

    def leading_term(self) -> Tuple[Exponent, int]:
        """Lexicographically largest exponent vector and its coefficient"""
        if self.poly.is_zero:
            raise PreconditionError("The zero polynomial has no leading term")
        exps, coeff = self.poly.terms(order="lex")[0]
        return tuple(e + b for e, b in zip(exps, self.low)), int(coeff)

    def leading_exponent(self) -> Exponent:
        return self.leading_term()[0]

    def min_exponent(self) -> int:
        return min(self.low)

    def __repr__(self) -> str:
        terms = self.terms
        if not terms:
            return "0"
        parts = []
        for exps in sorted(terms, reverse=True):
            factors = [
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, exps)
                if e != 0
            ]
            parts.append(f"{terms[exps]}" + ("*" + "*".join(factors) if factors else ""))
        return " + ".join(parts)


def variable_block(name: str, size: int) -> Tuple[str, ...]:
    return tuple(f"{name}{i}" for i in range(1, size + 1))


def grassmannian_variables(n: int, k: int) -> Tuple[str, ...]:
    """The x block (size k, Levi factor of U*) followed by the z block (size n-k)"""
    return variable_block("x", k) + variable_block("z", n - k)


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def _pad(parts: Sequence[int], length: int) -> Partition:
    parts = tuple(parts)
    if len(parts) > length:
        if any(parts[length:]):
            raise PreconditionError(f"{parts} has more than {length} nonzero rows")
        return parts[:length]
    return parts + (0,) * (length - len(parts))


# Schur and elementary polynomials

@lru_cache(maxsize=4096)
def _schur_terms(partition: Partition, m: int) -> Tuple[Tuple[Exponent, int], ...]:
    # Branching rule: s_λ(x_1..x_m) = Σ_{μ interlacing λ} s_μ(x_1..x_{m-1}) x_m^{|λ|-|μ|}
    if m == 0:
        return (((), 1),) if not any(partition) else ()
    if len(partition) > m and any(partition[m:]):
        return ()
    lam = _pad(partition, m)
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(m - 1)]
    terms: Dict[Exponent, int] = {}
    for mu in itertools.product(*ranges):
        rest = _schur_terms(tuple(mu), m - 1)
        degree = sum(lam) - sum(mu)
        for exps, coeff in rest:
            key = exps + (degree,)
            terms[key] = terms.get(key, 0) + coeff
    return tuple(sorted(terms.items()))


def schur_poly(partition: Sequence[int], variables: Sequence[str]) -> LaurentPoly:
    """Schur polynomial s_λ in the given variable block"""
    if not is_partition(partition):
        raise PreconditionError(f"{tuple(partition)} is not a partition")
    variables = tuple(variables)
    m = len(variables)
    if any(partition[m:]):
        return LaurentPoly(variables)
    return LaurentPoly(variables, dict(_schur_terms(_pad(partition, m), m)))


def elem_poly(j: int, variables: Sequence[str]) -> LaurentPoly:
    """Elementary symmetric polynomial e_j in the given variable block"""
    variables = tuple(variables)
    m = len(variables)
    if not 0 <= j <= m:
        raise PreconditionError(f"e_{j} needs 0 <= j <= {m}")
    gens = _gens(variables)
    expr = sympy.Add(*(sympy.Mul(*chosen) for chosen in itertools.combinations(gens, j)))
    return LaurentPoly.from_expr(variables, expr)


def schur_expand(poly: LaurentPoly) -> Dict[Exponent, int]:
    """
    Expand a symmetric Laurent polynomial in the Schur basis

    Repeatedly subtracts the Schur polynomial of the lex-leading exponent.
    Negative exponents are handled by a determinant twist.

    Returns:
        {dominant weight: coefficient}, weights possibly negative

    Raises:
        PreconditionError: if the polynomial is not symmetric
    """
    m = len(poly.variables)
    offset = -min(poly.min_exponent(), 0)
    det = LaurentPoly.monomial(poly.variables, (offset,) * m)
    remainder = poly * det
    result: Dict[Exponent, int] = {}
    while not remainder.is_zero():
        lead, coeff = remainder.leading_term()
        if not is_partition(lead):
            raise PreconditionError(f"Polynomial is not symmetric: leading exponent {lead}")
        result[tuple(e - offset for e in lead)] = coeff
        remainder = remainder - schur_poly(lead, poly.variables) * coeff
    return result


# Littlewood-Richardson rule

@dataclass
class LRDecomposition:
    """Multiplicities of the irreducible summands of Σ^λ ⊗ Σ^μ on a rank-k bundle"""

    k: int
    summands: Dict[Partition, int] = field(default_factory=dict)

    def items(self) -> List[Tuple[Partition, int]]:
        return sorted(self.summands.items(), reverse=True)

    def multiplicity(self, weight: Sequence[int]) -> int:
        return self.summands.get(tuple(weight), 0)

    def dimension(self) -> int:
        return sum(mult * weyl_dim(w) for w, mult in self.summands.items())

    def twisted(self, t: int) -> "LRDecomposition":
        return LRDecomposition(self.k, {tuple(a + t for a in w): m for w, m in self.summands.items()})

    def __len__(self) -> int:
        return len(self.summands)


def _lr_fillings(lam: Partition, mu: Partition) -> Counter:
    k = len(lam)
    content = [c for c in mu if c > 0]
    found: Counter = Counter()
    # placed[label][row]: number of boxes with that label in that row
    placed: List[List[int]] = []

    def add_strip(label: int, shape: List[int]):
        if label == len(content):
            found[tuple(shape)] += 1
            return
        amount = content[label]
        old = list(shape)

        def choose(row: int, remaining: int, new: List[int], strip: List[int]):
            if row == k:
                if remaining == 0 and _lattice_ok(label, strip):
                    placed.append(strip)
                    add_strip(label + 1, new)
                    placed.pop()
                return
            # label i (0-based) never sits above row i
            if row < label:
                choose(row + 1, remaining, new + [old[row]], strip + [0])
                return
            cap = remaining if row == 0 else min(remaining, old[row - 1] - old[row])
            for a in range(cap, -1, -1):
                choose(row + 1, remaining - a, new + [old[row] + a], strip + [a])

        choose(0, amount, [], [])

    def _lattice_ok(label: int, strip: List[int]) -> bool:
        if label == 0:
            return True
        previous = placed[label - 1]
        seen_prev = seen_cur = 0
        for row in range(k):
            seen_cur += strip[row]
            if seen_cur > seen_prev:
                return False
            seen_prev += previous[row]
        return True

    add_strip(0, list(lam))
    return found


@lru_cache(maxsize=65536)
def _lr_cached(lam: Partition, mu: Partition) -> Tuple[Tuple[Partition, int], ...]:
    return tuple(sorted(_lr_fillings(lam, mu).items()))


def lr_decompose(lam: Sequence[int], mu: Sequence[int], k: int) -> LRDecomposition:
    """
    Decompose Σ^λ ⊗ Σ^μ on a rank-k bundle by counting LR tableaux

    Enumerates semistandard skew tableaux of shape ν/λ and content μ whose
    reading word is a lattice word; shapes with more than k rows are dropped.
    """
    if not is_partition(lam) or not is_partition(mu):
        raise PreconditionError(f"lr_decompose needs partitions, got {tuple(lam)}, {tuple(mu)}")
    lam_k, mu_k = _pad(lam, k), _pad(mu, k)
    # c^ν_{λμ} = c^ν_{μλ}; fill the smaller content
    if sum(mu_k) > sum(lam_k):
        lam_k, mu_k = mu_k, lam_k
    return LRDecomposition(k, dict(_lr_cached(lam_k, mu_k)))


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    k = max(len(lam), len(mu), len(nu))
    return lr_decompose(lam, mu, k).multiplicity(_pad(nu, k))


def tensor_u_star(a: RectDiagram, b: RectDiagram) -> LRDecomposition:
    """
    Decompose Σ^a U* ⊗ Σ^b U* for generalized (possibly negative) diagrams

    Both factors are twisted to partitions, multiplied with the LR rule and
    the summands twisted back; O(1) = Σ^{(1,...,1)}U* commutes with the
    decomposition.
    """
    if a.k != b.k:
        raise ContextMismatchError(f"Tensor factors have different ranks {a.k} and {b.k}")
    ca, cb = -a.rows[-1], -b.rows[-1]
    lam = tuple(r + ca for r in a.rows)
    mu = tuple(r + cb for r in b.rows)
    return lr_decompose(lam, mu, a.k).twisted(-(ca + cb))


def schur_char(weight: Sequence[int], variables: Sequence[str]) -> LaurentPoly:
    """Character of Σ^w for a dominant, possibly negative, weight w"""
    weight = tuple(weight)
    if not is_partition(tuple(a - weight[-1] for a in weight)):
        raise PreconditionError(f"{weight} is not dominant")
    low = weight[-1]
    det = LaurentPoly.monomial(variables, (low,) * len(variables))
    return schur_poly(tuple(a - low for a in weight), variables) * det
