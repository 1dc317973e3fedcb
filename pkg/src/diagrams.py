"""
Young Diagrams in a Rectangle
Diagrams of Y_{n,k}, their binary-word paths, the cyclic shift action,
orders and the path statistics o, r, l, d, e.

A diagram is a nonincreasing sequence of k integers carried together with its
(n, k) context. Rows may be negative (generalized diagrams); operations that
need the k x (n-k) rectangle say so and reject other input.

Binary words are read from the lower-left corner of the rectangle:
0 is a horizontal step, 1 a vertical step. The i-th one is preceded by
rows[k+1-i] zeros.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.exceptions import (
    ContextMismatchError,
    NotInscribedError,
    ParseError,
    PreconditionError,
)
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RectDiagram:
    """A k-row nonincreasing integer sequence in the context of Gr(k, n)."""

    n: int
    k: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if self.n < 2 or not 1 <= self.k <= self.n - 1:
            raise PreconditionError(f"Need 1 <= k <= n-1, got n={self.n}, k={self.k}")
        if len(self.rows) != self.k:
            raise PreconditionError(
                f"Diagram needs exactly k={self.k} rows, got {len(self.rows)}"
            )
        if any(a < b for a, b in zip(self.rows, self.rows[1:])):
            raise PreconditionError(f"Rows must be nonincreasing: {self.rows}")

    @property
    def context(self) -> Tuple[int, int]:
        return (self.n, self.k)

    @property
    def width(self) -> int:
        """Width n-k of the ambient rectangle"""
        return self.n - self.k

    @property
    def inscribed(self) -> bool:
        return self.rows[-1] >= 0 and self.rows[0] <= self.width

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __lt__(self, other: "RectDiagram") -> bool:
        return lex_cmp(self, other) < 0

    def __le__(self, other: "RectDiagram") -> bool:
        return lex_cmp(self, other) <= 0

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.rows) + ")"

    def text(self) -> str:
        """Comma-separated rows, the syntax accepted by parse_diagram"""
        return ",".join(str(r) for r in self.rows)


@dataclass(frozen=True)
class BinaryWord:
    """Lattice path of an inscribed diagram: n bits, exactly k of them ones."""

    bits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ParseError(f"Binary word may only contain 0 and 1: {self.bits}")

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def k(self) -> int:
        return sum(self.bits)

    def rotate(self, t: int = 1) -> "BinaryWord":
        """Apply the generator g t times: the last bit moves to the front."""
        return BinaryWord(tuple(int(b) for b in np.roll(np.array(self.bits), t)))

    def reverse(self) -> "BinaryWord":
        return BinaryWord(self.bits[::-1])

    def __add__(self, other: "BinaryWord") -> "BinaryWord":
        return BinaryWord(self.bits + other.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class Orbit:
    """Successive shifts of an inscribed diagram, closing up after `length` steps."""

    members: Tuple[RectDiagram, ...]

    @property
    def length(self) -> int:
        return len(self.members)

    def __contains__(self, d: RectDiagram) -> bool:
        return d in self.members


# Construction and validation

def make(n: int, k: int, rows: Sequence[int]) -> RectDiagram:
    return RectDiagram(n, k, tuple(rows))


def empty(n: int, k: int) -> RectDiagram:
    return RectDiagram(n, k, (0,) * k)


def require_inscribed(d: RectDiagram) -> None:
    if not d.inscribed:
        raise NotInscribedError(
            f"{d} is not inscribed in the {d.k}x{d.width} rectangle"
        )


def require_same_context(a: RectDiagram, b: RectDiagram) -> None:
    if a.context != b.context:
        raise ContextMismatchError(
            f"Diagrams {a} and {b} live in different contexts {a.context} and {b.context}"
        )


def parse_diagram(text: str, n: int, k: int) -> RectDiagram:
    """
    Parse the textual syntax "3,2,1"

    An empty string, "empty" or "0" denotes the empty diagram; missing trailing
    rows are zero.

    Raises:
        ParseError: on empty or non-integer entries or more than k rows
    """
    cleaned = text.strip().strip("()")
    if cleaned.lower() in ("", "empty", "∅"):
        return empty(n, k)
    fields = cleaned.split(",")
    if any(part.strip() == "" for part in fields):
        raise ParseError(f"Diagram '{text}' has an empty row field")
    try:
        values = [int(part) for part in fields]
    except ValueError as e:
        raise ParseError(f"Cannot parse diagram '{text}': {e}") from e
    if len(values) > k:
        raise ParseError(f"Diagram '{text}' has more than k={k} rows")
    values += [0] * (k - len(values))
    try:
        return RectDiagram(n, k, tuple(values))
    except PreconditionError as e:
        raise ParseError(f"Invalid diagram '{text}': {e.message}") from e


@lru_cache(maxsize=None)
def all_diagrams(n: int, k: int) -> Tuple[RectDiagram, ...]:
    """All of Y_{n,k} in increasing lexicographic order"""
    if n < 2 or not 1 <= k <= n - 1:
        raise PreconditionError(f"Need 1 <= k <= n-1, got n={n}, k={k}")
    found = [
        RectDiagram(n, k, tuple(reversed(c)))
        for c in itertools.combinations_with_replacement(range(n - k + 1), k)
    ]
    return tuple(sorted(found, key=lambda d: d.rows))


# Binary words

def to_binary(d: RectDiagram) -> BinaryWord:
    require_inscribed(d)
    bits: List[int] = []
    zeros = 0
    for row in reversed(d.rows):
        bits.extend([0] * (row - zeros))
        zeros = row
        bits.append(1)
    bits.extend([0] * (d.width - zeros))
    return BinaryWord(tuple(bits))


def from_binary(w: BinaryWord, n: int, k: int) -> RectDiagram:
    if w.n != n or w.k != k:
        raise ContextMismatchError(
            f"Word {w} has length {w.n} with {w.k} ones, expected n={n}, k={k}"
        )
    zeros = 0
    bottom_up: List[int] = []
    for bit in w.bits:
        if bit:
            bottom_up.append(zeros)
        else:
            zeros += 1
    return RectDiagram(n, k, tuple(reversed(bottom_up)))


# Cyclic action, twists and complements

def shift(d: RectDiagram) -> RectDiagram:
    """The shift d' (generator g of Z/nZ), in its closed form on rows"""
    require_inscribed(d)
    if d.rows[0] < d.width:
        return RectDiagram(d.n, d.k, tuple(r + 1 for r in d.rows))
    return RectDiagram(d.n, d.k, d.rows[1:] + (0,))


def shift_word(d: RectDiagram) -> RectDiagram:
    """The shift computed by rotating the binary word"""
    return from_binary(to_binary(d).rotate(1), d.n, d.k)


def shift_pow(d: RectDiagram, t: int) -> RectDiagram:
    require_inscribed(d)
    for _ in range(t % d.n):
        d = shift(d)
    return d


def twist(d: RectDiagram, t: int) -> RectDiagram:
    return RectDiagram(d.n, d.k, tuple(r + t for r in d.rows))


def negate(d: RectDiagram) -> RectDiagram:
    return RectDiagram(d.n, d.k, tuple(-r for r in reversed(d.rows)))


def complement(d: RectDiagram) -> RectDiagram:
    require_inscribed(d)
    return twist(negate(d), d.width)


def tilde_normalize(d: RectDiagram) -> RectDiagram:
    """The unique twist of d whose first row equals n-k"""
    return twist(d, d.width - d.rows[0])


def concat(a: RectDiagram, b: RectDiagram) -> RectDiagram:
    """a ⊕ b in Y_{n+m,k+l}: the binary word of a followed by that of b"""
    require_inscribed(a)
    require_inscribed(b)
    return from_binary(to_binary(a) + to_binary(b), a.n + b.n, a.k + b.k)


def transpose(d: RectDiagram) -> Tuple[int, ...]:
    """Column lengths (λ*_1, ..., λ*_{n-k}) of an inscribed diagram"""
    require_inscribed(d)
    return tuple(sum(1 for r in d.rows if r >= j) for j in range(1, d.width + 1))


def from_transpose(columns: Sequence[int], n: int, k: int) -> RectDiagram:
    """Inverse of transpose for n-k column lengths bounded by k"""
    if len(columns) != n - k or any(c < 0 or c > k for c in columns):
        raise PreconditionError(f"Columns {tuple(columns)} do not fit a {k}x{n - k} box")
    return RectDiagram(n, k, tuple(sum(1 for c in columns if c >= i) for i in range(1, k + 1)))


# Orders

def lex_cmp(a: RectDiagram, b: RectDiagram) -> int:
    require_same_context(a, b)
    return (a.rows > b.rows) - (a.rows < b.rows)


def incl_cmp(a: RectDiagram, b: RectDiagram) -> Optional[int]:
    """
    Compare under the inclusion order ⪯

    Returns:
        -1 if a ≺ b, 0 if equal, 1 if b ≺ a, None if incomparable
    """
    require_same_context(a, b)
    if a.rows == b.rows:
        return 0
    if all(x <= y for x, y in zip(a.rows, b.rows)):
        return -1
    if all(x >= y for x, y in zip(a.rows, b.rows)):
        return 1
    return None


def precedes(a: RectDiagram, b: RectDiagram) -> bool:
    """a ⪯ b"""
    return incl_cmp(a, b) in (-1, 0)


# Triangularity

def is_upper_triangular(d: RectDiagram) -> bool:
    require_inscribed(d)
    # rows[i] <= (n-k)(k-i)/k, cross-multiplied
    return all(row * d.k <= d.width * (d.k - i) for i, row in enumerate(d.rows, start=1))


def is_lower_triangular(d: RectDiagram) -> bool:
    return is_upper_triangular(complement(d))


def is_strictly_upper_triangular(d: RectDiagram) -> bool:
    return is_upper_triangular(d) and stat_r(d) == d.n


def upper_triangular(n: int, k: int) -> Tuple[RectDiagram, ...]:
    """Y^u_{n,k} in lex order"""
    return tuple(d for d in all_diagrams(n, k) if is_upper_triangular(d))


def lower_triangular(n: int, k: int) -> Tuple[RectDiagram, ...]:
    """Y^l_{n,k} in lex order"""
    return tuple(d for d in all_diagrams(n, k) if is_lower_triangular(d))


def u_admissible_offsets(d: RectDiagram) -> Tuple[int, ...]:
    """Offsets t in [0, n) whose shift d^(t) is upper triangular"""
    return tuple(t for t in range(d.n) if is_upper_triangular(shift_pow(d, t)))


def l_admissible_offsets(d: RectDiagram) -> Tuple[int, ...]:
    """Offsets t in [0, n) whose shift d^(t) is lower triangular"""
    return tuple(t for t in range(d.n) if is_lower_triangular(shift_pow(d, t)))


# Orbits

@lru_cache(maxsize=None)
def orbit(d: RectDiagram) -> Orbit:
    require_inscribed(d)
    members = [d]
    current = shift(d)
    while current != d:
        members.append(current)
        current = shift(current)
    return Orbit(tuple(members))


def orbit_len(d: RectDiagram) -> int:
    return orbit(d).length


@lru_cache(maxsize=None)
def minimal_upper_reps(n: int, k: int) -> Tuple[RectDiagram, ...]:
    """Y^mu_{n,k}: the lex-smallest upper triangular member of every orbit"""
    reps = set()
    for d in all_diagrams(n, k):
        uppers = [m for m in orbit(d).members if is_upper_triangular(m)]
        reps.add(min(uppers, key=lambda m: m.rows))
    logger.debug(f"Gr({k},{n}): {len(reps)} orbits of the cyclic action")
    return tuple(sorted(reps, key=lambda m: m.rows))


@lru_cache(maxsize=None)
def minimal_lower_reps(n: int, k: int) -> Tuple[RectDiagram, ...]:
    """Y^ml_{n,k}: complements of Y^mu_{n,k}"""
    return tuple(sorted((complement(d) for d in minimal_upper_reps(n, k)), key=lambda m: m.rows))


def orbits(n: int, k: int) -> Tuple[Orbit, ...]:
    """All orbits, each listed from its minimal upper representative"""
    return tuple(orbit(rep) for rep in minimal_upper_reps(n, k))


# Statistics

def _first_balanced(bits: Sequence[int], n: int, k: int) -> int:
    ones = np.cumsum(np.array(bits, dtype=np.int64))
    steps = np.arange(1, n + 1, dtype=np.int64)
    hits = np.nonzero(ones * n == steps * k)[0]
    # t = n always balances
    return int(hits[0]) + 1


def stat_r(d: RectDiagram) -> int:
    """Path length from the upper-right corner to the first diagonal vertex"""
    if not is_upper_triangular(d):
        raise PreconditionError(f"r is defined on upper triangular diagrams, got {d}")
    return _first_balanced(to_binary(d).bits[::-1], d.n, d.k)


def stat_l(d: RectDiagram) -> int:
    """Path length from the lower-left corner to the first diagonal vertex"""
    if not is_lower_triangular(d):
        raise PreconditionError(f"l is defined on lower triangular diagrams, got {d}")
    return _first_balanced(to_binary(d).bits, d.n, d.k)


def stat_d(d: RectDiagram) -> int:
    """Smallest t >= 0 with d^(t) lower triangular"""
    return min(l_admissible_offsets(d))


def stat_e(d: RectDiagram) -> int:
    """
    Path length from the lower-left corner, travelling north-east, to the
    first l-admissible vertex other than the corner itself

    The vertex t steps north-east of the lower-left corner is the upper-right
    corner of d^(n-t), so e(d) = min{t in [1, n] : d^(n-t) lower triangular}.
    """
    return d.n - max(l_admissible_offsets(d))


def slope(d: RectDiagram) -> Fraction:
    return Fraction(d.k, d.width)
