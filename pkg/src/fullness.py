"""
Generation Certificates
Executable form of the Exp-set argument: every Σ^λU* is expressed through
staircase complexes in terms of Σ^μU*(-t) with μ lower triangular, and
each such pair is checked to be a generator of the decomposition
⟨B'_{n-1}(1-n), ..., B'_0⟩. An experimental variant does the same for the
dual of the A decomposition, rewriting bad pairs by right resolutions.
"""

import asyncio
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.diagrams import (
    RectDiagram,
    all_diagrams,
    is_lower_triangular,
    lower_triangular,
    minimal_lower_reps,
    orbit_len,
    shift,
    shift_pow,
    stat_d,
    stat_e,
    stat_l,
    tilde_normalize,
    twist,
)
from src.exceptions import InconsistencyError, PreconditionError
from src.staircase import left_end_identity, middle_by_columns
from src.utils.logging import LoggingContext, get_logger

logger = get_logger(__name__)


class Verdict(Enum):
    CERTIFIED = "certified"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, order=True)
class ExpPair:
    """Σ^{diagram}U*(-twist)"""

    diagram: RectDiagram
    twist: int

    def shifted(self, t: int) -> "ExpPair":
        return ExpPair(self.diagram, self.twist + t)

    def __str__(self) -> str:
        return f"({self.diagram},{self.twist})"


@dataclass
class TargetTranscript:
    """How one generator was expressed through admissible pairs"""

    target: RectDiagram
    offset: int
    generations: List[List[ExpPair]] = field(default_factory=list)
    final: List[ExpPair] = field(default_factory=list)
    rejected: List[ExpPair] = field(default_factory=list)
    bad_pairs: List[ExpPair] = field(default_factory=list)
    rewrites: List[Tuple[ExpPair, List[ExpPair]]] = field(default_factory=list)
    claim1_checks: int = 0
    claim2_checks: int = 0
    verdict: Verdict = Verdict.CERTIFIED

    @property
    def iterations(self) -> int:
        return max(len(self.generations) - 1, 0)


@dataclass
class GenerationCertificate:
    kind: str
    n: int
    k: int
    transcripts: List[TargetTranscript] = field(default_factory=list)
    budget: Optional[int] = None
    prerequisite: Optional["GenerationCertificate"] = None

    @property
    def verdict(self) -> Verdict:
        verdicts = [t.verdict for t in self.transcripts]
        if self.prerequisite is not None:
            verdicts.append(self.prerequisite.verdict)
        if Verdict.FAILED in verdicts:
            return Verdict.FAILED
        if Verdict.INCONCLUSIVE in verdicts:
            return Verdict.INCONCLUSIVE
        return Verdict.CERTIFIED

    @property
    def bad_pairs(self) -> List[ExpPair]:
        return sorted({p for t in self.transcripts for p in t.bad_pairs})


# Exp sets

def _middle_pairs(lam: RectDiagram) -> List[ExpPair]:
    pairs = []
    for _, mu in middle_by_columns(lam):
        pairs.append(ExpPair(tilde_normalize(mu), lam.width - mu.rows[0]))
    return pairs


def staircase_pairs(lam: RectDiagram) -> FrozenSet[ExpPair]:
    """
    The staircase of λ (λ_1 = n-k) read as an expression of Σ^λU* through
    tilde-normalized pairs: (μ̃_i, n-k-μ_{i,1}) and (λ̃', n-k-λ'_1+1)
    """
    left, t = left_end_identity(lam)
    return frozenset(_middle_pairs(lam) + [ExpPair(left, t)])


def exp_of(lam: RectDiagram) -> FrozenSet[ExpPair]:
    """
    Exp(λ): {(λ, 0)} for λ lower triangular, otherwise the staircase pairs

    Raises:
        PreconditionError: if λ is neither lower triangular nor has λ_1 = n-k
    """
    if is_lower_triangular(lam):
        return frozenset({ExpPair(lam, 0)})
    if lam.rows[0] != lam.width:
        raise PreconditionError(f"Exp needs λ_1 = n-k or λ lower triangular; tilde-normalize {lam} first")
    return staircase_pairs(lam)


def _check_claims(parent: RectDiagram, children: Iterable[ExpPair], transcript: Optional[TargetTranscript]) -> None:
    children = list(children)
    bound = max(stat_d(parent) - 1, 0)
    worst = max(stat_d(p.diagram) for p in children)
    if worst > bound:
        raise InconsistencyError(f"max d over Exp({parent}) is {worst}, above {bound}")
    e_parent = stat_e(parent)
    for p in children:
        if p.twist > stat_e(p.diagram) - e_parent:
            raise InconsistencyError(
                f"Pair {p} of Exp({parent}) violates t <= e(μ) - e(λ) = {stat_e(p.diagram) - e_parent}"
            )
    if transcript is not None:
        transcript.claim1_checks += 1
        transcript.claim2_checks += len(children)


def exp_iterate(
    lam: RectDiagram,
    max_steps: Optional[int] = None,
    transcript: Optional[TargetTranscript] = None,
) -> List[List[ExpPair]]:
    """
    Iterate Exp until every pair is lower triangular

    Generation 0 is {(λ, 0)}; generation j+1 replaces each pair (μ, t) by
    Exp(μ)[t]. The decrement of max d and the bound t <= e(μ) - e(λ) are
    asserted at every expansion.

    Args:
        lam: diagram with λ_1 = n-k (or lower triangular)
        max_steps: expansion limit, d(λ) by default

    Raises:
        InconsistencyError: if iteration does not stop within max_steps or a
            bound fails
    """
    if not is_lower_triangular(lam) and lam.rows[0] != lam.width:
        raise PreconditionError(f"exp_iterate needs λ_1 = n-k, got {lam}")
    limit = stat_d(lam) if max_steps is None else max_steps
    current: Set[ExpPair] = {ExpPair(lam, 0)}
    generations = [sorted(current)]
    steps = 0
    while any(not is_lower_triangular(p.diagram) for p in current):
        if steps >= limit:
            raise InconsistencyError(f"Exp iteration for {lam} did not stop within {limit} steps")
        following: Set[ExpPair] = set()
        for p in current:
            children = exp_of(p.diagram)
            if not is_lower_triangular(p.diagram):
                _check_claims(p.diagram, children, transcript)
            following |= {c.shifted(p.twist) for c in children}
        current = following
        generations.append(sorted(current))
        steps += 1
    return generations


def _certify_b_target(lam: RectDiagram) -> TargetTranscript:
    offset = lam.width - lam.rows[0]
    normalized = tilde_normalize(lam)
    if stat_e(normalized) != stat_e(lam) + offset:
        raise InconsistencyError(f"e is not additive under the twist of {lam} by {offset}")
    transcript = TargetTranscript(lam, offset)
    transcript.generations = exp_iterate(normalized, transcript=transcript)
    transcript.final = transcript.generations[-1]
    transcript.rejected = [p for p in transcript.final if p.twist + offset >= stat_l(p.diagram)]
    if transcript.rejected:
        transcript.verdict = Verdict.FAILED
        logger.debug(f"{lam}: pairs outside their blocks {[str(p) for p in transcript.rejected]}")
    return transcript


def certify_B(n: int, k: int) -> GenerationCertificate:
    """
    Certify that every Σ^λU*, λ in Y_{n,k}, lies in ⟨B'_{n-1}(1-n), ..., B'_0⟩

    Failures of the final check are recorded in the certificate; a failure
    of the intermediate bounds raises InconsistencyError.
    """
    certificate = GenerationCertificate("B", n, k)
    with LoggingContext(logger, n=n, k=k, kind="B"):
        for lam in all_diagrams(n, k):
            certificate.transcripts.append(_certify_b_target(lam))
    logger.info(f"certify B on Gr({k},{n}): {certificate.verdict.value}")
    return certificate


async def certify_B_async(n: int, k: int, jobs: int = 1) -> GenerationCertificate:
    """certify_B with targets processed in worker threads, at most `jobs` at a time"""
    semaphore = asyncio.Semaphore(max(1, jobs))

    async def run(lam: RectDiagram) -> TargetTranscript:
        async with semaphore:
            return await asyncio.to_thread(_certify_b_target, lam)

    transcripts = await asyncio.gather(*(run(lam) for lam in all_diagrams(n, k)))
    return GenerationCertificate("B", n, k, sorted(transcripts, key=lambda t: t.target.rows))


# Dual A decomposition

def right_resolution(mu: RectDiagram) -> List[ExpPair]:
    """
    Σ^μU*(-(μ_k+1)) through the staircase of ρ = shift^{n-1}(μ(-μ_k)):
    the pairs {(ρ, 0)} and the middle pairs of ρ, in lex order
    """
    rho = shift_pow(twist(mu, -mu.rows[-1]), mu.n - 1)
    if twist(shift(rho), -1) != twist(mu, -(mu.rows[-1] + 1)):
        raise InconsistencyError(f"Left end of the staircase of {rho} is not Σ^{mu}U*(-{mu.rows[-1] + 1})")
    return sorted({ExpPair(rho, 0), *_middle_pairs(rho)})


def _certify_a_target(
    target: ExpPair,
    base: FrozenSet[RectDiagram],
    support: Callable[[RectDiagram], int],
    budget: int,
) -> TargetTranscript:
    transcript = TargetTranscript(target.diagram, target.twist)
    current: Set[ExpPair] = {target}
    transcript.generations.append(sorted(current))
    rewritten: Set[ExpPair] = set()
    steps = 0

    while True:
        if steps > budget:
            transcript.verdict = Verdict.INCONCLUSIVE
            break
        pending = [p for p in current if p.diagram not in base]
        if pending:
            following = {p for p in current if p.diagram in base}
            for p in pending:
                following |= {c.shifted(p.twist) for c in staircase_pairs(p.diagram)}
            current = following
            transcript.generations.append(sorted(current))
            steps += 1
            continue

        bad = sorted(p for p in current if p.twist >= support(p.diagram))
        if not bad:
            break
        pick = bad[0]
        transcript.bad_pairs.append(pick)
        logger.debug(f"Bad pair {pick} while expressing {target}")
        if pick in rewritten:
            transcript.verdict = Verdict.INCONCLUSIVE
            break
        delta = pick.twist - (pick.diagram.rows[-1] + 1)
        if delta < 0:
            transcript.verdict = Verdict.FAILED
            break
        replacement = [p.shifted(delta) for p in right_resolution(pick.diagram)]
        rewritten.add(pick)
        transcript.rewrites.append((pick, replacement))
        current = (current - {pick}) | set(replacement)
        transcript.generations.append(sorted(current))
        steps += 1

    transcript.final = sorted(current)
    return transcript


def certify_A_experimental(n: int, k: int, budget_factor: int = 1) -> GenerationCertificate:
    """
    Try to express every generator of B' through the dual A' decomposition

    Generators Σ^μU*(-t) of B' that are not already in A' are expanded by
    staircases down to Y^ml; pairs outside their A' block are rewritten by
    right resolutions. The verdict is "inconclusive" when the rewrite budget
    budget_factor·n·|Y_{n,k}| runs out or a rewrite repeats.
    """
    budget = budget_factor * n * len(all_diagrams(n, k))
    certificate = GenerationCertificate("A", n, k, budget=budget, prerequisite=certify_B(n, k))
    base = frozenset(minimal_lower_reps(n, k))
    with LoggingContext(logger, n=n, k=k, kind="A"):
        for mu in lower_triangular(n, k):
            for t in range(stat_l(mu)):
                if mu in base and t < orbit_len(mu):
                    continue
                transcript = _certify_a_target(ExpPair(mu, t), base, orbit_len, budget)
                certificate.transcripts.append(transcript)
    logger.info(
        f"certify A on Gr({k},{n}): {certificate.verdict.value}, "
        f"{len(certificate.transcripts)} targets, bad pairs {[str(p) for p in certificate.bad_pairs]}"
    )
    return certificate
