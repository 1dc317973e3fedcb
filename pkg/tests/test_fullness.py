"""
Unit tests for generation certificates
Exp sets, their iteration, certify_B and the experimental A certifier
"""

import pytest

from src.diagrams import all_diagrams, is_lower_triangular, make, minimal_lower_reps, stat_d, stat_e, stat_l
from src.exceptions import InconsistencyError, PreconditionError
from src.fullness import (
    ExpPair,
    GenerationCertificate,
    TargetTranscript,
    Verdict,
    _certify_a_target,
    certify_A_experimental,
    certify_B,
    certify_B_async,
    exp_iterate,
    exp_of,
    right_resolution,
    staircase_pairs,
)
from src.lefschetz import Kind, build


def pairs(d36, *items):
    return {ExpPair(d36(*rows), t) for rows, t in items}


def contexts(max_n):
    return [(n, k) for n in range(2, max_n + 1) for k in range(1, n)]


class TestExpSets:
    """Test single Exp expansions"""

    def test_staircase_pairs_321(self, d36):
        assert staircase_pairs(d36(3, 2, 1)) == pairs(
            d36, ((3, 3, 2), 1), ((3, 3, 3), 2), ((3, 2, 2), 2), ((3, 2, 1), 2),
        )

    def test_base_case(self, d36):
        assert exp_of(d36(3, 3, 1)) == {ExpPair(d36(3, 3, 1), 0)}
        assert exp_of(d36(3, 2, 1)) == {ExpPair(d36(3, 2, 1), 0)}

    def test_exp_of_310(self, d36):
        assert exp_of(d36(3, 1, 0)) == pairs(
            d36, ((3, 2, 1), 1), ((3, 3, 2), 2), ((3, 3, 3), 3), ((3, 2, 2), 3),
        )

    def test_exp_of_311(self, d36):
        assert exp_of(d36(3, 1, 1)) == pairs(
            d36, ((3, 2, 2), 1), ((3, 3, 3), 2), ((3, 3, 3), 3), ((3, 3, 2), 3),
        )

    def test_staircase_pairs_331(self, d36):
        assert staircase_pairs(d36(3, 3, 1)) == pairs(
            d36, ((3, 3, 2), 1), ((3, 2, 2), 1), ((3, 1, 1), 1), ((3, 1, 0), 1),
        )

    def test_exp_of_needs_full_first_row(self, d36):
        with pytest.raises(PreconditionError):
            exp_of(d36(2, 1))

    def test_claims_hold_for_single_expansions(self):
        """max d drops and t <= e(μ) - e(λ)"""
        for n, k in contexts(7):
            for lam in all_diagrams(n, k):
                if lam.rows[0] != lam.width or is_lower_triangular(lam):
                    continue
                children = exp_of(lam)
                assert max(stat_d(p.diagram) for p in children) <= max(stat_d(lam) - 1, 0)
                for p in children:
                    assert p.twist <= stat_e(p.diagram) - stat_e(lam)

    def test_pair_helpers(self, d36):
        p = ExpPair(d36(3, 2, 1), 2)
        assert p.shifted(1) == ExpPair(d36(3, 2, 1), 3)
        assert str(p) == "((3,2,1),2)"
        assert ExpPair(d36(3, 2, 1), 5) < ExpPair(d36(3, 2, 2), 0)


class TestExpIterate:
    """Test Exp iteration"""

    def test_generations_310(self, d36):
        generations = exp_iterate(d36(3, 1, 0))
        assert generations[0] == [ExpPair(d36(3, 1, 0), 0)]
        assert set(generations[-1]) == exp_of(d36(3, 1, 0))
        assert len(generations) - 1 <= stat_d(d36(3, 1, 0))

    def test_base_needs_no_steps(self, d36):
        assert exp_iterate(d36(3, 3, 1)) == [[ExpPair(d36(3, 3, 1), 0)]]

    def test_transcript_counts_checks(self, d36):
        transcript = TargetTranscript(d36(3, 1, 0), 0)
        exp_iterate(d36(3, 1, 0), transcript=transcript)
        assert transcript.claim1_checks == 1
        assert transcript.claim2_checks == 4

    def test_step_limit(self, d36):
        with pytest.raises(InconsistencyError):
            exp_iterate(d36(3, 1, 0), max_steps=0)

    def test_needs_full_first_row(self, d36):
        with pytest.raises(PreconditionError):
            exp_iterate(d36(1, 1))

    def test_terminates_within_d(self):
        for n, k in contexts(7):
            for lam in all_diagrams(n, k):
                if lam.rows[0] != lam.width:
                    continue
                generations = exp_iterate(lam)
                assert len(generations) - 1 <= stat_d(lam)
                assert all(is_lower_triangular(p.diagram) for p in generations[-1])


class TestCertifyB:
    """Test the B certificate"""

    def test_gr36(self, gr36):
        cert = certify_B(*gr36)
        assert cert.verdict is Verdict.CERTIFIED
        assert len(cert.transcripts) == 20
        assert cert.bad_pairs == []

    def test_gr24(self, gr24):
        assert certify_B(*gr24).verdict is Verdict.CERTIFIED

    def test_final_pairs_are_generators(self, gr36):
        """Every final (μ, t) is a generator of block t + offset of B'"""
        spec = build(Kind.BPRIME, *gr36)
        for transcript in certify_B(*gr36).transcripts:
            for p in transcript.final:
                assert p.twist + transcript.offset < spec.support_of(p.diagram)
                assert p.twist + transcript.offset < stat_l(p.diagram)

    def test_offsets(self, gr36, d36):
        transcripts = {t.target: t for t in certify_B(*gr36).transcripts}
        assert transcripts[d36()].offset == 3
        assert transcripts[d36(2, 1)].offset == 1
        assert transcripts[d36(3, 1)].offset == 0

    def test_small_sweep(self, small_contexts):
        for n, k in small_contexts:
            assert certify_B(n, k).verdict is Verdict.CERTIFIED

    @pytest.mark.slow
    def test_sweep_up_to_eight(self):
        for n, k in contexts(8):
            assert certify_B(n, k).verdict is Verdict.CERTIFIED

    async def test_async_matches_sync(self, gr36):
        parallel = await certify_B_async(*gr36, jobs=3)
        sequential = certify_B(*gr36)
        assert parallel.verdict is sequential.verdict
        assert [t.target for t in parallel.transcripts] == [t.target for t in sequential.transcripts]
        assert [t.final for t in parallel.transcripts] == [t.final for t in sequential.transcripts]


class TestRightResolution:
    """Test the rewrite used by the A certifier"""

    def test_321(self, d36):
        assert right_resolution(d36(3, 2, 1)) == [
            ExpPair(d36(3, 2, 1), 0),
            ExpPair(d36(3, 2, 2), 2),
            ExpPair(d36(3, 3, 2), 1),
            ExpPair(d36(3, 3, 3), 2),
        ]

    def test_322(self, d36):
        assert right_resolution(d36(3, 2, 2)) == [
            ExpPair(d36(3, 1, 0), 0),
            ExpPair(d36(3, 2, 1), 1),
            ExpPair(d36(3, 3, 2), 2),
            ExpPair(d36(3, 3, 3), 3),
        ]


class TestCertifyA:
    """Test the experimental A certifier"""

    def test_gr36(self, gr36, d36):
        cert = certify_A_experimental(*gr36)
        assert cert.verdict is Verdict.CERTIFIED
        assert cert.prerequisite.verdict is Verdict.CERTIFIED
        assert cert.budget == 6 * 20
        assert [(t.target, t.offset) for t in cert.transcripts] == [(d36(3, 3, 1), 0), (d36(3, 3, 1), 1)]
        assert cert.bad_pairs == [ExpPair(d36(3, 2, 1), 2), ExpPair(d36(3, 2, 1), 3)]
        assert [len(t.rewrites) for t in cert.transcripts] == [1, 1]

    def test_gr36_final_pairs_are_good(self, gr36):
        cert = certify_A_experimental(*gr36)
        spec = build(Kind.APRIME, *gr36)
        for transcript in cert.transcripts:
            for p in transcript.final:
                assert p.twist < spec.support_of(p.diagram)

    def test_rewrite_replacement(self, gr36, d36):
        transcript = certify_A_experimental(*gr36).transcripts[1]
        bad, replacement = transcript.rewrites[0]
        assert bad == ExpPair(d36(3, 2, 1), 3)
        assert replacement == [p.shifted(1) for p in right_resolution(d36(3, 2, 1))]

    @pytest.mark.parametrize("n,k", [(5, 2), (7, 3), (4, 2)])
    def test_equal_decompositions_need_no_targets(self, n, k):
        cert = certify_A_experimental(n, k)
        assert cert.transcripts == []
        assert cert.verdict is Verdict.CERTIFIED

    def test_budget_exhaustion(self, d36):
        base = frozenset(minimal_lower_reps(6, 3))
        transcript = _certify_a_target(ExpPair(d36(3, 3, 1), 0), base, lambda d: 6, budget=0)
        assert transcript.verdict is Verdict.INCONCLUSIVE

    def test_no_rewrite_available(self, d36):
        base = frozenset(minimal_lower_reps(6, 3))
        transcript = _certify_a_target(ExpPair(d36(3, 2, 1), 0), base, lambda d: 0, budget=10)
        assert transcript.verdict is Verdict.FAILED
        assert transcript.bad_pairs == [ExpPair(d36(3, 2, 1), 0)]

    @pytest.mark.slow
    def test_gr48_is_recorded(self):
        cert = certify_A_experimental(8, 4)
        assert cert.verdict in set(Verdict)


class TestGenerationCertificate:
    """Test verdict aggregation"""

    def test_failed_wins(self):
        target = make(4, 2, (0, 0))
        cert = GenerationCertificate("B", 4, 2, [
            TargetTranscript(target, 0, verdict=Verdict.INCONCLUSIVE),
            TargetTranscript(target, 0, verdict=Verdict.FAILED),
        ])
        assert cert.verdict is Verdict.FAILED

    def test_prerequisite_counts(self):
        prerequisite = GenerationCertificate("B", 4, 2, [
            TargetTranscript(make(4, 2, (0, 0)), 0, verdict=Verdict.INCONCLUSIVE),
        ])
        cert = GenerationCertificate("A", 4, 2, prerequisite=prerequisite)
        assert cert.verdict is Verdict.INCONCLUSIVE

    def test_empty_is_certified(self):
        assert GenerationCertificate("A", 4, 2).verdict is Verdict.CERTIFIED

    def test_iterations(self):
        transcript = TargetTranscript(make(4, 2, (0, 0)), 0)
        assert transcript.iterations == 0
        transcript.generations = [[], [], []]
        assert transcript.iterations == 2
