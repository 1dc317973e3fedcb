"""
Unit tests for Ext groups between twisted Schur bundles
"""

import itertools

import pytest

from src import ext as ext_module
from src.diagrams import all_diagrams, make, precedes, shift, upper_triangular, stat_r
from src.exceptions import ContextMismatchError
from src.ext import (
    GradedRep,
    euler_characteristic,
    euler_characteristic_oracle,
    exceptionality_sweep,
    ext_groups,
    is_exceptional,
    is_left_orthogonal,
    serre_check,
)


class TestGradedRep:
    """Test the graded representation container"""

    def test_add_and_dims(self):
        rep = GradedRep()
        rep.add(0, (0, 0, 0, 0), 1)
        rep.add(2, (1, 0, 0, 0), 2)
        rep.add(2, (1, 0, 0, 0))
        rep.add(3, (0, 0, 0, 0), 0)
        assert rep.degrees == [0, 2]
        assert rep.dims() == {0: 1, 2: 12}
        assert rep.euler_characteristic() == 13
        assert not rep.is_zero()

    def test_one_dimensional(self):
        rep = GradedRep()
        rep.add(3, (-1,) * 6)
        assert rep.is_one_dimensional_in(3)
        assert not rep.is_one_dimensional_in(0)

    def test_empty(self):
        rep = GradedRep()
        assert rep.is_zero()
        assert rep.total_dim(0) == 0
        assert rep.euler_characteristic() == 0


class TestExtGroups:
    """Test Ext computations"""

    def test_exceptional_gr36(self, gr36):
        for lam in all_diagrams(*gr36):
            assert ext_groups(lam, 0, lam).is_one_dimensional_in(0)

    def test_connecting_ext(self, gr36):
        """λ_1 = n-k: Ext^•(Σ^λU*(1), Σ^{λ'}U*) = k[-(n-k)]"""
        for lam in all_diagrams(*gr36):
            if lam.rows[0] == lam.width:
                assert ext_groups(lam, 1, shift(lam)).is_one_dimensional_in(lam.width)

    def test_tautological_twist_vanishes(self):
        ext = ext_groups(make(4, 2, (1, 0)), 1, make(4, 2, (0, 0)))
        assert ext.is_zero()

    def test_weights_are_recorded(self):
        """Hom(O, U*) = V*"""
        ext = ext_groups(make(6, 3, (0, 0, 0)), 0, make(6, 3, (1, 0, 0)))
        assert ext.by_degree == {0: {(1, 0, 0, 0, 0, 0): 1}}

    def test_degree_bound(self, gr24):
        n, k = gr24
        ys = all_diagrams(n, k)
        for lam, mu in itertools.product(ys, repeat=2):
            for t in range(-1, n + 1):
                assert all(q <= k * (n - k) for q in ext_groups(lam, t, mu).degrees)

    def test_hom_implies_inclusion(self):
        """A nonzero Hom(Σ^λU*, Σ^μU*) forces λ ⪯ μ"""
        ys = all_diagrams(5, 2)
        for lam, mu in itertools.product(ys, repeat=2):
            if ext_groups(lam, 0, mu).total_dim(0):
                assert precedes(lam, mu)

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatchError):
            ext_groups(make(6, 3, (0, 0, 0)), 0, make(5, 3, (0, 0, 0)))

    def test_uncached_matches_cached(self):
        lam = make(6, 3, (2, 1, 0))
        cached = ext_groups(lam, 1, shift(lam))
        assert ext_groups(lam, 1, shift(lam), cache=False) == cached

    def test_uncached_call_leaves_memo_table_alone(self, mocker):
        """Only cache=True consults the shared memo table"""
        lam = make(6, 3, (2, 1, 1))
        spy = mocker.spy(ext_module, "_ext_cached")
        ext_groups(lam, 0, lam, cache=False)
        spy.assert_not_called()
        ext_groups(lam, 0, lam)
        spy.assert_called_once_with(lam, 0, lam)


class TestPredicates:
    """Test exceptionality and orthogonality predicates"""

    def test_is_exceptional(self, d36):
        assert is_exceptional(d36(3, 2, 1))

    def test_upper_triangular_orthogonality(self, gr36):
        ys = upper_triangular(*gr36)
        for lam, mu in itertools.product(ys, repeat=2):
            for t in range(1, stat_r(lam)):
                assert is_left_orthogonal(lam, t, mu)

    def test_beyond_the_index(self):
        """O(4) is not left orthogonal to O on Gr(2,4)"""
        o = make(4, 2, (0, 0))
        assert not is_left_orthogonal(o, 4, o)
        assert ext_groups(o, 4, o).is_one_dimensional_in(4)

    def test_serre_small(self):
        for n in range(2, 7):
            for k in range(1, n):
                for lam in all_diagrams(n, k):
                    assert serre_check(lam)

    def test_exceptionality_sweep(self):
        assert exceptionality_sweep(6, 3) == []

    @pytest.mark.slow
    def test_exceptionality_up_to_eight(self):
        for n in range(2, 9):
            for k in range(1, n):
                assert exceptionality_sweep(n, k) == []


class TestEulerCharacteristic:
    """Test the character-theoretic oracle"""

    def test_oracle_gr24(self, gr24):
        ys = all_diagrams(*gr24)
        for lam, mu in itertools.product(ys, repeat=2):
            for t in range(-2, 6):
                assert euler_characteristic(lam, t, mu) == euler_characteristic_oracle(lam, t, mu)

    def test_oracle_gr36_sample(self, d36):
        pairs = [(d36(3, 2, 1), d36(2, 1)), (d36(1), d36(3, 3, 1)), (d36(2, 2), d36())]
        for lam, mu in pairs:
            for t in range(0, 7):
                assert euler_characteristic(lam, t, mu) == euler_characteristic_oracle(lam, t, mu)

    def test_euler_of_structure_sheaf(self):
        o = make(4, 2, (0, 0))
        assert euler_characteristic(o, 0, o) == 1
        assert euler_characteristic_oracle(o, 4, o) == 1
