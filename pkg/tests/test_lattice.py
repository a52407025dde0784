"""Tests for the index sets T_R and V_R and the scaling vector gamma."""

import math
from itertools import product

import pytest

from campana_count.core.errors import DomainError
from campana_count.counting.engine import count_N_d
from campana_count.counting.histogram import count_M
from campana_count.sieve.lattice import (
    STPair,
    enumerate_T,
    enumerate_V,
    gamma_of,
    in_T,
    pair_weight,
)


def brute_force_T(R, m):
    """Every pair in a box large enough to hold T_R, filtered by in_T."""
    ranges = []
    for mi in m:
        ranges.append(range(1, int(R ** (1 / mi)) + 2))
        for r in range(1, mi):
            ranges.append(range(1, int(R ** (1 / (mi + r))) + 2))
    found = set()
    for entries in product(*ranges):
        s, t, pos = [], [], 0
        for mi in m:
            s.append(entries[pos])
            t.append(tuple(entries[pos + 1 : pos + mi]))
            pos += mi
        pair = STPair(tuple(s), tuple(t))
        if in_T(pair, m, R):
            found.add(pair)
    return found


class TestGamma:
    """Test cases for gamma_of."""

    def test_trivial(self):
        pair = STPair.trivial((2, 3))
        assert gamma_of(pair, ((1,), (1, 1)), 2, (2, 3)).gamma == (1, 1)

    def test_single_coordinate(self):
        """3^4 * 2^6 for s = 3, v~ = 2, k = 2, m = 2."""
        pair = STPair((3,), ((1,),))
        assert gamma_of(pair, ((2,),), 2, (2,)).gamma == (5184,)

    def test_cubic(self):
        pair = STPair((1,), ((2, 1),))
        assert gamma_of(pair, ((1, 1),), 1, (3,)).gamma == (16,)

    def test_shape_errors(self):
        pair = STPair((1,), ((1,),))
        with pytest.raises(DomainError):
            gamma_of(pair, ((1, 1),), 1, (2,))
        with pytest.raises(DomainError):
            gamma_of(pair, ((1,),), 1, (3,))


class TestEnumerateT:
    """Test cases for enumerate_T."""

    def test_R_one(self):
        assert list(enumerate_T(1, (2, 3))) == [STPair.trivial((2, 3))]

    def test_two_coordinates_R16(self):
        """Four pairs at p = 2, one at p = 3, plus the trivial pair."""
        pairs = list(enumerate_T(16, (2, 2)))
        assert len(pairs) == 6
        assert pairs[0].is_trivial
        assert pairs[1] == STPair((2, 2), ((1,), (1,)))
        assert pairs[-1] == STPair((3, 3), ((1,), (1,)))
        assert set(pairs) == brute_force_T(16, (2, 2))

    def test_ordered_by_weight(self):
        m = (2, 2, 3)
        weights = [pair_weight(pair, m) for pair in enumerate_T(10**4, m)]
        assert weights == sorted(weights)

    @pytest.mark.parametrize("m", [(2, 2), (2, 3), (2, 2, 2)])
    def test_agrees_with_brute_force(self, m):
        assert set(enumerate_T(100, m)) == brute_force_T(100, m)

    def test_entries_squarefree_and_jointly_supported(self):
        m = (2, 3)
        for pair in enumerate_T(10**5, m):
            assert in_T(pair, m, 10**5)

    def test_infinite_R_needs_cap(self):
        with pytest.raises(DomainError):
            list(enumerate_T(math.inf, (2, 2)))

    def test_infinite_R_with_cap(self):
        """Support primes bounded by the cap."""
        pairs = list(enumerate_T(math.inf, (2, 2), cap=3))
        supports = {p for pair in pairs for p in pair.support()}
        assert supports <= {2, 3}
        # per prime: 3 ways per coordinate, so 9 pairs at p = 2 and 9 at p = 3
        assert len(pairs) == 1 + 9 + 9


class TestEnumerateV:
    """Test cases for enumerate_V."""

    def test_cubes_up_to_eight(self):
        pair = STPair.trivial((2,))
        assert list(enumerate_V(8, pair, (2,))) == [((1,),), ((2,),)]

    def test_squarefree_product(self):
        """t = 2 forces odd v~."""
        pair = STPair((1,), ((2,),))
        rows = list(enumerate_V(10**4, pair, (2,)))
        assert rows[0] == ((1,),)
        assert all(v[0][0] % 2 == 1 for v in rows)

    def test_k_does_not_change_set(self):
        pair = STPair.trivial((2, 2))
        assert list(enumerate_V(500, pair, (2, 2), k=1)) == list(enumerate_V(500, pair, (2, 2), k=3))

    def test_infinite_R_rejected(self):
        with pytest.raises(DomainError):
            list(enumerate_V(math.inf, STPair.trivial((2,)), (2,)))


DECOMPOSITION_INSTANCES = [
    ((1, 1, -2), (2, 2, 2), 2, 100, STPair.trivial((2, 2, 2))),
    ((1, 1, -1), (2, 3, 2), 1, 200, STPair.trivial((2, 3, 2))),
    ((1, 1, -2), (2, 2, 3), 3, 100, STPair.trivial((2, 2, 3))),
    ((1, 1, -1), (2, 2, 2), 1, 500, STPair((2, 2, 2), ((1,), (1,), (1,)))),
    ((1, 1, -1), (2, 3, 2), 1, 400, STPair((1, 1, 1), ((2,), (1, 2), (2,)))),
    ((1, 1, -2), (2, 2, 3), 2, 100, STPair((3, 1, 1), ((1,), (3,), (1, 3)))),
]


class TestDecomposition:
    """N_d(B, s, t) splits into diagonal problems indexed by V_B(s, t)."""

    @pytest.mark.parametrize("d,m,k,B,pair", DECOMPOSITION_INSTANCES)
    def test_sum_over_V_matches_direct_count(self, d, m, k, B, pair):
        direct = count_N_d(d, m, k, B, pair.s, pair.t)
        m_tilde = tuple(k * mi for mi in m)
        split = sum(
            count_M(d, gamma_of(pair, v_tilde, k, m).gamma, m_tilde, B**k)
            for v_tilde in enumerate_V(B, pair, m, k)
        )
        assert split == direct
        if pair.is_trivial:
            assert direct > 0
