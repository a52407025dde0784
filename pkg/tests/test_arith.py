"""Tests for m-full arithmetic: valuations, decomposition and enumeration."""

import pytest
from sympy import factorint

from campana_count.core.arith import (
    MFullDecomposition,
    enumerate_m_full,
    enumerate_m_full_outside,
    is_m_full,
    is_squarefree,
    m_full_compose,
    m_full_decompose,
    m_full_witness,
    moebius,
    p_adic_valuation,
    squarefree_sieve,
)
from campana_count.core.errors import DomainError


class TestValuation:
    """Test cases for p-adic valuation and the Moebius function."""

    def test_valuation_values(self):
        """Exponents are read off the factorization."""
        assert p_adic_valuation(72, 2) == 3
        assert p_adic_valuation(72, 3) == 2
        assert p_adic_valuation(72, 5) == 0
        assert p_adic_valuation(-96, 2) == 5

    def test_valuation_of_zero_rejected(self):
        """v_p(0) is undefined."""
        with pytest.raises(DomainError):
            p_adic_valuation(0, 2)

    def test_valuation_non_prime_rejected(self):
        """The base must be prime."""
        with pytest.raises(DomainError):
            p_adic_valuation(12, 4)

    def test_moebius(self):
        """mu on small arguments."""
        assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]

    def test_squarefree_sieve_matches_factorization(self):
        """Sieve flags agree with is_squarefree."""
        flags = squarefree_sieve(500)
        assert not flags[0]
        for n in range(1, 501):
            assert bool(flags[n]) == is_squarefree(n)


class TestMFull:
    """Test cases for is_m_full and its witness prime."""

    def test_squareful(self):
        assert is_m_full(72, 2)
        assert not is_m_full(12, 2)
        assert is_m_full(1, 5)
        assert is_m_full(-8, 3)

    def test_exempt_primes(self):
        """Primes in S are not required to appear to the m-th power."""
        assert not is_m_full(12, 2)
        assert is_m_full(12, 2, S=[3])

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            is_m_full(0, 2)

    def test_witness(self):
        assert m_full_witness(12, 2) == 3
        assert m_full_witness(72, 2) is None


class TestDecomposition:
    """Test cases for the unique (sign, u, v) decomposition."""

    def test_decompose_72(self):
        """72 = 3^2 * 2^3."""
        decomposition = m_full_decompose(72, 2)
        assert decomposition.sign == 1
        assert decomposition.u == 3
        assert decomposition.v == (2,)

    def test_decompose_negative_cube(self):
        """-8 = -(2)^3 with m = 3."""
        decomposition = m_full_decompose(-8, 3)
        assert decomposition == MFullDecomposition(sign=-1, u=2, v=(1, 1), m=3)

    def test_decompose_one(self):
        """1 decomposes trivially for every m."""
        decomposition = m_full_decompose(1, 5)
        assert decomposition.u == 1
        assert decomposition.v == (1, 1, 1, 1)

    def test_decompose_not_m_full(self):
        """The witnessing prime is attached to the error."""
        with pytest.raises(DomainError) as excinfo:
            m_full_decompose(12, 2)
        assert excinfo.value.witness == 3
        assert "12" in str(excinfo.value)

    def test_decompose_zero(self):
        with pytest.raises(DomainError):
            m_full_decompose(0, 2)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_round_trip_and_invariants(self, m):
        """compose(decompose(x)) == x with squarefree, pairwise coprime v."""
        for x in enumerate_m_full(m, 20000):
            for signed in (x, -x):
                decomposition = m_full_decompose(signed, m)
                decomposition.validate()
                assert m_full_compose(decomposition) == signed

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_round_trip_to_one_million(self, m):
        for x in enumerate_m_full(m, 10**6):
            decomposition = m_full_decompose(-x, m)
            decomposition.validate()
            assert m_full_compose(decomposition) == -x

    def test_uniqueness_against_brute_force(self):
        """Exactly one (u, v) with squarefree coprime v represents each 3-full x."""
        limit = 10000
        for x in enumerate_m_full(3, limit):
            matches = []
            for v1 in range(1, 20):
                for v2 in range(1, 7):
                    weight = v1**4 * v2**5
                    if weight > x or x % weight:
                        continue
                    rest = x // weight
                    u = round(rest ** (1 / 3))
                    for candidate in (u - 1, u, u + 1):
                        if candidate >= 1 and candidate**3 == rest:
                            try:
                                MFullDecomposition(1, candidate, (v1, v2), 3).validate()
                            except DomainError:
                                continue
                            matches.append((candidate, v1, v2))
            assert len(matches) == 1, (x, matches)
            decomposition = m_full_decompose(x, 3)
            assert matches[0] == (decomposition.u,) + decomposition.v

    def test_compose_rejects_non_coprime(self):
        """v-components must be pairwise coprime."""
        with pytest.raises(DomainError):
            m_full_compose(MFullDecomposition(1, 1, (2, 2), 3))

    def test_compose_rejects_non_squarefree(self):
        with pytest.raises(DomainError):
            m_full_compose(MFullDecomposition(1, 1, (4,), 2))


class TestEnumeration:
    """Test cases for enumerate_m_full."""

    def test_squareful_census(self):
        """Squareful numbers up to 50."""
        assert list(enumerate_m_full(2, 50)) == [1, 4, 8, 9, 16, 25, 27, 32, 36, 49]

    def test_divisibility_constraints(self):
        """s = 2 forces 2 | u; 32 = 2^2 * 2^3 qualifies alongside 4, 16, 36."""
        assert list(enumerate_m_full(2, 50, s=2, t=(1,))) == [4, 16, 32, 36]

    def test_t_constraint(self):
        """t = (2,) forces 2 | v_1."""
        values = list(enumerate_m_full(2, 200, t=(2,)))
        assert values == [8, 32, 72, 128, 200]

    def test_cubeful(self):
        assert list(enumerate_m_full(3, 100)) == [1, 8, 16, 27, 32, 64, 81]

    def test_ascending_and_unique(self):
        values = list(enumerate_m_full(3, 10**5))
        assert values == sorted(set(values))

    def test_empty_bound(self):
        assert list(enumerate_m_full(2, 0)) == []

    def test_wrong_t_length(self):
        with pytest.raises(DomainError):
            list(enumerate_m_full(3, 100, t=(1,)))

    def test_agrees_with_scan(self):
        """Enumeration equals the is_m_full filter."""
        for m in (2, 3, 4):
            expected = [x for x in range(1, 5001) if is_m_full(x, m)]
            assert list(enumerate_m_full(m, 5000)) == expected

    @pytest.mark.slow
    def test_census_large(self):
        """Set equality with the is_m_full scan at B = 10^5."""
        expected = {x for x in range(1, 10**5 + 1) if all(e >= 2 for e in factorint(x).values())}
        assert set(enumerate_m_full(2, 10**5)) == expected

    def test_outside_bad_primes(self):
        """Values m-full away from S."""
        values = list(enumerate_m_full_outside(2, 50, [3]))
        expected = [x for x in range(1, 51) if is_m_full(x, 2, S=[3])]
        assert values == expected
        assert 3 in values and 12 in values

    def test_outside_rejects_non_prime(self):
        with pytest.raises(DomainError):
            list(enumerate_m_full_outside(2, 50, [4]))
