"""Index sets for the inclusion-exclusion over primitive solutions.

An STPair (s, t) carries one s_i per coordinate and t_{i,r} for
1 <= r <= m_i - 1. Its coordinate weight is

    w_i(s, t) = s_i^(m_i) * prod_r t_{i,r}^(m_i + r)

and T_R holds the pairs with every entry squarefree, t_{i,.} pairwise
coprime, w_i <= R for every i, and joint prime support (a prime dividing one
coordinate's s_i t_{i,1}...t_{i,m_i-1} divides every coordinate's).

Both T_R and V_R are produced in order of increasing total weight with a
lexicographic tie-break, so truncating a stream is deterministic.
"""

import logging
import math
from dataclasses import dataclass
from itertools import product
from math import gcd, prod
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import factorint, integer_nthroot, primerange

from ..core.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class STPair:
    """Divisibility data (s, t) for one inclusion-exclusion term."""

    s: Tuple[int, ...]
    t: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        object.__setattr__(self, "t", tuple(tuple(int(x) for x in row) for row in self.t))
        if len(self.s) != len(self.t):
            raise DomainError(f"s has {len(self.s)} entries but t has {len(self.t)} rows")
        if any(x < 1 for x in self.s) or any(x < 1 for row in self.t for x in row):
            raise DomainError("s and t entries must be positive")

    @classmethod
    def trivial(cls, m: Sequence[int]) -> "STPair":
        return cls(tuple(1 for _ in m), tuple((1,) * (mi - 1) for mi in m))

    @property
    def is_trivial(self) -> bool:
        return all(x == 1 for x in self.s) and all(x == 1 for row in self.t for x in row)

    def coordinate_product(self, i: int) -> int:
        """s_i * t_{i,1} * ... * t_{i,m_i-1}."""
        return self.s[i] * prod(self.t[i])

    def support(self) -> Tuple[int, ...]:
        """Primes dividing any entry."""
        primes = set()
        for i in range(len(self.s)):
            primes.update(factorint(self.coordinate_product(i)))
        return tuple(sorted(primes))

    def to_dict(self) -> dict:
        return {"s": list(self.s), "t": [list(row) for row in self.t]}


@dataclass(frozen=True)
class GammaVector:
    """gamma_i = s_i^(k m_i) prod_r (t_{i,r} v~_{i,r})^(k (m_i + r))."""

    gamma: Tuple[int, ...]


def coordinate_weight(s_i: int, t_i: Sequence[int], m_i: int) -> int:
    weight = s_i**m_i
    for r, tr in enumerate(t_i, start=1):
        weight *= tr ** (m_i + r)
    return weight


def pair_weight(pair: STPair, m: Sequence[int]) -> int:
    """Total weight prod_i w_i(s, t), the ordering key for T_R."""
    return prod(coordinate_weight(pair.s[i], pair.t[i], mi) for i, mi in enumerate(m))


def check_pair_shape(pair: STPair, m: Sequence[int]) -> None:
    if len(pair.s) != len(m):
        raise DomainError(f"pair has {len(pair.s)} coordinates, weights have {len(m)}")
    for i, mi in enumerate(m):
        if len(pair.t[i]) != mi - 1:
            raise DomainError(f"t row {i} has {len(pair.t[i])} entries, expected {mi - 1}")


def gamma_of(
    pair: STPair, v_tilde: Sequence[Sequence[int]], k: int, m: Sequence[int]
) -> GammaVector:
    """The scaling vector gamma attached to (s, t, v~)."""
    check_pair_shape(pair, m)
    if len(v_tilde) != len(m):
        raise DomainError(f"v~ has {len(v_tilde)} rows, expected {len(m)}")
    gamma = []
    for i, mi in enumerate(m):
        if len(v_tilde[i]) != mi - 1:
            raise DomainError(f"v~ row {i} has {len(v_tilde[i])} entries, expected {mi - 1}")
        value = pair.s[i] ** (k * mi)
        for r, (tr, vr) in enumerate(zip(pair.t[i], v_tilde[i]), start=1):
            value *= (tr * vr) ** (k * (mi + r))
        gamma.append(value)
    return GammaVector(tuple(gamma))


def _squarefree(x: int) -> bool:
    return all(e == 1 for e in factorint(x).values())


def in_T(pair: STPair, m: Sequence[int], R: float) -> bool:
    """Direct test of every T_R constraint."""
    check_pair_shape(pair, m)
    for i, mi in enumerate(m):
        entries = (pair.s[i],) + pair.t[i]
        if not all(_squarefree(x) for x in entries):
            return False
        row = pair.t[i]
        if any(gcd(row[a], row[b]) != 1 for a in range(len(row)) for b in range(a + 1, len(row))):
            return False
        if coordinate_weight(pair.s[i], row, mi) > R:
            return False
    supports = [set(factorint(pair.coordinate_product(i))) for i in range(len(m))]
    return all(sup == supports[0] for sup in supports)


def _local_patterns(m_i: int) -> List[Tuple[bool, int, int]]:
    """Nonempty ways a prime p can enter coordinate i: (in s_i, slot r or 0, exponent)."""
    patterns = [(True, 0, m_i)]
    for r in range(1, m_i):
        patterns.append((False, r, m_i + r))
        patterns.append((True, r, 2 * m_i + r))
    return patterns


def enumerate_T(R: float, weights: Sequence[int], cap: Optional[int] = None) -> Iterator[STPair]:
    """Stream T_R in order of increasing total weight.

    Args:
        R: coordinate-weight bound (math.inf allowed when cap is given)
        weights: m_i for each coordinate
        cap: bound on the radical, the product of the distinct support
            primes, so every support prime is <= cap as well but a pair
            supported on 2 and 3 needs cap >= 6

    Raises:
        DomainError: R infinite without a cap.
    """
    m = tuple(weights)
    if math.isinf(R) and cap is None:
        raise DomainError("enumerate_T with R = inf needs a support cap")
    if R < 1:
        return iter(())

    if math.isinf(R):
        prime_bound = cap
    else:
        prime_bound = int(integer_nthroot(int(R), min(m))[0])
        if cap is not None:
            prime_bound = min(prime_bound, cap)
    choices = list(product(*(_local_patterns(mi) for mi in m)))

    found: List[Tuple[int, STPair]] = []
    primes = list(primerange(2, prime_bound + 1))

    def walk(start: int, radical: int, s: List[int], t: List[List[int]], w: List[int]):
        pair = STPair(tuple(s), tuple(tuple(row) for row in t))
        found.append((prod(w), pair))
        for j in range(start, len(primes)):
            p = primes[j]
            if cap is not None and radical * p > cap:
                break
            # every coordinate absorbs at least p^(m_i)
            if any(wi * p**mi > R for wi, mi in zip(w, m)):
                break
            for choice in choices:
                new_w = [wi * p**e for wi, (_, _, e) in zip(w, choice)]
                if any(x > R for x in new_w):
                    continue
                new_s = [si * p if in_s else si for si, (in_s, _, _) in zip(s, choice)]
                new_t = [list(row) for row in t]
                for i, (_, r, _) in enumerate(choice):
                    if r:
                        new_t[i][r - 1] *= p
                walk(j + 1, radical * p, new_s, new_t, new_w)

    walk(0, 1, [1] * len(m), [[1] * (mi - 1) for mi in m], [1] * len(m))
    found.sort(key=lambda item: (item[0], item[1].s, item[1].t))
    logger.debug(f"enumerate_T(R={R}, m={m}, cap={cap}): {len(found)} pairs")
    return iter(pair for _, pair in found)


def _v_rows(
    s_i: int, t_i: Tuple[int, ...], m_i: int, R: float
) -> List[Tuple[int, Tuple[int, ...]]]:
    """All rows v~_i with the coordinate weight of (s_i, t_i v~_i) <= R."""
    rows: List[Tuple[int, Tuple[int, ...]]] = []

    def walk(r: int, weight: int, used: int, acc: List[int]):
        if r == m_i:
            rows.append((weight, tuple(acc)))
            return
        tr = t_i[r - 1]
        exponent = m_i + r
        v = 1
        while weight * (tr * v) ** exponent <= R:
            tv = tr * v
            if _squarefree(tv) and gcd(tv, used) == 1:
                acc.append(v)
                walk(r + 1, weight * tv**exponent, used * tv, acc)
                acc.pop()
            v += 1

    base = s_i**m_i
    if base <= R:
        walk(1, base, 1, [])
    return rows


def enumerate_V(
    R: float, pair: STPair, weights: Sequence[int], k: int = 1
) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Stream V_R(s, t) in order of increasing total weight.

    The bound s_i^(k m_i) prod (t v~)^(k (m_i + r)) <= R^k is the k-th power of
    the coordinate-weight bound, so k does not change the set.
    """
    m = tuple(weights)
    check_pair_shape(pair, m)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if math.isinf(R):
        raise DomainError("enumerate_V needs a finite R")
    per_coordinate = [_v_rows(pair.s[i], pair.t[i], mi, R) for i, mi in enumerate(m)]
    combos = []
    for choice in product(*per_coordinate):
        combos.append((prod(w for w, _ in choice), tuple(row for _, row in choice)))
    combos.sort()
    return iter(v for _, v in combos)
