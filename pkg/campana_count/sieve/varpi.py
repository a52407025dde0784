"""The inclusion-exclusion weight varpi(s, t).

For a positive m-full tuple x with decompositions (u_i, v_i), primitivity is

    [gcd(x) = 1] = prod_p (1 - prod_i [p | x_i])

and [p | x_i] only depends on which slots of coordinate i (u_i or one of the
pairwise coprime v_{i,r}) the prime p divides. Expanding each indicator over
the lattice of slot sets by Moebius inversion and collecting terms gives

    [gcd(x) = 1] = sum_{(s, t)} varpi(s, t) [s_i | u_i, t_{i,r} | v_{i,r}]

with varpi multiplicative over primes. At a prime p the local value is 1 when
p touches no coordinate, -prod_i c_i(A_i) when p touches every coordinate
through slot sets A_i, and 0 otherwise. In particular varpi vanishes when
some entry is divisible by p^2 or when p misses a coordinate.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import factorint

from .lattice import STPair, check_pair_shape, enumerate_T

logger = logging.getLogger(__name__)

# (p divides s_i, index r of the t_{i,r} divisible by p or 0)
Slots = Tuple[bool, int]


def _sub_slots(slots: Slots) -> List[Slots]:
    in_s, r = slots
    return [(a, b) for a in ({False, in_s}) for b in ({0, r})]


def _divides_coordinate(slots: Slots) -> int:
    return 1 if slots[0] or slots[1] else 0


@lru_cache(maxsize=None)
def local_inversion_table(m_i: int) -> Dict[Slots, int]:
    """Moebius coefficients c(A) over the slot lattice of one coordinate.

    c is the unique function with sum_{A' <= A} c(A') = [A nonempty].
    """
    table: Dict[Slots, int] = {}
    for in_s in (False, True):
        for r in range(m_i):
            slots = (in_s, r)
            size = int(in_s) + int(r > 0)
            total = 0
            for sub in _sub_slots(slots):
                sub_size = int(sub[0]) + int(sub[1] > 0)
                total += (-1) ** (size - sub_size) * _divides_coordinate(sub)
            table[slots] = total
    logger.debug(f"Built slot inversion table for m={m_i}: {table}")
    return table


def local_varpi(slots: Sequence[Slots], m: Sequence[int]) -> int:
    """Local factor of varpi at one prime, given each coordinate's slot set."""
    touched = [bool(_divides_coordinate(sl)) for sl in slots]
    if not any(touched):
        return 1
    if not all(touched):
        return 0
    product = -1
    for sl, mi in zip(slots, m):
        product *= local_inversion_table(mi)[sl]
    return product


def _slots_at(pair: STPair, i: int, p: int) -> Tuple[Slots, bool]:
    """Slot set of coordinate i at p, and whether it is admissible."""
    if pair.s[i] % (p * p) == 0:
        return (False, 0), False
    hits = []
    for r, tr in enumerate(pair.t[i], start=1):
        if tr % p == 0:
            if tr % (p * p) == 0:
                return (False, 0), False
            hits.append(r)
    if len(hits) > 1:
        return (False, 0), False
    return (pair.s[i] % p == 0, hits[0] if hits else 0), True


def varpi(pair: STPair, m: Optional[Sequence[int]] = None) -> int:
    """Inclusion-exclusion weight of (s, t); varpi(1, 1) = 1.

    The weights m default to len(t_i) + 1.
    """
    m = tuple(m) if m is not None else tuple(len(row) + 1 for row in pair.t)
    check_pair_shape(pair, m)
    value = 1
    for p in pair.support():
        slots = []
        for i in range(len(m)):
            sl, ok = _slots_at(pair, i, p)
            if not ok:
                return 0
            slots.append(sl)
        value *= local_varpi(slots, m)
        if value == 0:
            return 0
    return value


def vanishing_violations(pairs: Iterable[STPair], m: Sequence[int]) -> List[STPair]:
    """Pairs where varpi is nonzero although an entry is divisible by p^2 or
    some prime misses a coordinate. Always empty for this construction."""
    bad = []
    for pair in pairs:
        if varpi(pair, m) == 0:
            continue
        entries = [x for i in range(len(m)) for x in (pair.s[i],) + pair.t[i]]
        square = any(e > 1 for x in entries for e in factorint(x).values())
        supports = [set(factorint(pair.coordinate_product(i))) for i in range(len(m))]
        joint = all(sup == supports[0] for sup in supports)
        if square or not joint:
            bad.append(pair)
    return bad


def growth_violations(
    pairs: Iterable[STPair], m: Sequence[int], exponent: float = 0.5
) -> List[Tuple[STPair, int]]:
    """Pairs with |varpi| > (max s * max t)^exponent; logged as warnings."""
    found = []
    for pair in pairs:
        w = varpi(pair, m)
        largest_t = max((x for row in pair.t for x in row), default=1)
        if abs(w) > (max(pair.s) * largest_t) ** exponent:
            logger.warning(f"varpi{pair.to_dict()} = {w} exceeds growth bound")
            found.append((pair, w))
    return found


def varpi_table(
    R: float, m: Sequence[int], cap: Optional[int] = None
) -> List[Tuple[STPair, int]]:
    """(pair, varpi) for every pair of T_R, in stream order."""
    return [(pair, varpi(pair, m)) for pair in enumerate_T(R, m, cap)]
