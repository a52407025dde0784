"""Integer arithmetic for m-full numbers.

An integer x != 0 is m-full when every prime dividing it divides it at least
m times. Each m-full x has a unique decomposition

    x = sign * u^m * v_1^(m+1) * ... * v_{m-1}^(2m-1)

with every v_r squarefree and the v_r pairwise coprime. Enumeration walks
this parametrization directly, so each m-full value is produced once.

All functions work on Python ints (arbitrary precision); no result depends
on machine word size.
"""

import logging
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy import factorint, integer_nthroot, isprime, multiplicity, primerange

from .errors import DomainError

logger = logging.getLogger(__name__)


def _require_positive(name: str, value: int) -> None:
    if value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value}")


def p_adic_valuation(x: int, p: int) -> int:
    """Exponent of the prime p in x.

    Raises:
        DomainError: if x == 0 or p is not prime.
    """
    if x == 0:
        raise DomainError("p-adic valuation of 0 is undefined")
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    return int(multiplicity(p, abs(x)))


def moebius(n: int) -> int:
    """Moebius function mu(n) for n >= 1."""
    _require_positive("n", n)
    exponents = factorint(n).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


def is_squarefree(n: int) -> bool:
    _require_positive("n", n)
    return all(e == 1 for e in factorint(n).values())


def squarefree_sieve(limit: int) -> np.ndarray:
    """Boolean table flags[k] == (k is squarefree) for 0 <= k <= limit."""
    flags = np.ones(max(limit, 0) + 1, dtype=bool)
    flags[0] = False
    for p in primerange(2, isqrt(max(limit, 0)) + 1):
        flags[p * p :: p * p] = False
    return flags


def is_m_full(x: int, m: int, S: Iterable[int] = ()) -> bool:
    """True iff every prime p not in S with p | x has p^m | x."""
    if x == 0:
        raise DomainError("0 is not m-full")
    _require_positive("m", m)
    exempt = set(S)
    return all(e >= m for p, e in factorint(abs(x)).items() if p not in exempt)


def m_full_witness(x: int, m: int) -> Optional[int]:
    """Smallest prime p with p | x but p^m not dividing x, or None."""
    for p, e in sorted(factorint(abs(x)).items()):
        if e < m:
            return p
    return None


@dataclass(frozen=True)
class MFullDecomposition:
    """Unique decomposition of an m-full integer.

    Attributes:
        sign: +1 or -1
        u: positive integer (any shape)
        v: (v_1, ..., v_{m-1}), squarefree and pairwise coprime
        m: fullness parameter
    """

    sign: int
    u: int
    v: Tuple[int, ...]
    m: int

    def validate(self) -> None:
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if self.m < 1:
            raise DomainError(f"m must be >= 1, got {self.m}")
        if self.u < 1:
            raise DomainError(f"u must be positive, got {self.u}")
        if len(self.v) != self.m - 1:
            raise DomainError(f"expected {self.m - 1} v-components, got {len(self.v)}")
        for r, vr in enumerate(self.v, start=1):
            if vr < 1 or not is_squarefree(vr):
                raise DomainError(f"v_{r}={vr} is not a positive squarefree integer")
        for i in range(len(self.v)):
            for j in range(i + 1, len(self.v)):
                if gcd(self.v[i], self.v[j]) != 1:
                    raise DomainError(f"v_{i + 1} and v_{j + 1} are not coprime")


def m_full_decompose(x: int, m: int) -> MFullDecomposition:
    """Decompose an m-full integer into (sign, u, v).

    For each prime power p^e || x write e = q*m + r with 0 <= r < m. If r == 0
    the whole power goes to u; otherwise p goes to v_r and p^((e-m-r)/m) to u.

    Raises:
        DomainError: x == 0, or x not m-full (witness prime attached).
    """
    if x == 0:
        raise DomainError("0 has no m-full decomposition")
    _require_positive("m", m)
    u = 1
    v = [1] * (m - 1)
    for p, e in factorint(abs(x)).items():
        if e < m:
            raise DomainError(f"{x} is not {m}-full: {p}^{e} divides it", witness=p)
        r = e % m
        if r == 0:
            u *= p ** (e // m)
        else:
            v[r - 1] *= p
            u *= p ** ((e - m - r) // m)
    return MFullDecomposition(sign=1 if x > 0 else -1, u=u, v=tuple(v), m=m)


def m_full_compose(decomposition: MFullDecomposition) -> int:
    """Inverse of m_full_decompose."""
    decomposition.validate()
    m = decomposition.m
    value = decomposition.u**m
    for r, vr in enumerate(decomposition.v, start=1):
        value *= vr ** (m + r)
    return decomposition.sign * value


def _v_tuples(
    m: int, limit: int, t: Sequence[int], sqfree: np.ndarray
) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Yield (v, weight) with weight = prod v_r^(m+r) <= limit and t_r | v_r."""

    def walk(r: int, weight: int, used: int, acc: List[int]):
        if r == m:
            yield tuple(acc), weight
            return
        exponent = m + r
        step = t[r - 1]
        vr = step
        while weight * vr**exponent <= limit:
            if sqfree[vr] and gcd(vr, used) == 1:
                acc.append(vr)
                yield from walk(r + 1, weight * vr**exponent, used * vr, acc)
                acc.pop()
            vr += step

    yield from walk(1, 1, 1, [])


def _check_divisors(m: int, s: int, t: Optional[Sequence[int]]) -> Tuple[int, ...]:
    _require_positive("s", s)
    if t is None:
        return (1,) * (m - 1)
    if len(t) != m - 1:
        raise DomainError(f"expected {m - 1} t-components for m={m}, got {len(t)}")
    for tr in t:
        _require_positive("t_r", tr)
    return tuple(t)


def enumerate_m_full(
    m: int, B: int, s: int = 1, t: Optional[Sequence[int]] = None
) -> Iterator[int]:
    """Yield every positive m-full x <= B whose decomposition has s | u and t_r | v_r.

    Values are produced in ascending order, each exactly once.
    """
    _require_positive("m", m)
    t = _check_divisors(m, s, t)
    bound = int(B)
    if bound < 1:
        return iter(())
    v_limit = int(integer_nthroot(bound, m + 1)[0]) if m > 1 else 1
    sqfree = squarefree_sieve(v_limit)
    values: List[int] = []
    for _, weight in _v_tuples(m, bound, t, sqfree):
        u_max = int(integer_nthroot(bound // weight, m)[0])
        values.extend(u**m * weight for u in range(s, u_max + 1, s))
    values.sort()
    logger.debug(f"enumerate_m_full(m={m}, B={bound}, s={s}, t={t}): {len(values)} values")
    return iter(values)


def _smooth_numbers(primes: Sequence[int], bound: int) -> List[int]:
    found = [1]
    for p in primes:
        extended = []
        for a in found:
            a *= p
            while a <= bound:
                extended.append(a)
                a *= p
        found.extend(extended)
    return found


def enumerate_m_full_outside(m: int, B: int, S: Iterable[int]) -> Iterator[int]:
    """Yield every positive x <= B that is m-full away from the primes in S."""
    primes = sorted(set(S))
    for p in primes:
        if not isprime(p):
            raise DomainError(f"{p} in S is not prime")
    bound = int(B)
    radical = 1
    for p in primes:
        radical *= p
    smooth = _smooth_numbers(primes, bound)
    values: Set[int] = set()
    for y in enumerate_m_full(m, bound):
        if gcd(y, radical) != 1:
            continue
        for a in smooth:
            if a * y <= bound:
                values.add(a * y)
    return iter(sorted(values))
