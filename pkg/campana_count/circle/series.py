"""The singular series and its local densities.

For coefficients c_i = d_i zeta_i and exponents m~_i,

    A(q) = q^-(n+1) sum_{a mod q, gcd(a, q) = 1} prod_i S(a c_i, q)
    Series = sum_{q >= 1} A(q) = prod_p sum_{j >= 0} A(p^j)

with S the complete sums of circle.weyl. Two truncations are offered:
"qsum" adds A(q) for q <= q_max, "euler" multiplies the local factors
sum_{j <= level} A(p^j) over primes p <= prime_cap. Each local factor equals
the exact local density #{u mod p^l : F(u) = 0 mod p^l} / p^(l n), which
local_density computes by counting residues.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np
from sympy import isprime, primerange

from ..core.budget import Budget, get_budget
from ..core.errors import DomainError
from .weyl import complete_sums, units_mod

logger = logging.getLogger(__name__)

SERIES_MODES = ("qsum", "euler")
INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class SeriesTruncation:
    """Truncation of the singular series.

    Attributes:
        mode: "qsum" or "euler"
        q_max: last modulus in qsum mode
        prime_cap: largest prime in euler mode
        level: largest prime power exponent in euler mode
    """

    mode: str = "qsum"
    q_max: int = 500
    prime_cap: int = 101
    level: int = 3

    def __post_init__(self):
        if self.mode not in SERIES_MODES:
            raise DomainError(f"series mode must be one of {SERIES_MODES}, got '{self.mode}'")
        if self.q_max < 1:
            raise DomainError(f"q_max must be >= 1, got {self.q_max}")
        if self.prime_cap < 2 and self.mode == "euler":
            raise DomainError(f"prime_cap must be >= 2, got {self.prime_cap}")
        if self.level < 0:
            raise DomainError(f"level must be >= 0, got {self.level}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SeriesResult:
    """Truncated singular series and diagnostics.

    Attributes:
        value: truncated series
        tail_estimate: heuristic size of the omitted part
        outside_theorem: sum 1/m~_i <= 3
        local_factors: p -> local factor (euler mode only)
    """

    value: float
    mode: str
    tail_estimate: float
    outside_theorem: bool
    truncation: SeriesTruncation
    terms: int
    local_factors: Dict[int, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "mode": self.mode,
            "tail_estimate": self.tail_estimate,
            "outside_theorem": self.outside_theorem,
            "truncation": self.truncation.to_dict(),
            "terms": self.terms,
            "local_factors": {str(p): v for p, v in self.local_factors.items()},
        }


def series_term(q: int, coefficients: Sequence[int], m_tilde: Sequence[int]) -> float:
    """A(q) for coefficients c_i and exponents m~_i."""
    a = units_mod(q)
    product = np.ones(len(a), dtype=complex)
    for c, m in zip(coefficients, m_tilde):
        product *= complete_sums(a, q, c, m)
    return float(product.sum().real) / float(q) ** len(coefficients)


def local_factor(
    coefficients: Sequence[int], m_tilde: Sequence[int], p: int, level: int
) -> float:
    """sum_{j=0}^{level} A(p^j)."""
    return sum(series_term(p**j, coefficients, m_tilde) for j in range(level + 1))


def _coefficients(d: Sequence[int], zeta: Sequence[int], m_tilde: Sequence[int]) -> List[int]:
    if not (len(d) == len(zeta) == len(m_tilde)):
        raise DomainError("d, zeta and m_tilde must have the same length")
    if any(di == 0 for di in d):
        raise DomainError(f"coefficients must be nonzero, got {tuple(d)}")
    if any(z < 1 for z in zeta):
        raise DomainError(f"zeta must be positive, got {tuple(zeta)}")
    if any(m < 2 for m in m_tilde):
        raise DomainError(f"exponents must be >= 2, got {tuple(m_tilde)}")
    return [di * zi for di, zi in zip(d, zeta)]


def _check_regime(m_tilde: Sequence[int]) -> bool:
    """Return True when outside the main-term regime; refuse divergent cases."""
    inverse_sum = sum(Fraction(1, m) for m in m_tilde)
    if len(m_tilde) < 2 or inverse_sum <= 1:
        raise DomainError(
            f"sum 1/m~_i = {inverse_sum} <= 1 (Gamma~ <= 0): the singular series does not "
            f"converge and has no meaning here"
        )
    if inverse_sum <= 3:
        logger.warning(
            f"sum 1/m~_i = {inverse_sum} <= 3: outside the main-term regime, "
            f"the truncated series may not have converged"
        )
        return True
    return False


def _tail(cut: float, gamma_tilde: float, per_prime: bool) -> float:
    if gamma_tilde <= 1:
        return math.inf
    tail = cut ** (1 - gamma_tilde) / (gamma_tilde - 1)
    return tail / math.log(cut) if per_prime and cut > 1 else tail


def singular_series(
    d: Sequence[int],
    zeta: Sequence[int],
    m_tilde: Sequence[int],
    truncation: Optional[SeriesTruncation] = None,
    threads: int = 1,
) -> SeriesResult:
    """Truncated singular series for sum d_i zeta_i u_i^m~_i = 0.

    Args:
        d: nonzero coefficients
        zeta: positive scalings
        m_tilde: exponents >= 2
        truncation: mode and cut-offs (defaults: qsum with q_max = 500)
        threads: worker threads for the euler product

    Returns:
        SeriesResult; the value does not depend on threads.

    Raises:
        DomainError: when sum 1/m~_i <= 1, where the series diverges.
    """
    truncation = truncation or SeriesTruncation()
    coefficients = _coefficients(d, zeta, m_tilde)
    outside = _check_regime(m_tilde)
    gamma_tilde = float(sum(Fraction(1, m) for m in m_tilde) - 1)

    if truncation.mode == "qsum":
        value = 0.0
        for q in range(1, truncation.q_max + 1):
            value += series_term(q, coefficients, m_tilde)
        tail = _tail(truncation.q_max, gamma_tilde, per_prime=False)
        logger.debug(f"Singular series (q <= {truncation.q_max}): {value:.8f}, tail ~ {tail:.3g}")
        return SeriesResult(
            value=value,
            mode="qsum",
            tail_estimate=tail,
            outside_theorem=outside,
            truncation=truncation,
            terms=truncation.q_max,
        )

    primes = list(primerange(2, truncation.prime_cap + 1))

    def factor(p: int) -> float:
        return local_factor(coefficients, m_tilde, p, truncation.level)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            factors = list(pool.map(factor, primes))
    else:
        factors = [factor(p) for p in primes]

    value = 1.0
    for f in factors:
        value *= f
    tail = _tail(truncation.prime_cap, gamma_tilde, per_prime=True)
    logger.debug(f"Singular series (p <= {truncation.prime_cap}): {value:.8f}")
    return SeriesResult(
        value=value,
        mode="euler",
        tail_estimate=tail,
        outside_theorem=outside,
        truncation=truncation,
        terms=len(primes),
        local_factors=dict(zip(primes, factors)),
    )


def _residue_distribution(c: int, m: int, q: int) -> np.ndarray:
    r = np.arange(q, dtype=np.int64)
    values = np.full(q, c % q, dtype=np.int64)
    for _ in range(m):
        values = (values * r) % q
    return np.bincount(values, minlength=q).astype(np.int64)


def _cyclic_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if np.count_nonzero(a) < np.count_nonzero(b):
        a, b = b, a
    out = np.zeros(len(a), dtype=a.dtype)
    for j in np.flatnonzero(b):
        out += b[j] * np.roll(a, j)
    return out


def _convolve_all(distributions: List[np.ndarray], q: int) -> np.ndarray:
    dtype = np.int64 if q ** len(distributions) < INT64_SAFE else object
    total = np.zeros(q, dtype=dtype)
    total[0] = 1
    for dist in distributions:
        total = _cyclic_convolve(total, dist.astype(dtype))
    return total


def local_density(
    d: Sequence[int],
    zeta: Sequence[int],
    m_tilde: Sequence[int],
    p: int,
    level: int,
    budget: Optional[Budget] = None,
) -> Fraction:
    """#{u mod p^l : sum d_i zeta_i u_i^m~_i = 0 mod p^l} / p^(l n), exactly.

    Residue distributions of each c_i u^m~_i are convolved cyclically in two
    halves, and the halves are paired value against negated value.
    """
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    if level < 0:
        raise DomainError(f"level must be >= 0, got {level}")
    coefficients = _coefficients(d, zeta, m_tilde)
    if level == 0:
        return Fraction(1)
    budget = get_budget(budget)
    q = p**level
    budget.check_operations(len(coefficients) * q * q, f"local density mod {p}^{level}")

    distributions = [_residue_distribution(c, m, q) for c, m in zip(coefficients, m_tilde)]
    half = (len(distributions) + 1) // 2
    left = _convolve_all(distributions[:half], q)
    right = _convolve_all(distributions[half:], q)
    right_negated = right[(-np.arange(q)) % q]
    count = sum(int(x) * int(y) for x, y in zip(left, right_negated) if x and y)
    n = len(coefficients) - 1
    return Fraction(count, p ** (level * n))
