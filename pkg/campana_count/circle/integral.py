"""The singular integral

    J_d = integral over lambda in R of prod_i I_i(lambda),
    I_i(lambda) = integral over xi in [0, 1] of e(lambda d_i xi^m~_i),

i.e. the density at 0 of F(xi) = sum d_i xi_i^m~_i for xi uniform in [0, 1]^(n+1).

Two independent methods:

- slab: Monte Carlo estimates of Vol{|F| <= eps} / (2 eps) on a ladder of eps,
  extrapolated to eps = 0 by least squares on a + b sqrt(eps) + c eps (the
  density of F has a square-root cusp at 0 in low dimension). Samples are
  split into shards with independent counter-based (Philox) streams; the spread of
  per-shard intercepts gives the standard error.
- oscillatory: 2 * integral_0^Lambda Re prod_i I_i(lambda), Simpson's rule
  with step halving. For |lambda d_i| > 1 the inner integral uses the exact
  identity
      I = (1/m) [Gamma(1/m) w^(-1/m) e^(i pi/(2m))
                 - (i/w) e^(i w) integral_0^inf (1 + i s/w)^(1/m - 1) e^(-s) ds]
  with w = 2 pi |lambda d_i|, the last integral by Gauss-Laguerre; smaller
  arguments go through scipy's adaptive quadrature.

Definite d (all coefficients of one sign) give J = 0 exactly.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy import integrate
from scipy.special import gamma as gamma_fn

from ..core.errors import DomainError, NumericalDisagreement

logger = logging.getLogger(__name__)

INTEGRAL_METHODS = ("slab", "oscillatory")
LAGUERRE_BLOCK = 1 << 15


@dataclass(frozen=True)
class IntegralTruncation:
    """Parameters of both singular-integral methods.

    Attributes:
        method: "slab" or "oscillatory"
        samples: total Monte Carlo samples (slab)
        seed: root seed of the shard streams (slab)
        shards: independent streams; their spread gives the standard error
        eps_exponents: ladder eps = eps_scale * 2^-j (slab)
        lambda_cutoff: Lambda (oscillatory)
        initial_step: first Simpson step (oscillatory)
        rel_tol: stop halving once successive estimates agree to this
        max_refinements: cap on step halvings
    """

    method: str = "slab"
    samples: int = 10_000_000
    seed: int = 0
    shards: int = 16
    eps_exponents: Tuple[int, ...] = (4, 5, 6, 7, 8, 9, 10)
    eps_scale: float = 1.0
    lambda_cutoff: float = 1000.0
    initial_step: float = 0.25
    rel_tol: float = 1e-3
    max_refinements: int = 8
    chunk: int = 1 << 18
    laguerre_nodes: int = 64

    def __post_init__(self):
        if self.method not in INTEGRAL_METHODS:
            raise DomainError(
                f"integral method must be one of {INTEGRAL_METHODS}, got '{self.method}'"
            )
        if self.samples < self.shards or self.shards < 2:
            raise DomainError(
                f"need shards >= 2 and samples >= shards, got {self.samples}/{self.shards}"
            )
        if len(self.eps_exponents) < 3 or self.eps_scale <= 0:
            raise DomainError("the eps ladder needs at least three positive rungs")
        if self.lambda_cutoff <= 0 or self.initial_step <= 0 or self.rel_tol <= 0:
            raise DomainError("lambda_cutoff, initial_step and rel_tol must be positive")

    @property
    def eps_ladder(self) -> np.ndarray:
        return self.eps_scale * np.power(2.0, -np.asarray(self.eps_exponents, dtype=float))

    def to_dict(self) -> dict:
        data = asdict(self)
        data["eps_exponents"] = list(self.eps_exponents)
        return data


@dataclass
class IntegralResult:
    """Singular-integral estimate with its error bar."""

    value: float
    standard_error: float
    method: str
    truncation: IntegralTruncation
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "standard_error": self.standard_error,
            "method": self.method,
            "truncation": self.truncation.to_dict(),
            "details": self.details,
        }


def _check_inputs(d: Sequence[int], m_tilde: Sequence[int]) -> None:
    if len(d) != len(m_tilde) or not d:
        raise DomainError("d and m_tilde must be non-empty and of equal length")
    if any(di == 0 for di in d):
        raise DomainError(f"coefficients must be nonzero, got {tuple(d)}")
    if any(m < 1 for m in m_tilde):
        raise DomainError(f"exponents must be positive, got {tuple(m_tilde)}")


def is_definite(d: Sequence[int]) -> bool:
    return all(di > 0 for di in d) or all(di < 0 for di in d)


def _slab_fit(eps: np.ndarray, ratios: np.ndarray) -> float:
    design = np.column_stack([np.ones_like(eps), np.sqrt(eps), eps])
    coef, *_ = np.linalg.lstsq(design, ratios, rcond=None)
    return float(coef[0])


def _shard_counts(
    d: np.ndarray,
    m: np.ndarray,
    eps: np.ndarray,
    samples: int,
    seed: np.random.SeedSequence,
    chunk: int,
) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed))
    counts = np.zeros(len(eps), dtype=np.int64)
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        xi = rng.random((size, len(d)))
        values = np.sort(np.abs((xi**m) @ d))
        counts += np.searchsorted(values, eps, side="right")
        remaining -= size
    return counts


def _slab(d, m_tilde, truncation: IntegralTruncation, threads: int) -> IntegralResult:
    d_arr = np.asarray(d, dtype=float)
    m_arr = np.asarray(m_tilde, dtype=float)
    eps = truncation.eps_ladder
    children = np.random.SeedSequence(truncation.seed).spawn(truncation.shards)
    sizes = [truncation.samples // truncation.shards] * truncation.shards
    for j in range(truncation.samples % truncation.shards):
        sizes[j] += 1

    def run(j: int) -> np.ndarray:
        return _shard_counts(d_arr, m_arr, eps, sizes[j], children[j], truncation.chunk)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            shard_counts = list(pool.map(run, range(truncation.shards)))
    else:
        shard_counts = [run(j) for j in range(truncation.shards)]

    per_shard = [_slab_fit(eps, c / (n * 2 * eps)) for c, n in zip(shard_counts, sizes)]
    pooled_ratios = np.sum(shard_counts, axis=0) / (truncation.samples * 2 * eps)
    value = max(0.0, _slab_fit(eps, pooled_ratios))
    standard_error = float(np.std(per_shard, ddof=1) / math.sqrt(truncation.shards))
    logger.debug(f"Slab estimate {value:.6f} +/- {standard_error:.2g}")
    return IntegralResult(
        value=value,
        standard_error=standard_error,
        method="slab",
        truncation=truncation,
        details={
            "eps": eps.tolist(),
            "slab_ratios": pooled_ratios.tolist(),
            "shard_intercepts": per_shard,
        },
    )


@lru_cache(maxsize=65536)
def _inner_small(x: float, m: int) -> complex:
    phase = 2 * math.pi * x
    re = integrate.quad(lambda t: math.cos(phase * t**m), 0.0, 1.0, limit=200)[0]
    im = integrate.quad(lambda t: math.sin(phase * t**m), 0.0, 1.0, limit=200)[0]
    return complex(re, im)


def inner_integral(x: np.ndarray, m: int, nodes: int = 64) -> np.ndarray:
    """integral_0^1 e(x xi^m) d xi for every entry of x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(x.shape, dtype=complex)
    small = np.abs(x) <= 1.0
    for idx in np.flatnonzero(small):
        out.flat[idx] = _inner_small(float(x.flat[idx]), m)

    a = 1.0 / m
    s, weights = laggauss(nodes)
    large = np.flatnonzero(~small)
    for start in range(0, len(large), LAGUERRE_BLOCK):
        idx = large[start : start + LAGUERRE_BLOCK]
        w = 2 * math.pi * np.abs(x.flat[idx])
        laguerre = ((1 + 1j * s[None, :] / w[:, None]) ** (a - 1)) @ weights
        head = gamma_fn(a) * w ** (-a) * np.exp(1j * math.pi * a / 2)
        values = (head - (1j / w) * np.exp(1j * w) * laguerre) / m
        out.flat[idx] = np.where(x.flat[idx] < 0, np.conj(values), values)
    return out


def _integrand(lam: np.ndarray, d: Sequence[int], m_tilde: Sequence[int], nodes: int) -> np.ndarray:
    groups: Dict[Tuple[int, int], int] = {}
    for di, mi in zip(d, m_tilde):
        groups[(di, mi)] = groups.get((di, mi), 0) + 1
    product = np.ones(lam.shape, dtype=complex)
    for (di, mi), power in groups.items():
        product *= inner_integral(lam * di, mi, nodes) ** power
    return product.real


def _simpson(d, m_tilde, cutoff: float, step: float, nodes: int) -> float:
    intervals = max(2, int(math.ceil(cutoff / step)))
    if intervals % 2:
        intervals += 1
    lam = np.linspace(0.0, cutoff, intervals + 1)
    values = _integrand(lam, d, m_tilde, nodes)
    return 2.0 * float(integrate.simpson(values, x=lam))


def _tail_bound(d, m_tilde, cutoff: float) -> float:
    exponents = [1.0 / mi for mi in m_tilde]
    total = sum(exponents)
    if total <= 1:
        return math.inf
    envelope = 1.0
    for di, a in zip(d, exponents):
        envelope *= gamma_fn(1 + a) * (2 * math.pi * abs(di) * cutoff) ** (-a)
    return 2.0 * envelope * cutoff / (total - 1)


def _oscillatory(d, m_tilde, truncation: IntegralTruncation) -> IntegralResult:
    cutoff = truncation.lambda_cutoff
    step = truncation.initial_step
    previous = _simpson(d, m_tilde, cutoff, step, truncation.laguerre_nodes)
    difference = math.inf
    refinements = 0
    current = previous
    for refinements in range(1, truncation.max_refinements + 1):
        step /= 2
        current = _simpson(d, m_tilde, cutoff, step, truncation.laguerre_nodes)
        difference = abs(current - previous)
        if difference <= truncation.rel_tol * max(abs(current), 1e-12):
            break
        previous = current
    else:
        logger.warning(
            f"Oscillatory integral did not settle after {truncation.max_refinements} "
            f"refinements (last change {difference:.3g})"
        )
    tail = _tail_bound(d, m_tilde, cutoff)
    logger.debug(f"Oscillatory estimate {current:.6f}, step {step}, tail <= {tail:.3g}")
    return IntegralResult(
        value=current,
        standard_error=difference + tail,
        method="oscillatory",
        truncation=truncation,
        details={"final_step": step, "refinements": refinements, "tail_bound": tail},
    )


def singular_integral(
    d: Sequence[int],
    m_tilde: Sequence[int],
    truncation: Optional[IntegralTruncation] = None,
    threads: int = 1,
) -> IntegralResult:
    """Estimate J_d for exponents m~.

    Args:
        d: nonzero coefficients
        m_tilde: exponents
        truncation: method and its parameters (defaults: slab, 10^7 samples)
        threads: worker threads for slab shards; results do not depend on it

    Returns:
        IntegralResult with value and standard error (slab) or error bound
        (oscillatory).
    """
    truncation = truncation or IntegralTruncation()
    _check_inputs(d, m_tilde)
    if is_definite(d):
        logger.debug(f"d={tuple(d)} is definite; singular integral is 0")
        return IntegralResult(
            value=0.0,
            standard_error=0.0,
            method=truncation.method,
            truncation=truncation,
            details={"definite": True},
        )
    if truncation.method == "slab":
        return _slab(d, m_tilde, truncation, threads)
    return _oscillatory(d, m_tilde, truncation)


def cross_check_integral(
    d: Sequence[int],
    m_tilde: Sequence[int],
    slab: Optional[IntegralTruncation] = None,
    oscillatory: Optional[IntegralTruncation] = None,
    sigmas: float = 3.0,
    threads: int = 1,
) -> Tuple[IntegralResult, IntegralResult]:
    """Evaluate both methods and require agreement within combined error bars.

    Raises:
        NumericalDisagreement: |slab - oscillatory| > sigmas * combined error.
    """
    slab = slab or IntegralTruncation(method="slab")
    oscillatory = oscillatory or IntegralTruncation(method="oscillatory")
    first = singular_integral(d, m_tilde, slab, threads)
    second = singular_integral(d, m_tilde, oscillatory, threads)
    combined = math.hypot(first.standard_error, second.standard_error)
    gap = abs(first.value - second.value)
    if gap > sigmas * combined + 1e-12:
        raise NumericalDisagreement(
            f"slab {first.value:.6f} and oscillatory {second.value:.6f} differ by {gap:.3g} "
            f"(> {sigmas} x {combined:.3g})"
        )
    return first, second
