"""Exponential sums.

- weyl_sum: S_i(alpha) = sum_{1 <= u <= B~_i} e(alpha d_i zeta_i u^m~_i)
- complete_sum: sum_{r=1}^q e(a c r^m / q)
- circle_integral_count: the integral over [0, 1) of prod_i S_i(alpha),
  evaluated exactly on a fine grid

Phases are reduced modulo 1 on exact integers before any trigonometric
evaluation, so large u^m never lose precision in floating point.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from ..core.errors import DomainError
from ..counting.histogram import box_length, problem_terms

logger = logging.getLogger(__name__)

Real = Union[int, float, Fraction]


def e(x: Real) -> complex:
    """exp(2 pi i x), with x reduced mod 1 exactly when rational."""
    frac = Fraction(x) % 1
    return complex(np.exp(2j * np.pi * float(frac)))


def weyl_sum(alpha: Real, d: int, zeta: int, m: int, B_tilde: Real) -> complex:
    """S(alpha) over 1 <= u <= (B~/zeta)^(1/m).

    alpha is converted to an exact Fraction (floats are binary rationals), so
    alpha * d * zeta * u^m is reduced mod 1 without rounding.
    """
    length = box_length(int(B_tilde), zeta, m)
    if length == 0:
        return 0j
    a = Fraction(alpha)
    num, den = a.numerator, a.denominator
    coeff = d * zeta * num
    residues = [(coeff * u**m) % den for u in range(1, length + 1)]
    phases = np.asarray([r / den for r in residues], dtype=float)
    return complex(np.exp(2j * np.pi * phases).sum())


@lru_cache(maxsize=64)
def power_residue_spectrum(q: int, m: int) -> np.ndarray:
    """S(b) = sum_{r mod q} e(b r^m / q) for every b mod q.

    With h[j] = #{r mod q : r^m = j} this is q * ifft(h)[b].
    """
    r = np.arange(q, dtype=np.int64)
    powers = np.ones(q, dtype=np.int64) % q
    for _ in range(m):
        powers = (powers * r) % q
    histogram = np.bincount(powers, minlength=q).astype(float)
    spectrum = q * np.fft.ifft(histogram)
    spectrum.setflags(write=False)
    return spectrum


def complete_sum(a: int, q: int, coeff: int, m: int) -> complex:
    """sum_{r=1}^q e(a coeff r^m / q)."""
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    return complex(power_residue_spectrum(q, m)[(a * coeff) % q])


def complete_sums(a: np.ndarray, q: int, coeff: int, m: int) -> np.ndarray:
    """Vectorised complete_sum over an array of numerators a."""
    return power_residue_spectrum(q, m)[(np.asarray(a, dtype=np.int64) * (coeff % q)) % q]


def units_mod(q: int) -> np.ndarray:
    """Residues 1 <= a <= q with gcd(a, q) = 1 (a = 1 when q = 1)."""
    if q == 1:
        return np.ones(1, dtype=np.int64)
    a = np.arange(1, q, dtype=np.int64)
    return a[np.gcd(a, q) == 1]


def circle_integral_count(
    d: Sequence[int], zeta: Sequence[int], m_tilde: Sequence[int], B_tilde: int
) -> int:
    """M_{d,zeta}(B~) as the integral over [0, 1) of prod_i S_i(alpha).

    The integrand is a trigonometric polynomial with frequencies bounded by
    sum |d_i| zeta_i B~_i^m~_i <= sum |d_i| B~, so averaging it over N larger
    than twice that bound is exact. Each S_i on the grid j/N comes from one FFT
    of the residue histogram of d_i zeta_i u^m~_i mod N.
    """
    terms = problem_terms(d, zeta, m_tilde, B_tilde)
    if any(len(t) == 0 for t in terms):
        return 0
    N = 2 * sum(max(abs(v) for v in t) for t in terms) + 1
    integrand = np.ones(N, dtype=complex)
    for t in terms:
        histogram = np.bincount(np.asarray(t, dtype=np.int64) % N, minlength=N)
        integrand *= N * np.fft.ifft(histogram)
    value = integrand.mean()
    logger.debug(f"circle_integral_count on {N} grid points: {value}")
    return int(round(value.real))
