"""Campana orbifolds over diagonal hypersurfaces.

The hypersurface X: c_0 x_0^k + ... + c_n x_n^k = 0 in P^n carries the
boundary divisor D = sum (1 - 1/m_i) {x_i = 0}. A rational point with
primitive integer coordinates x is a Campana point of (X, D) when each x_i
is nonzero and m_i-full (away from a finite set S of primes).

This module holds the input types, the point predicate and the
admissibility report used to decide whether a configuration lies in the
range where the asymptotic main term is expected to hold.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, List, Sequence, Tuple

from sympy import factorint, multiplicity

from .arith import is_m_full
from .errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagonalForm:
    """Coefficients and degree of c_0 x_0^k + ... + c_n x_n^k."""

    k: int
    c: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(ci) for ci in self.c))
        if self.k < 1:
            raise DomainError(f"degree k must be >= 1, got {self.k}")
        if len(self.c) < 2:
            raise DomainError(f"a diagonal form needs at least two coefficients, got {self.c}")
        if any(ci == 0 for ci in self.c):
            raise DomainError(f"coefficients must be nonzero, got {self.c}")
        if reduce(gcd, self.c) != 1:
            raise DomainError(f"coefficients must have gcd 1, got {self.c}")

    @property
    def n(self) -> int:
        return len(self.c) - 1

    def evaluate(self, x: Sequence[int]) -> int:
        return sum(ci * xi**self.k for ci, xi in zip(self.c, x))


@dataclass(frozen=True)
class OrbifoldWeights:
    """Multiplicities m_i >= 2 of the boundary components."""

    m: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(mi) for mi in self.m))
        if any(mi < 2 for mi in self.m):
            raise DomainError(f"orbifold weights must be >= 2, got {self.m}")

    @property
    def epsilon(self) -> Tuple[Fraction, ...]:
        """Boundary coefficients 1 - 1/m_i."""
        return tuple(1 - Fraction(1, mi) for mi in self.m)

    @property
    def Lambda(self) -> int:
        """Number of v-slots, sum (m_i - 1)."""
        return sum(mi - 1 for mi in self.m)


@dataclass(frozen=True)
class CampanaOrbifold:
    """Diagonal hypersurface together with its orbifold weights."""

    form: DiagonalForm
    weights: OrbifoldWeights

    def __post_init__(self):
        if len(self.form.c) != len(self.weights.m):
            raise DomainError(
                f"{len(self.form.c)} coefficients but {len(self.weights.m)} weights"
            )

    @classmethod
    def from_lists(cls, k: int, c: Sequence[int], m: Sequence[int]) -> "CampanaOrbifold":
        return cls(DiagonalForm(k, tuple(c)), OrbifoldWeights(tuple(m)))

    @property
    def k(self) -> int:
        return self.form.k

    @property
    def c(self) -> Tuple[int, ...]:
        return self.form.c

    @property
    def m(self) -> Tuple[int, ...]:
        return self.weights.m

    @property
    def n(self) -> int:
        return self.form.n

    def to_dict(self) -> dict:
        return {"k": self.k, "c": list(self.c), "m": list(self.m)}


@dataclass(frozen=True)
class ProjPoint:
    """Primitive integer representative of a projective point."""

    x: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(xi) for xi in self.x))
        if not self.x:
            raise DomainError("projective point needs at least one coordinate")
        if any(xi == 0 for xi in self.x):
            raise DomainError(f"point lies on the boundary divisor, got {self.x}")
        if reduce(gcd, self.x) != 1:
            raise DomainError(f"coordinates must be primitive (gcd 1), got {self.x}")


def bad_primes(form: DiagonalForm) -> Tuple[int, ...]:
    """Primes dividing k * prod c_i."""
    product = form.k
    for ci in form.c:
        product *= abs(ci)
    return tuple(sorted(factorint(product)))


def intersection_multiplicity(P: ProjPoint, i: int, p: int) -> int:
    """v_p(x_i) for a point off the boundary."""
    if not 0 <= i < len(P.x):
        raise DomainError(f"index {i} out of range for a point with {len(P.x)} coordinates")
    return int(multiplicity(p, abs(P.x[i])))


def is_campana_point(P: ProjPoint, O: CampanaOrbifold, S: Iterable[int] = ()) -> bool:
    """True iff P lies on X and each x_i is m_i-full outside S."""
    if len(P.x) != len(O.c):
        raise DomainError(f"point has {len(P.x)} coordinates, orbifold expects {len(O.c)}")
    if O.form.evaluate(P.x) != 0:
        return False
    exempt = tuple(S)
    return all(is_m_full(xi, mi, exempt) for xi, mi in zip(P.x, O.m))


def height(P: ProjPoint) -> int:
    """Naive Weil height max |x_i| of a primitive representative."""
    return max(abs(xi) for xi in P.x)


def fujita_exponent(O: CampanaOrbifold) -> Fraction:
    """Exponent k*Gamma = sum 1/m_i - k of B in the point count."""
    return sum((Fraction(1, mi) for mi in O.m), Fraction(0)) - O.k


def s0(m: int) -> int:
    """Variables needed for the asymptotic formula for sums of m-th powers."""
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    return min(2 ** (m - 1), m * (m - 1) // 2 + isqrt(2 * m + 2))


def sigma(m: int) -> Fraction:
    """Minor-arc saving exponent 1 / (2 s0(m))."""
    return Fraction(1, 2 * s0(m))


@dataclass
class AdmissibilityReport:
    """Hypotheses of the main counting theorem for one orbifold.

    Attributes:
        k, n: degree and projective dimension
        weights_sorted: m_i in ascending order
        input_sorted: whether the caller supplied the weights already sorted
        theta: sum 1/(2 s0(k m_i)) - 1, must be positive
        gamma: sum 1/(k m_i) - 1
        k_gamma: k * gamma = sum 1/m_i - k, the expected exponent of B
        log_fano: sum 1/(k m_i) > 1, so that gamma > 0
        method_limit: sum 1/(k m_i) > 2, needed for a convergent singular series
        main_term_condition: sum 1/(k m_i) > 3
        index_inequalities: per-index check 1/(2 s0(k m_i)) <= 1/(k m_i) - 1/(k (m_i + 1)),
            implied by the main hypotheses when k >= 2
        delta_bound: admissible width 1/((2n+5) k m_n (k m_n + 1)) of major arcs
        notes: human-readable reasons for any failed hypothesis
    """

    k: int
    n: int
    weights_sorted: Tuple[int, ...]
    input_sorted: bool
    theta: Fraction
    gamma: Fraction
    k_gamma: Fraction
    k_at_least_2: bool
    sorted_ok: bool
    theta_positive: bool
    log_fano: bool
    method_limit: bool
    main_term_condition: bool
    index_inequalities: Tuple[bool, ...]
    delta_bound: Fraction
    notes: List[str] = field(default_factory=list)

    @property
    def in_theorem_range(self) -> bool:
        return self.k_at_least_2 and self.sorted_ok and self.theta_positive

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "weights_sorted": list(self.weights_sorted),
            "input_sorted": self.input_sorted,
            "theta": str(self.theta),
            "gamma": str(self.gamma),
            "k_gamma": str(self.k_gamma),
            "k_at_least_2": self.k_at_least_2,
            "sorted_ok": self.sorted_ok,
            "theta_positive": self.theta_positive,
            "log_fano": self.log_fano,
            "method_limit": self.method_limit,
            "main_term_condition": self.main_term_condition,
            "index_inequalities": list(self.index_inequalities),
            "delta_bound": str(self.delta_bound),
            "in_theorem_range": self.in_theorem_range,
            "notes": list(self.notes),
        }


def _index_inequalities(k: int, weights: Tuple[int, ...]) -> Tuple[bool, ...]:
    # 1/(2 s0(k m_i)) <= 1/(k m_i) - 1/(k (m_i + 1)) for each i
    return tuple(
        sigma(k * mi) <= Fraction(1, k * mi) - Fraction(1, k * (mi + 1)) for mi in weights
    )


def check_admissible(O: CampanaOrbifold) -> AdmissibilityReport:
    """Evaluate the admissibility conditions for O (weights sorted internally)."""
    weights = tuple(sorted(O.m))
    input_sorted = tuple(O.m) == weights
    k = O.k
    n = O.n

    theta = sum((sigma(k * mi) for mi in weights), Fraction(0)) - 1
    inverse_sum = sum((Fraction(1, k * mi) for mi in weights), Fraction(0))
    gamma = inverse_sum - 1
    m_max = k * weights[-1]
    delta_bound = Fraction(1, (2 * n + 5) * m_max * (m_max + 1))

    notes: List[str] = []
    if k < 2:
        notes.append(f"k={k} < 2: outside the theorem's range")
    if not input_sorted:
        notes.append("weights were reordered ascending before checking")
    if theta <= 0:
        notes.append(f"theta={theta} <= 0: too few variables for the minor-arc bound")
    if inverse_sum <= 3:
        notes.append(f"sum 1/(k m_i)={inverse_sum} <= 3: main term not guaranteed")

    report = AdmissibilityReport(
        k=k,
        n=n,
        weights_sorted=weights,
        input_sorted=input_sorted,
        theta=theta,
        gamma=gamma,
        k_gamma=fujita_exponent(O),
        k_at_least_2=k >= 2,
        sorted_ok=all(2 <= a <= b for a, b in zip(weights, weights[1:])) and weights[0] >= 2,
        theta_positive=theta > 0,
        log_fano=inverse_sum > 1,
        method_limit=inverse_sum > 2,
        main_term_condition=inverse_sum > 3,
        index_inequalities=_index_inequalities(k, weights),
        delta_bound=delta_bound,
        notes=notes,
    )
    logger.debug(f"Admissibility for k={k}, m={weights}: theta={theta}, gamma={gamma}")
    return report


def format_admissibility_report(report: AdmissibilityReport) -> str:
    """Format an admissibility report as human-readable text."""
    lines = []
    lines.append("=" * 50)
    lines.append("ADMISSIBILITY REPORT")
    lines.append("=" * 50)
    lines.append(f"Degree k:           {report.k}")
    lines.append(f"Dimension n:        {report.n}")
    lines.append(f"Weights (sorted):   {list(report.weights_sorted)}")
    lines.append(f"Theta:              {report.theta} ({float(report.theta):.6f})")
    lines.append(f"Gamma:              {report.gamma}")
    lines.append(f"Expected exponent:  {report.k_gamma}")
    lines.append(f"Delta bound:        {report.delta_bound}")
    lines.append("")
    lines.append("Conditions:")
    for label, ok in [
        ("k >= 2", report.k_at_least_2),
        ("2 <= m_0 <= ... <= m_n", report.sorted_ok),
        ("theta > 0", report.theta_positive),
        ("sum 1/(k m_i) > 1", report.log_fano),
        ("sum 1/(k m_i) > 2", report.method_limit),
        ("sum 1/(k m_i) > 3", report.main_term_condition),
    ]:
        lines.append(f"  [{'PASS' if ok else 'FAIL'}] {label}")
    failing = [i for i, ok in enumerate(report.index_inequalities) if not ok]
    lines.append(f"  Index inequalities failing at: {failing if failing else 'none'}")
    if report.notes:
        lines.append("")
        lines.append("Notes:")
        for note in report.notes:
            lines.append(f"  - {note}")
    lines.append("")
    verdict = "PASS" if report.in_theorem_range else "FAIL"
    lines.append(f"Verdict: {verdict}")
    lines.append("=" * 50)
    return "\n".join(lines)
