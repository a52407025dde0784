"""Major and minor arcs.

Major arcs are the intervals |alpha - a/q| < B~^(delta - 1) around Farey
fractions a/q with q <= Q = B~^delta; the minor arcs are what is left of
[0, 1]. minor_arc_scan samples Weyl sums on the minor arcs and compares the
sampled sup against the Weyl-type bound B~^(1/m~ - delta sigma(m~)).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import List, Optional, Sequence, Tuple

from ..core.errors import DomainError
from ..core.orbifold import sigma
from ..counting.histogram import box_length
from .weyl import weyl_sum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MajorArc:
    a: int
    q: int
    left: float
    right: float


def farey_fractions(Q: float) -> List[Tuple[int, int]]:
    """(a, q) with 0 <= a <= q <= Q and gcd(a, q) = 1; q = 1 always present."""
    q_max = max(1, floor(Q))
    fractions = []
    for q in range(1, q_max + 1):
        for a in range(0, q + 1):
            if gcd(a, q) == 1:
                fractions.append((a, q))
    fractions.sort(key=lambda f: Fraction(f[0], f[1]))
    return fractions


def _merge(intervals: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    merged: List[Tuple[float, float]] = []
    for left, right in sorted(intervals):
        if merged and left <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], right))
        else:
            merged.append((left, right))
    return merged


@dataclass
class ArcDissection:
    """Major/minor arc split of [0, 1].

    Attributes:
        Q: B~^delta
        radius: B~^(delta - 1)
        arcs: one MajorArc per Farey fraction
        merged: union of the major arcs clipped to [0, 1], as disjoint intervals
        weyl_range_ok: delta < 1/((2n+5) m~_n (m~_n + 1)) when n and the
            largest exponent were supplied, else None
    """

    B_tilde: float
    delta: float
    Q: float
    radius: float
    arcs: List[MajorArc] = field(default_factory=list)
    merged: List[Tuple[float, float]] = field(default_factory=list)
    weyl_range_ok: Optional[bool] = None

    @property
    def major_measure(self) -> float:
        return sum(right - left for left, right in self.merged)

    @property
    def minor_measure(self) -> float:
        return 1.0 - self.major_measure

    def is_minor(self, alpha: float) -> bool:
        return not any(left < alpha < right for left, right in self.merged)

    def to_dict(self) -> dict:
        return {
            "B_tilde": self.B_tilde,
            "delta": self.delta,
            "Q": self.Q,
            "radius": self.radius,
            "arcs": len(self.arcs),
            "major_measure": self.major_measure,
            "minor_measure": self.minor_measure,
            "weyl_range_ok": self.weyl_range_ok,
        }


def minor_arcs(
    B_tilde: float, delta: float, n: Optional[int] = None, m_max: Optional[int] = None
) -> ArcDissection:
    """Build the dissection for height B~ and width exponent delta."""
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    if B_tilde <= 0:
        raise DomainError(f"B~ must be positive, got {B_tilde}")
    Q = float(B_tilde) ** delta
    radius = float(B_tilde) ** (delta - 1)
    arcs = []
    for a, q in farey_fractions(Q):
        centre = a / q
        arcs.append(MajorArc(a, q, centre - radius, centre + radius))
    merged = _merge([(max(0.0, arc.left), min(1.0, arc.right)) for arc in arcs])

    weyl_range_ok = None
    if n is not None and m_max is not None:
        weyl_range_ok = delta < 1 / ((2 * n + 5) * m_max * (m_max + 1))
        if not weyl_range_ok:
            logger.warning(
                f"delta={delta} is outside the Weyl-bound range for n={n}, m~_n={m_max}"
            )
    dissection = ArcDissection(
        B_tilde=float(B_tilde),
        delta=delta,
        Q=Q,
        radius=radius,
        arcs=arcs,
        merged=merged,
        weyl_range_ok=weyl_range_ok,
    )
    logger.debug(f"minor_arcs: Q={Q:.4g}, {len(arcs)} fractions, {len(merged)} merged arcs")
    return dissection


@dataclass
class MinorArcScanRow:
    """Sampled sup of |S_i| over the minor arcs for one index i.

    Attributes:
        reference: B~^(1/m~_i - delta sigma(m~_i))
        zeta_factor: zeta_i^(sigma(m~_i) - 1/m~_i)
        ratio: sup / (reference * zeta_factor)
    """

    index: int
    sup: float
    alpha_at_sup: float
    trivial_bound: int
    reference: float
    zeta_factor: float
    ratio: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def minor_arc_scan(
    d: Sequence[int],
    zeta: Sequence[int],
    m_tilde: Sequence[int],
    B_tilde: float,
    delta: float,
    samples: int = 2000,
) -> List[MinorArcScanRow]:
    """Sample |S_i(alpha)| on a midpoint grid of the minor arcs."""
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples}")
    dissection = minor_arcs(B_tilde, delta, n=len(d) - 1, m_max=max(m_tilde))
    grid = [(j + 0.5) / samples for j in range(samples)]
    minor = [alpha for alpha in grid if dissection.is_minor(alpha)]
    if not minor:
        logger.warning("No sample points fell on the minor arcs; increase samples")

    rows = []
    for i, (di, zi, mi) in enumerate(zip(d, zeta, m_tilde)):
        best, best_alpha = 0.0, float("nan")
        for alpha in minor:
            value = abs(weyl_sum(alpha, di, zi, mi, B_tilde))
            if value > best:
                best, best_alpha = value, alpha
        sig = float(sigma(mi))
        reference = float(B_tilde) ** (1 / mi - delta * sig)
        zeta_factor = zi ** (sig - 1 / mi)
        rows.append(
            MinorArcScanRow(
                index=i,
                sup=best,
                alpha_at_sup=best_alpha,
                trivial_bound=box_length(int(B_tilde), zi, mi),
                reference=reference,
                zeta_factor=zeta_factor,
                ratio=best / (reference * zeta_factor),
            )
        )
    return rows


def format_minor_arc_scan(rows: Sequence[MinorArcScanRow]) -> str:
    """Format a minor-arc scan as human-readable text."""
    lines = []
    lines.append("=" * 50)
    lines.append("MINOR ARC SCAN")
    lines.append("=" * 50)
    lines.append(f"{'i':>3} {'sup|S_i|':>12} {'alpha':>10} {'reference':>12} {'ratio':>10}")
    for row in rows:
        lines.append(
            f"{row.index:>3} {row.sup:>12.4f} {row.alpha_at_sup:>10.6f} "
            f"{row.reference:>12.4f} {row.ratio:>10.4f}"
        )
    lines.append("=" * 50)
    return "\n".join(lines)
