"""Main-term predictions and their comparison with exact counts.

- predict_M: S_{d,zeta} J_d prod zeta_i^(-1/m~_i) B~^Gamma~ for the census
  M_{d,zeta}(B~) of counting.histogram
- leading_constant: C_d = J_d sum_{(s,t)} varpi(s,t) sum_{v~} S_{d,gamma}
  prod gamma_i^(-1/(k m_i)), truncated at a weight cap R
- leading_constant_full: the constant of the Campana point count, 2^n C_c for
  even k and half the sum of C_{eps c} over sign patterns for odd k
- compare: exact counts against the prediction over a grid of heights, with
  the log-log slope fitted by least squares
"""

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.budget import Budget
from ..core.errors import BudgetExceeded, DomainError
from ..core.orbifold import CampanaOrbifold, check_admissible, fujita_exponent, s0
from ..counting.engine import count_campana, sign_patterns
from ..counting.histogram import count_M
from ..sieve.lattice import coordinate_weight, enumerate_T, enumerate_V, gamma_of
from ..sieve.varpi import varpi
from .integral import IntegralResult, IntegralTruncation, singular_integral
from .series import SeriesTruncation, singular_series

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Truncation:
    """Every truncation parameter of a prediction.

    Attributes:
        series: singular-series cut-offs
        integral: singular-integral method and parameters
        r_cap: weight cap R for the (s, t, v~) sums of the leading constant
    """

    series: SeriesTruncation = field(default_factory=SeriesTruncation)
    integral: IntegralTruncation = field(default_factory=IntegralTruncation)
    r_cap: int = 16

    def to_dict(self) -> dict:
        return {
            "series": self.series.to_dict(),
            "integral": self.integral.to_dict(),
            "r_cap": self.r_cap,
        }


@dataclass(frozen=True)
class DiagonalProblem:
    """sum d_i zeta_i u_i^m~_i = 0 with zeta_i u_i^m~_i <= B~."""

    d: Tuple[int, ...]
    zeta: Tuple[int, ...]
    m_tilde: Tuple[int, ...]

    def __post_init__(self):
        if not (len(self.d) == len(self.zeta) == len(self.m_tilde)):
            raise DomainError("d, zeta and m_tilde must have the same length")

    @property
    def gamma_tilde(self) -> Fraction:
        return sum((Fraction(1, m) for m in self.m_tilde), Fraction(0)) - 1

    @property
    def theta_tilde(self) -> Fraction:
        return sum((Fraction(1, 2 * s0(m)) for m in self.m_tilde), Fraction(0)) - 1

    @property
    def outside_theorem(self) -> bool:
        return self.theta_tilde <= 0 or self.gamma_tilde + 1 <= 3

    def to_dict(self) -> dict:
        return {"d": list(self.d), "zeta": list(self.zeta), "m_tilde": list(self.m_tilde)}


@dataclass
class Prediction:
    """Main term of M_{d,zeta}(B~) with every factor kept.

    main_term == series_value * integral_value * zeta_factor * B_tilde ** gamma_tilde
    """

    problem: DiagonalProblem
    B_tilde: float
    gamma_tilde: Fraction
    theta_tilde: Fraction
    series_value: float
    series_tail: float
    integral_value: float
    integral_standard_error: float
    zeta_factor: float
    main_term: float
    uncertainty: float
    outside_theorem: bool
    truncation: Truncation

    def to_dict(self) -> dict:
        return {
            **self.problem.to_dict(),
            "B_tilde": self.B_tilde,
            "gamma_tilde": str(self.gamma_tilde),
            "theta_tilde": str(self.theta_tilde),
            "series_value": self.series_value,
            "series_tail": self.series_tail,
            "integral_value": self.integral_value,
            "integral_standard_error": self.integral_standard_error,
            "zeta_factor": self.zeta_factor,
            "main_term": self.main_term,
            "uncertainty": self.uncertainty,
            "outside_theorem": self.outside_theorem,
            "truncation": self.truncation.to_dict(),
        }


def _main_term(series_value, integral_value, zeta_factor, B_tilde, gamma_tilde) -> float:
    return series_value * integral_value * zeta_factor * float(B_tilde) ** float(gamma_tilde)


def _relative_uncertainty(series_value, series_tail, integral_value, integral_se) -> float:
    rel = 0.0
    if series_value:
        rel += abs(series_tail / series_value) if math.isfinite(series_tail) else math.inf
    if integral_value:
        rel += abs(integral_se / integral_value)
    return rel


def predict_M(
    d: Sequence[int],
    zeta: Sequence[int],
    m_tilde: Sequence[int],
    B_tilde: float,
    truncation: Optional[Truncation] = None,
    threads: int = 1,
) -> Prediction:
    """Main-term prediction for M_{d,zeta}(B~).

    Inputs with Theta~ <= 0 or sum 1/m~_i <= 3 are evaluated anyway and
    tagged outside_theorem.
    """
    truncation = truncation or Truncation()
    problem = DiagonalProblem(tuple(d), tuple(zeta), tuple(m_tilde))
    if B_tilde <= 0:
        raise DomainError(f"B~ must be positive, got {B_tilde}")
    if problem.outside_theorem:
        logger.warning(
            f"Theta~={problem.theta_tilde}, Gamma~={problem.gamma_tilde}: "
            f"outside the main-term regime, prediction is indicative only"
        )

    series = singular_series(problem.d, problem.zeta, problem.m_tilde, truncation.series, threads)
    integral = singular_integral(problem.d, problem.m_tilde, truncation.integral, threads)
    zeta_factor = 1.0
    for zi, mi in zip(problem.zeta, problem.m_tilde):
        zeta_factor *= zi ** (-1.0 / mi)

    main_term = _main_term(
        series.value, integral.value, zeta_factor, B_tilde, problem.gamma_tilde
    )
    rel = _relative_uncertainty(
        series.value, series.tail_estimate, integral.value, integral.standard_error
    )
    return Prediction(
        problem=problem,
        B_tilde=float(B_tilde),
        gamma_tilde=problem.gamma_tilde,
        theta_tilde=problem.theta_tilde,
        series_value=series.value,
        series_tail=series.tail_estimate,
        integral_value=integral.value,
        integral_standard_error=integral.standard_error,
        zeta_factor=zeta_factor,
        main_term=main_term,
        uncertainty=abs(main_term) * rel,
        outside_theorem=problem.outside_theorem or series.outside_theorem,
        truncation=truncation,
    )


def rescale_prediction(prediction: Prediction, B_tilde: float) -> Prediction:
    """Same prediction at another height (series and integral reused)."""
    main_term = _main_term(
        prediction.series_value,
        prediction.integral_value,
        prediction.zeta_factor,
        B_tilde,
        prediction.gamma_tilde,
    )
    rel = prediction.uncertainty / abs(prediction.main_term) if prediction.main_term else 0.0
    return replace(
        prediction, B_tilde=float(B_tilde), main_term=main_term, uncertainty=abs(main_term) * rel
    )


@dataclass
class ConstantEstimate:
    """Truncated leading constant with its convergence trail.

    Attributes:
        partial_sums: (cap R, constant truncated at R) for increasing R
        deltas: differences between successive partial sums
        terms: (s, t, v~) triples with nonzero varpi that were summed
    """

    value: float
    uncertainty: float
    integral_value: float
    integral_standard_error: float
    partial_sums: List[Tuple[int, float]] = field(default_factory=list)
    terms: int = 0
    outside_theorem: bool = False

    @property
    def deltas(self) -> List[float]:
        values = [v for _, v in self.partial_sums]
        return [b - a for a, b in zip(values, values[1:])]

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "uncertainty": self.uncertainty,
            "integral_value": self.integral_value,
            "integral_standard_error": self.integral_standard_error,
            "partial_sums": [[cap, value] for cap, value in self.partial_sums],
            "deltas": self.deltas,
            "terms": self.terms,
            "outside_theorem": self.outside_theorem,
        }


def cap_ladder(r_cap: int) -> List[int]:
    """1, 2, 4, ... up to r_cap, always ending at r_cap."""
    if r_cap < 1:
        raise DomainError(f"r_cap must be >= 1, got {r_cap}")
    caps = []
    cap = 1
    while cap < r_cap:
        caps.append(cap)
        cap *= 2
    caps.append(r_cap)
    return caps


def leading_constant(
    d: Sequence[int],
    O: CampanaOrbifold,
    truncation: Optional[Truncation] = None,
    threads: int = 1,
    integral: Optional[IntegralResult] = None,
) -> ConstantEstimate:
    """C_d for the positive primitive count N*_d, truncated at truncation.r_cap.

    Args:
        d: coefficients (a sign pattern of O.c)
        O: the orbifold supplying k and m
        truncation: cut-offs
        threads: forwarded to the series and integral
        integral: precomputed J_d to reuse

    Returns:
        ConstantEstimate with partial sums at caps 1, 2, 4, ..., r_cap.
    """
    truncation = truncation or Truncation()
    d = tuple(d)
    k, m = O.k, O.m
    m_tilde = tuple(k * mi for mi in m)
    report = check_admissible(O)
    if not report.in_theorem_range:
        logger.warning(f"Orbifold {O.to_dict()} fails admissibility: {report.notes}")

    if integral is None:
        integral = singular_integral(d, m_tilde, truncation.integral, threads)
    caps = cap_ladder(truncation.r_cap)
    if integral.value == 0.0:
        return ConstantEstimate(
            value=0.0,
            uncertainty=0.0,
            integral_value=0.0,
            integral_standard_error=integral.standard_error,
            partial_sums=[(cap, 0.0) for cap in caps],
            outside_theorem=not report.in_theorem_range,
        )

    series_cache: Dict[Tuple, float] = {}

    def series_for(gamma: Tuple[int, ...]) -> float:
        # invariant under permuting indices with equal (d_i, m~_i)
        key = tuple(sorted(zip(d, m_tilde, gamma)))
        if key not in series_cache:
            dd, mm, gg = zip(*key)
            series_cache[key] = singular_series(dd, gg, mm, truncation.series, threads).value
        return series_cache[key]

    contributions: List[Tuple[int, float]] = []
    for pair in enumerate_T(truncation.r_cap, m):
        weight = varpi(pair, m)
        if weight == 0:
            continue
        for v_tilde in enumerate_V(truncation.r_cap, pair, m, k):
            widths = [
                coordinate_weight(pair.s[i], [t * v for t, v in zip(pair.t[i], v_tilde[i])], mi)
                for i, mi in enumerate(m)
            ]
            gamma = gamma_of(pair, v_tilde, k, m).gamma
            # gamma_i^(-1/(k m_i)) == widths_i^(-1/m_i) without the k-th power
            scale = 1.0
            for width, mi in zip(widths, m):
                scale *= width ** (-1.0 / mi)
            contributions.append((max(widths), weight * series_for(gamma) * scale))

    contributions.sort(key=lambda item: item[0])
    partial_sums = []
    running = 0.0
    position = 0
    for cap in caps:
        while position < len(contributions) and contributions[position][0] <= cap:
            running += contributions[position][1]
            position += 1
        partial_sums.append((cap, integral.value * running))

    value = partial_sums[-1][1]
    last_delta = abs(partial_sums[-1][1] - partial_sums[-2][1]) if len(partial_sums) > 1 else 0.0
    uncertainty = last_delta + abs(running) * integral.standard_error
    logger.debug(
        f"C_d for d={d}: {value:.6g} from {len(contributions)} terms, "
        f"{len(series_cache)} distinct series"
    )
    return ConstantEstimate(
        value=value,
        uncertainty=uncertainty,
        integral_value=integral.value,
        integral_standard_error=integral.standard_error,
        partial_sums=partial_sums,
        terms=len(contributions),
        outside_theorem=not report.in_theorem_range,
    )


def _combine(estimates: List[Tuple[float, ConstantEstimate]]) -> ConstantEstimate:
    """Linear combination sum_j w_j C_j of constant estimates."""
    first = estimates[0][1]
    caps = [cap for cap, _ in first.partial_sums]
    partial_sums = [
        (cap, sum(w * est.partial_sums[j][1] for w, est in estimates))
        for j, cap in enumerate(caps)
    ]
    return ConstantEstimate(
        value=sum(w * est.value for w, est in estimates),
        uncertainty=sum(abs(w) * est.uncertainty for w, est in estimates),
        integral_value=first.integral_value,
        integral_standard_error=first.integral_standard_error,
        partial_sums=partial_sums,
        terms=sum(est.terms for _, est in estimates),
        outside_theorem=any(est.outside_theorem for _, est in estimates),
    )


def leading_constant_full(
    O: CampanaOrbifold, truncation: Optional[Truncation] = None, threads: int = 1
) -> ConstantEstimate:
    """Constant C of #N(X, D, B) ~ C B^(k Gamma)."""
    truncation = truncation or Truncation()
    if O.k % 2 == 0:
        return _combine([(2.0**O.n, leading_constant(O.c, O, truncation, threads))])
    terms = []
    for eps in sign_patterns(len(O.c)):
        d = tuple(e * ci for e, ci in zip(eps, O.c))
        terms.append((0.5, leading_constant(d, O, truncation, threads)))
    return _combine(terms)


@dataclass
class ComparisonRow:
    B: float
    exact: Optional[int]
    predicted: float
    status: str = "ok"

    @property
    def ratio(self) -> Optional[float]:
        if self.exact is None or not self.predicted:
            return None
        return self.exact / self.predicted

    def to_dict(self) -> dict:
        return {
            "B": self.B,
            "exact": self.exact,
            "predicted": self.predicted,
            "ratio": self.ratio,
            "status": self.status,
        }


@dataclass
class ComparisonTable:
    """Exact counts against the predicted main term over a grid of heights."""

    kind: str
    target: dict
    constant: float
    expected_exponent: Fraction
    rows: List[ComparisonRow]
    fitted_exponent: Optional[float]
    outside_theorem: bool
    truncation: Truncation

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "target": self.target,
            "constant": self.constant,
            "expected_exponent": str(self.expected_exponent),
            "fitted_exponent": self.fitted_exponent,
            "outside_theorem": self.outside_theorem,
            "rows": [row.to_dict() for row in self.rows],
            "truncation": self.truncation.to_dict(),
        }


def fit_exponent(rows: Sequence[ComparisonRow]) -> Optional[float]:
    """Least-squares slope of log(exact) against log(B) over positive counts."""
    points = [(row.B, row.exact) for row in rows if row.exact]
    if len(points) < 2:
        return None
    logs = np.log(np.asarray(points, dtype=float))
    slope, _ = np.polyfit(logs[:, 0], logs[:, 1], 1)
    return float(slope)


def compare(
    target: Union[CampanaOrbifold, DiagonalProblem],
    grid: Sequence[float],
    truncation: Optional[Truncation] = None,
    threads: int = 1,
    budget: Optional[Budget] = None,
) -> ComparisonTable:
    """Tabulate exact counts and predicted main terms over grid.

    Grid points whose exact count would exceed the budget are kept with
    status "budget-exceeded".
    """
    truncation = truncation or Truncation()
    if not grid:
        raise DomainError("compare needs at least one grid point")
    grid = sorted(grid)
    rows: List[ComparisonRow] = []

    if isinstance(target, DiagonalProblem):
        prediction = predict_M(target.d, target.zeta, target.m_tilde, grid[0], truncation, threads)
        kind = "diagonal"
        constant = prediction.series_value * prediction.integral_value * prediction.zeta_factor
        expected = target.gamma_tilde
        outside = prediction.outside_theorem
        for B in grid:
            predicted = rescale_prediction(prediction, B).main_term
            try:
                exact = count_M(target.d, target.zeta, target.m_tilde, int(B), budget)
                rows.append(ComparisonRow(B=B, exact=exact, predicted=predicted))
            except BudgetExceeded as e:
                logger.warning(f"Skipping B~={B}: {e}")
                rows.append(ComparisonRow(B, None, predicted, "budget-exceeded"))
        target_dict = target.to_dict()
    else:
        estimate = leading_constant_full(target, truncation, threads)
        kind = "orbifold"
        constant = estimate.value
        expected = fujita_exponent(target)
        outside = estimate.outside_theorem
        for B in grid:
            predicted = constant * float(B) ** float(expected)
            try:
                exact = count_campana(target, int(B), budget=budget)
                rows.append(ComparisonRow(B=B, exact=exact, predicted=predicted))
            except BudgetExceeded as e:
                logger.warning(f"Skipping B={B}: {e}")
                rows.append(ComparisonRow(B, None, predicted, "budget-exceeded"))
        target_dict = target.to_dict()

    return ComparisonTable(
        kind=kind,
        target=target_dict,
        constant=constant,
        expected_exponent=expected,
        rows=rows,
        fitted_exponent=fit_exponent(rows),
        outside_theorem=outside,
        truncation=truncation,
    )


def format_prediction(prediction: Prediction) -> str:
    """Format a prediction as human-readable text."""
    lines = []
    lines.append("=" * 50)
    lines.append("MAIN TERM PREDICTION")
    lines.append("=" * 50)
    lines.append(f"d:               {list(prediction.problem.d)}")
    lines.append(f"zeta:            {list(prediction.problem.zeta)}")
    lines.append(f"m~:              {list(prediction.problem.m_tilde)}")
    lines.append(f"B~:              {prediction.B_tilde:g}")
    lines.append(f"Gamma~:          {prediction.gamma_tilde}")
    lines.append(f"Theta~:          {prediction.theta_tilde}")
    lines.append(f"Singular series: {prediction.series_value:.8f}")
    lines.append(
        f"Singular integral: {prediction.integral_value:.8f} "
        f"(+/- {prediction.integral_standard_error:.2g})"
    )
    lines.append(f"Main term:       {prediction.main_term:.6g} (+/- {prediction.uncertainty:.2g})")
    if prediction.outside_theorem:
        lines.append("")
        lines.append("WARNING: outside the main-term regime")
    lines.append("=" * 50)
    return "\n".join(lines)


def format_constant_estimate(estimate: ConstantEstimate) -> str:
    """Format a leading-constant estimate with its convergence trail."""
    lines = []
    lines.append("=" * 50)
    lines.append("LEADING CONSTANT")
    lines.append("=" * 50)
    lines.append(f"Value:       {estimate.value:.8g} (+/- {estimate.uncertainty:.2g})")
    lines.append(f"Integral:    {estimate.integral_value:.8f}")
    lines.append(f"Terms:       {estimate.terms}")
    lines.append("")
    lines.append("Partial sums by cap:")
    for cap, value in estimate.partial_sums:
        lines.append(f"  R = {cap:>6}: {value:.8g}")
    lines.append("=" * 50)
    return "\n".join(lines)


def format_comparison(table: ComparisonTable) -> str:
    """Format a comparison table as human-readable text."""
    lines = []
    lines.append("=" * 50)
    lines.append(f"EXACT vs PREDICTED ({table.kind})")
    lines.append("=" * 50)
    lines.append(f"{'B':>10} {'exact':>14} {'predicted':>14} {'ratio':>8}")
    for row in table.rows:
        exact = "-" if row.exact is None else str(row.exact)
        ratio = "-" if row.ratio is None else f"{row.ratio:.4f}"
        lines.append(f"{row.B:>10g} {exact:>14} {row.predicted:>14.6g} {ratio:>8}")
    lines.append("")
    fitted = "-" if table.fitted_exponent is None else f"{table.fitted_exponent:.4f}"
    lines.append(f"Fitted exponent:   {fitted}")
    lines.append(f"Expected exponent: {table.expected_exponent} ({float(table.expected_exponent):.4f})")
    if table.outside_theorem:
        lines.append("WARNING: outside the main-term regime")
    lines.append("=" * 50)
    return "\n".join(lines)
