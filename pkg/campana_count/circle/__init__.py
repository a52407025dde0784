"""Circle-method predictions: exponential sums, arcs, series, integral, main terms."""

from .arcs import (
    ArcDissection,
    MajorArc,
    MinorArcScanRow,
    farey_fractions,
    format_minor_arc_scan,
    minor_arc_scan,
    minor_arcs,
)
from .integral import (
    IntegralResult,
    IntegralTruncation,
    cross_check_integral,
    inner_integral,
    singular_integral,
)
from .predict import (
    ComparisonRow,
    ComparisonTable,
    ConstantEstimate,
    DiagonalProblem,
    Prediction,
    Truncation,
    compare,
    fit_exponent,
    format_comparison,
    format_constant_estimate,
    format_prediction,
    leading_constant,
    leading_constant_full,
    predict_M,
    rescale_prediction,
)
from .series import (
    SeriesResult,
    SeriesTruncation,
    local_density,
    local_factor,
    series_term,
    singular_series,
)
from .weyl import circle_integral_count, complete_sum, e, weyl_sum

__all__ = [
    "ArcDissection",
    "MajorArc",
    "MinorArcScanRow",
    "farey_fractions",
    "format_minor_arc_scan",
    "minor_arc_scan",
    "minor_arcs",
    "IntegralResult",
    "IntegralTruncation",
    "cross_check_integral",
    "inner_integral",
    "singular_integral",
    "ComparisonRow",
    "ComparisonTable",
    "ConstantEstimate",
    "DiagonalProblem",
    "Prediction",
    "Truncation",
    "compare",
    "fit_exponent",
    "format_comparison",
    "format_constant_estimate",
    "format_prediction",
    "leading_constant",
    "leading_constant_full",
    "predict_M",
    "rescale_prediction",
    "SeriesResult",
    "SeriesTruncation",
    "local_density",
    "local_factor",
    "series_term",
    "singular_series",
    "circle_integral_count",
    "complete_sum",
    "e",
    "weyl_sum",
]
