"""Partial-sum histograms and the M_{d,zeta} census.

Counting solutions of sum_i a_i(u_i) = 0 over a box splits the indices in two
halves, tabulates how often each partial-sum value occurs on each half, and
pairs value s on the left with -s on the right.

Histograms are dense numpy arrays while the value range fits under the
budget's dense-cell threshold and sparse Counters otherwise. Dense counts use
int64 only while the largest possible cell count stays below 2^62; past that
cells hold Python ints.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import integer_nthroot

from ..core.budget import Budget, get_budget
from ..core.errors import DomainError

logger = logging.getLogger(__name__)

INT64_SAFE = 1 << 62
GREEDY_SPLIT_ABOVE = 20


def box_length(B_tilde: int, zeta: int, m: int) -> int:
    """floor((B~/zeta)^(1/m)), the number of u >= 1 with zeta u^m <= B~."""
    if zeta < 1:
        raise DomainError(f"zeta must be positive, got {zeta}")
    bound = int(B_tilde) // zeta
    if bound < 1:
        return 0
    return int(integer_nthroot(bound, m)[0])


def split_balanced(sizes: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Partition indices so the larger half-product is as small as possible.

    Ties go to the lexicographically smallest left half; index 0 is always on
    the left.
    """
    n = len(sizes)
    if n == 0:
        return (), ()
    if n == 1:
        return (0,), ()
    if n > GREEDY_SPLIT_ABOVE:
        left: List[int] = []
        right: List[int] = []
        for i in sorted(range(n), key=lambda i: (-sizes[i], i)):
            side = left if prod(sizes[j] for j in left) <= prod(sizes[j] for j in right) else right
            side.append(i)
        if 0 not in left:
            left, right = right, left
        return tuple(sorted(left)), tuple(sorted(right))

    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    rest = range(1, n)
    for size in range(n):
        for chosen in combinations(rest, size):
            left_idx = (0,) + chosen
            right_idx = tuple(i for i in rest if i not in chosen)
            worst = max(prod(sizes[i] for i in left_idx), prod(sizes[i] for i in right_idx))
            key = (worst, left_idx)
            if best is None or key < best:
                best = key
    left_idx = best[1]
    return left_idx, tuple(i for i in range(n) if i not in left_idx)


@dataclass
class PartialSumHistogram:
    """Multiplicity of every partial-sum value over one half of the box."""

    offset: int
    dense: Optional[np.ndarray] = None
    sparse: Optional[Dict[int, int]] = None

    @property
    def is_dense(self) -> bool:
        return self.dense is not None

    def items(self) -> Iterator[Tuple[int, int]]:
        if self.dense is not None:
            for i in np.flatnonzero(self.dense):
                yield self.offset + int(i), int(self.dense[i])
        else:
            yield from self.sparse.items()

    def get(self, value: int) -> int:
        if self.dense is not None:
            i = value - self.offset
            if 0 <= i < len(self.dense):
                return int(self.dense[i])
            return 0
        return self.sparse.get(value, 0)

    def total(self) -> int:
        return sum(c for _, c in self.items())


def tabulate(value_lists: Sequence[Sequence[int]], budget: Optional[Budget] = None) -> PartialSumHistogram:
    """Histogram of sum_j v_j over the product of value_lists."""
    budget = get_budget(budget)
    if not value_lists:
        return PartialSumHistogram(offset=0, dense=np.ones(1, dtype=np.int64))
    lo = sum(min(vals) for vals in value_lists)
    hi = sum(max(vals) for vals in value_lists)
    width = hi - lo + 1
    combos = prod(len(vals) for vals in value_lists)

    if width <= budget.max_dense_cells:
        dtype = np.int64 if combos < INT64_SAFE else object
        budget.check_operations(
            sum(len(vals) for vals in value_lists) * width, "dense histogram convolution"
        )
        current = np.ones(1, dtype=dtype)
        current_lo = 0
        for vals in value_lists:
            vmin, vmax = min(vals), max(vals)
            grown = np.zeros(len(current) + vmax - vmin, dtype=dtype)
            for v in vals:
                start = v - vmin
                grown[start : start + len(current)] += current
            current = grown
            current_lo += vmin
        logger.debug(f"Dense histogram over {width} cells for {combos} combinations")
        return PartialSumHistogram(offset=current_lo, dense=current)

    budget.check_candidates(combos, "sparse histogram")
    table: Counter = Counter({0: 1})
    for vals in value_lists:
        budget.check_operations(len(table) * len(vals), "sparse histogram convolution")
        grown: Counter = Counter()
        for s, c in table.items():
            for v in vals:
                grown[s + v] += c
        table = grown
    logger.debug(f"Sparse histogram with {len(table)} distinct sums for {combos} combinations")
    return PartialSumHistogram(offset=0, sparse=dict(table))


def count_opposite_pairs(left: PartialSumHistogram, right: PartialSumHistogram) -> int:
    """sum_s left[s] * right[-s], exactly."""
    if left.is_dense and right.is_dense:
        c = -left.offset - right.offset
        i0 = max(0, c - (len(right.dense) - 1))
        i1 = min(len(left.dense) - 1, c)
        if i1 < i0:
            return 0
        a = left.dense[i0 : i1 + 1]
        b = right.dense[c - i1 : c - i0 + 1][::-1]
        bound = int(a.max(initial=0)) * int(b.max(initial=0)) * len(a)
        if a.dtype == object or b.dtype == object or bound >= INT64_SAFE:
            return int(sum(int(x) * int(y) for x, y in zip(a, b) if x and y))
        return int(np.dot(a, b))

    small, large = (left, right) if not left.is_dense else (right, left)
    return sum(c * large.get(-s) for s, c in small.items())


def count_zero_sums(value_lists: Sequence[Sequence[int]], budget: Optional[Budget] = None) -> int:
    """Number of tuples in the product of value_lists summing to zero."""
    if any(len(vals) == 0 for vals in value_lists):
        return 0
    sizes = [len(vals) for vals in value_lists]
    left_idx, right_idx = split_balanced(sizes)
    left = tabulate([value_lists[i] for i in left_idx], budget)
    right = tabulate([value_lists[i] for i in right_idx], budget)
    return count_opposite_pairs(left, right)


def _check_problem(d: Sequence[int], zeta: Sequence[int], m_tilde: Sequence[int], B_tilde) -> None:
    if not (len(d) == len(zeta) == len(m_tilde)):
        raise DomainError("d, zeta and m_tilde must have the same length")
    if any(di == 0 for di in d):
        raise DomainError(f"coefficients must be nonzero, got {tuple(d)}")
    if any(z < 1 for z in zeta):
        raise DomainError(f"zeta must be positive, got {tuple(zeta)}")
    if any(m < 1 for m in m_tilde):
        raise DomainError(f"exponents must be positive, got {tuple(m_tilde)}")
    if B_tilde < 1:
        raise DomainError(f"B~ must be >= 1, got {B_tilde}")


def problem_terms(
    d: Sequence[int], zeta: Sequence[int], m_tilde: Sequence[int], B_tilde: int
) -> List[List[int]]:
    """Per-index lists d_i zeta_i u^(m~_i) for 1 <= u <= B~_i."""
    _check_problem(d, zeta, m_tilde, B_tilde)
    terms = []
    for di, zi, mi in zip(d, zeta, m_tilde):
        length = box_length(B_tilde, zi, mi)
        terms.append([di * zi * u**mi for u in range(1, length + 1)])
    return terms


def count_M(
    d: Sequence[int],
    zeta: Sequence[int],
    m_tilde: Sequence[int],
    B_tilde: int,
    budget: Optional[Budget] = None,
) -> int:
    """Exact #{u >= 1 : zeta_i u_i^m~_i <= B~, sum d_i zeta_i u_i^m~_i = 0}.

    Args:
        d: nonzero coefficients
        zeta: positive scalings
        m_tilde: exponents
        B_tilde: height bound
        budget: resource caps (module defaults when omitted)

    Returns:
        The exact count, by histogram convolution.
    """
    terms = problem_terms(d, zeta, m_tilde, B_tilde)
    count = count_zero_sums(terms, budget)
    logger.debug(f"count_M(d={tuple(d)}, B~={B_tilde}) = {count}")
    return count


def count_M_scan(
    d: Sequence[int],
    zeta: Sequence[int],
    m_tilde: Sequence[int],
    B_tilde: int,
    budget: Optional[Budget] = None,
) -> int:
    """Same count as count_M by materialising every partial sum of the box."""
    budget = get_budget(budget)
    terms = problem_terms(d, zeta, m_tilde, B_tilde)
    if any(len(t) == 0 for t in terms):
        return 0
    total = prod(len(t) for t in terms)
    budget.check_candidates(total, "full scan")
    width = sum(max(abs(v) for v in t) for t in terms)
    dtype = np.int64 if width < INT64_SAFE else object
    sums = np.zeros(1, dtype=dtype)
    for t in terms:
        sums = (sums[:, None] + np.asarray(t, dtype=dtype)[None, :]).ravel()
    return int(np.count_nonzero(sums == 0))
