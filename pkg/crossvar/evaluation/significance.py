import math
from enum import Enum
from fractions import Fraction
from typing import Union

from crossvar.core.errors import DegenerateStatisticError


class Tail(Enum):
    LOWER = "lower"
    UPPER = "upper"
    TWO_SIDED = "two_sided"

    def __repr__(self):
        return str(self.value)


def _check_variance(variance: Fraction) -> None:
    if variance <= 0:
        raise DegenerateStatisticError(
            f"The variance of crossings is {variance}, the statistic is undefined"
        )


def zscore(observed: int, expectation: Fraction, variance: Fraction) -> float:
    """Standardize an observed number of crossings.

    Args:
        observed (int): Observed C.
        expectation (Fraction): Expected C.
        variance (Fraction): Variance of C.

    Raises:
        DegenerateStatisticError: if the variance is zero.

    Returns:
        float: (C - E[C]) / sqrt(V[C])
    """
    _check_variance(variance)
    return float(observed - expectation) / math.sqrt(variance)


def chebyshev_pvalue_bound(
    observed: int,
    expectation: Fraction,
    variance: Fraction,
    tail: Union[Tail, str] = Tail.TWO_SIDED,
) -> Fraction:
    """Upper bound on the p-value of an observed number of crossings.

    Two-sided bounds use Chebyshev's inequality, one-sided bounds use
    Cantelli's. A one-sided bound is 1 when C lies on the other side of E[C].

    Args:
        observed (int): Observed C.
        expectation (Fraction): Expected C.
        variance (Fraction): Variance of C.
        tail (Union[Tail, str], optional): Tail of the test. Defaults to Tail.TWO_SIDED.

    Raises:
        DegenerateStatisticError: if the variance is zero.

    Returns:
        Fraction: Exact bound in [0, 1]
    """
    _check_variance(variance)
    tail = Tail(tail)
    deviation = Fraction(observed) - expectation
    if deviation == 0:
        return Fraction(1)

    squared = deviation * deviation
    if tail == Tail.TWO_SIDED:
        return min(Fraction(1), variance / squared)

    if (tail == Tail.UPPER) != (deviation > 0):
        return Fraction(1)
    return variance / (variance + squared)
