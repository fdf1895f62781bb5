from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

from crossvar.core.errors import InconsistentCensusError

DECIMAL_DIGITS = 12


def exact_div(value: int, divisor: int, quantity: str) -> int:
    """Divide an integer aggregate, insisting on a zero remainder.

    Args:
        value (int): Accumulated integer.
        divisor (int): Divisor (2, 3, 4 or 8 in the census forms).
        quantity (str): Name of the quantity, used in the error message.

    Raises:
        InconsistentCensusError: if the division leaves a remainder.

    Returns:
        int: value // divisor
    """
    quotient, remainder = divmod(value, divisor)
    if remainder:
        raise InconsistentCensusError(
            f"{quantity}: {value} is not divisible by {divisor}"
        )
    return quotient


def format_rational(value: Union[Fraction, int]) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Union[Fraction, int], digits: int = DECIMAL_DIGITS) -> str:
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        decimal = Decimal(value.numerator) / Decimal(value.denominator)
    return format(decimal, "g")


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as ``p/q`` or as an integer.

    Args:
        text (str): Rational text.

    Raises:
        ValueError: if the text is not an exact rational.

    Returns:
        Fraction: Parsed value
    """
    text = text.strip()
    numerator, sep, denominator = text.partition("/")
    try:
        num = int(numerator)
        den = int(denominator) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}")
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)
