"""
Scalar helpers.

Coefficients are exact rationals (`Fraction`) wherever the inputs are rational and
plain floats otherwise. Conversion to floating point happens at the matrix boundary.

"""
from fractions import Fraction
from math import isqrt, sqrt
from numbers import Rational
from typing import Union


Scalar = Union[Fraction, float]


def is_exact(value) -> bool:
    return isinstance(value, Rational)


def as_scalar(value) -> Scalar:
    """
    Normalize an input number: integers and rationals become `Fraction`, anything else float.

    """
    if isinstance(value, bool):
        raise TypeError(f"Not a number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    return float(value)


def as_exact(value, tolerance: float = 0.0) -> Scalar:
    """
    Promote a float that sits on an integer (within tolerance) to an exact rational.

    """
    if is_exact(value):
        return Fraction(value)
    nearest = round(value)
    if abs(value - nearest) <= tolerance:
        return Fraction(nearest)
    return float(value)


def inverse_sqrt(value: Scalar) -> Scalar:
    """
    Compute 1/sqrt(value), exactly when value is the square of a rational.

    """
    if is_exact(value):
        value = Fraction(value)
        numerator, denominator = value.numerator, value.denominator
        root_numerator, root_denominator = isqrt(numerator), isqrt(denominator)
        if root_numerator ** 2 == numerator and root_denominator ** 2 == denominator:
            return Fraction(root_denominator, root_numerator)
    return 1.0 / sqrt(float(value))


def decode_number(value) -> Scalar:
    """
    Decode a geometry-file number: JSON numbers or exact rational strings such as "3/4".

    JSON floats are read by their decimal expansion, so 0.5 becomes exactly 1/2.

    """
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, bool):
        raise TypeError(f"Not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(repr(float(value)))


def encode_number(value):
    """
    Encode a scalar for JSON: integers stay integers, other rationals become "p/q" strings.

    Floats are passed through and rendered by the report serializer.

    """
    if is_exact(value):
        value = Fraction(value)
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"
    return float(value)


def format_number(value) -> str:
    """
    Render a scalar for human-readable output with 17 significant digits for floats.

    """
    if value is None:
        return "undefined"
    if is_exact(value):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    value = float(value)
    if value == 0.0:
        # normalize negative zero
        return "0"
    return format(value, ".17g")
